#ifndef GEODIST_MATRIX_HPP
#define GEODIST_MATRIX_HPP

#include <utility>
#include <vector>

#include "geodist/errors.hpp"
#include "geodist/rational.hpp"

namespace geodist {

/// Dense square matrix over a scalar backend (double or Rational).
template <typename T>
class Matrix {
public:
    Matrix() : n_(0) {}
    explicit Matrix(int n) : n_(n), e_(static_cast<size_t>(n) * n, T(0)) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int n() const { return n_; }

    T& operator()(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && e_ == o.e_; }

    Matrix transpose() const {
        Matrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix r(n_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix r(n_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (int j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Matrix scaled(const T& c) const {
        Matrix r(n_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * c;
        return r;
    }

    T max_abs() const {
        T m(0);
        for (const T& x : e_) {
            T a = scalar_traits<T>::abs(x);
            if (a > m) m = a;
        }
        return m;
    }

private:
    int n_;
    std::vector<T> e_;
};

namespace detail {

// Pivot selection: largest magnitude for float, first nonzero for exact
// rationals (a zero remaining column already implies det = 0).
template <typename T>
int select_pivot(const Matrix<T>& a, int col, int from) {
    if constexpr (scalar_traits<T>::exact) {
        for (int r = from; r < a.n(); ++r)
            if (a(r, col) != T(0)) return r;
        return -1;
    } else {
        int best = -1;
        T mag(0);
        for (int r = from; r < a.n(); ++r) {
            T m = scalar_traits<T>::abs(a(r, col));
            if (m > mag) { mag = m; best = r; }
        }
        return best;
    }
}

template <typename T>
bool pivot_acceptable(const T& pivot, const T& norm) {
    if constexpr (scalar_traits<T>::exact) {
        return pivot != T(0);
    } else {
        // I+L is provably nonsingular, so a tiny pivot means bad input.
        return scalar_traits<T>::abs(pivot) >= T(1e-13) * norm;
    }
}

} // namespace detail

/// Gauss-Jordan with pivoting; returns {inverse, determinant}.
template <typename T>
std::pair<Matrix<T>, T> invert_with_det(Matrix<T> a) {
    const int n = a.n();
    const T norm = a.max_abs();
    Matrix<T> inv = Matrix<T>::identity(n);
    T det(1);
    for (int c = 0; c < n; ++c) {
        int p = detail::select_pivot(a, c, c);
        if (p < 0 || !detail::pivot_acceptable(a(p, c), norm))
            throw singular_error("matrix is singular (pivot failure at column " +
                                 std::to_string(c + 1) + ")");
        if (p != c) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
            det = -det;
        }
        T piv = a(c, c);
        det *= piv;
        for (int j = 0; j < n; ++j) {
            a(c, j) = a(c, j) / piv;
            inv(c, j) = inv(c, j) / piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            T factor = a(r, c);
            if (factor == T(0)) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= factor * a(c, j);
                inv(r, j) -= factor * inv(c, j);
            }
        }
    }
    return {std::move(inv), det};
}

template <typename T>
Matrix<T> invert(const Matrix<T>& a) {
    return invert_with_det(a).first;
}

/// Determinant via the same elimination; 0 for singular input.
template <typename T>
T determinant(Matrix<T> a) {
    const int n = a.n();
    T det(1);
    for (int c = 0; c < n; ++c) {
        int p = detail::select_pivot(a, c, c);
        if (p < 0 || a(p, c) == T(0)) return T(0);
        if (p != c) {
            for (int j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (int r = c + 1; r < n; ++r) {
            T factor = a(r, c) / a(c, c);
            if (factor == T(0)) continue;
            for (int j = c; j < n; ++j) a(r, j) -= factor * a(c, j);
        }
    }
    return det;
}

} // namespace geodist

#endif
