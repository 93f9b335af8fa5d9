#ifndef GEODIST_RATIONAL_HPP
#define GEODIST_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "geodist/errors.hpp"

namespace geodist {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Accepts "p/q", plain integers and decimal literals ("1.5" -> 3/2).
// Decimal input converts exactly, never through binary floating point.
inline Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos)
        throw parse_error("empty scalar");
    s = s.substr(a, b - a + 1);

    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    try {
        if (size_t slash = s.find('/'); slash != std::string::npos) {
            std::string num = s.substr(0, slash);
            std::string den = s.substr(slash + 1);
            if (!is_int(num) || !is_int(den))
                throw parse_error("malformed rational '" + text + "'");
            Integer q(den);
            if (q == 0)
                throw parse_error("zero denominator in '" + text + "'");
            return Rational(Integer(num), q);
        }
        if (size_t dot = s.find('.'); dot != std::string::npos) {
            std::string ip = s.substr(0, dot);
            std::string fp = s.substr(dot + 1);
            bool neg = !ip.empty() && ip[0] == '-';
            if (ip == "-" || ip == "+" || ip.empty()) ip += "0";
            if (fp.empty()) fp = "0";
            if (!is_int(ip) || !is_int(fp) || fp[0] == '+' || fp[0] == '-')
                throw parse_error("malformed decimal '" + text + "'");
            Integer scale = 1;
            for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
            Integer whole(ip);
            Integer frac(fp);
            Integer num = whole * scale + (neg ? -frac : frac);
            return Rational(num, scale);
        }
        if (!is_int(s))
            throw parse_error("malformed scalar '" + text + "'");
        return Rational(Integer(s));
    } catch (const std::runtime_error& e) {
        throw parse_error(std::string(e.what()));
    }
}

inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

// 17 significant digits round-trips every double.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Scalar backend glue for the templated matrix/measure code.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational& r) { return to_double(r); }
    static double abs(double x) { return std::fabs(x); }
    static std::string str(double x) { return format_double(x); }
    static const char* name() { return "float64"; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static const Rational& from_rational(const Rational& r) { return r; }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static std::string str(const Rational& x) { return format_rational(x); }
    static const char* name() { return "rational"; }
};

} // namespace geodist

#endif
