#ifndef GEODIST_SERIALIZE_HPP
#define GEODIST_SERIALIZE_HPP

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "geodist/distances.hpp"
#include "geodist/measures.hpp"
#include "geodist/report.hpp"

namespace geodist {

inline constexpr const char* kSchema = "geodist/1";

using AnyMeasure = std::variant<MeasureMatrix<double>, MeasureMatrix<Rational>>;
using AnyDistance = std::variant<DistanceMatrix<double>, DistanceMatrix<Rational>>;

namespace detail {

template <typename T>
nlohmann::json entry_json(const T& v) {
    if constexpr (scalar_traits<T>::exact)
        return format_rational(v);
    else
        return v;
}

template <typename T>
nlohmann::json matrix_entries(const Matrix<T>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(entry_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename T>
std::string matrix_csv(const Matrix<T>& m) {
    std::string out;
    for (int j = 1; j <= m.n(); ++j) out += "," + std::to_string(j);
    out += "\n";
    for (int i = 0; i < m.n(); ++i) {
        out += std::to_string(i + 1);
        for (int j = 0; j < m.n(); ++j) out += "," + scalar_traits<T>::str(m(i, j));
        out += "\n";
    }
    return out;
}

} // namespace detail

template <typename T>
nlohmann::json measure_to_json(const MeasureMatrix<T>& m) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["type"] = "measure";
    j["kind"] = measure_kind_name(m.kind);
    j["backend"] = scalar_traits<T>::name();
    j["normalization"] = m.normalization == Normalization::kernel ? "kernel" : "raw";
    j["n"] = m.values.n();
    nlohmann::json params = nlohmann::json::object();
    if (m.tau) params["tau"] = format_rational(*m.tau);
    if (m.epsilon) params["epsilon"] = format_rational(*m.epsilon);
    if (m.samples) params["samples"] = *m.samples;
    if (m.seed) params["seed"] = *m.seed;
    j["params"] = std::move(params);
    j["entries"] = detail::matrix_entries(m.values);
    if (m.standard_error)
        j["standard_error"] = detail::matrix_entries(*m.standard_error);
    return j;
}

template <typename T>
std::string measure_to_csv(const MeasureMatrix<T>& m) {
    return detail::matrix_csv(m.values);
}

template <typename T>
nlohmann::json distance_to_json(const DistanceMatrix<T>& d) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["type"] = "distance";
    j["kind"] = measure_kind_name(d.kind);
    j["transform"] = d.logarithmic ? "log" : "plain";
    j["n"] = d.values.n();
    nlohmann::json params = nlohmann::json::object();
    if (d.tau) params["tau"] = format_rational(*d.tau);
    if (d.epsilon) params["epsilon"] = format_rational(*d.epsilon);
    j["params"] = std::move(params);
    j["entries"] = detail::matrix_entries(d.values);
    return j;
}

template <typename T>
std::string distance_to_csv(const DistanceMatrix<T>& d) {
    return detail::matrix_csv(d.values);
}

inline nlohmann::json report_to_json(const AuditReport& rep) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["type"] = "report";
    j["title"] = rep.title;
    j["passed"] = rep.passed();
    j["summary"] = {{"total", rep.checks.size()},
                    {"passed", rep.passed_count()},
                    {"failed", rep.failed()}};
    nlohmann::json checks = nlohmann::json::array();
    for (const AuditCheck& c : rep.checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["indices"] = c.indices;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["pass"] = c.pass;
        if (c.separation) cj["separation"] = *c.separation;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

/// Parse a measure matrix previously written by measure_to_json.
AnyMeasure measure_from_json(const std::string& text);

} // namespace geodist

#endif
