#include "geodist/serialize.hpp"

namespace geodist {

namespace {

MeasureKind kind_from_name(const std::string& name) {
    if (name == "forest-in") return MeasureKind::forest_in;
    if (name == "forest-out") return MeasureKind::forest_out;
    if (name == "route") return MeasureKind::route;
    if (name == "path-tau") return MeasureKind::path_tau;
    if (name == "reliability") return MeasureKind::reliability;
    throw parse_error("unknown measure kind '" + name + "'");
}

template <typename T>
MeasureMatrix<T> measure_from(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != n)
        throw parse_error("measure entries do not match n");
    MeasureMatrix<T> m;
    m.kind = kind_from_name(j.at("kind").get<std::string>());
    m.normalization = j.value("normalization", std::string("raw")) == "kernel"
                          ? Normalization::kernel
                          : Normalization::raw;
    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.contains("tau")) m.tau = parse_rational(p.at("tau").get<std::string>());
        if (p.contains("epsilon"))
            m.epsilon = parse_rational(p.at("epsilon").get<std::string>());
        if (p.contains("samples")) m.samples = p.at("samples").get<std::uint64_t>();
        if (p.contains("seed")) m.seed = p.at("seed").get<std::uint64_t>();
    }
    m.values = Matrix<T>(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = entries.at(i);
        if (static_cast<int>(row.size()) != n)
            throw parse_error("measure row " + std::to_string(i + 1) + " has wrong length");
        for (int c = 0; c < n; ++c) {
            const auto& v = row.at(c);
            if constexpr (scalar_traits<T>::exact) {
                m.values(i, c) = v.is_string() ? parse_rational(v.get<std::string>())
                                               : parse_rational(v.dump());
            } else {
                m.values(i, c) = v.is_string()
                                     ? to_double(parse_rational(v.get<std::string>()))
                                     : v.get<double>();
            }
        }
    }
    return m;
}

} // namespace

AnyMeasure measure_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (j.value("schema", std::string()) != kSchema)
        throw parse_error("unsupported schema; expected 'geodist/1'");
    if (j.value("type", std::string()) != "measure")
        throw parse_error("expected a measure document");
    std::string backend = j.value("backend", std::string("float64"));
    if (backend == "rational") return measure_from<Rational>(j);
    if (backend == "float64") return measure_from<double>(j);
    throw parse_error("unknown backend '" + backend + "'");
}

} // namespace geodist
