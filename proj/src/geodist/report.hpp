#ifndef GEODIST_REPORT_HPP
#define GEODIST_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

namespace geodist {

/// One verified property instance. lhs/rhs are kept as strings so exact
/// rational values survive serialization and verdicts stay recomputable.
struct AuditCheck {
    std::string name;
    std::vector<int> indices; // 1-based vertex labels
    std::string lhs;
    std::string rhs;
    bool pass = false;
    std::optional<bool> separation; // for checks tied to a separation query
};

struct AuditReport {
    std::string title;
    std::vector<AuditCheck> checks;

    void add(AuditCheck c) { checks.push_back(std::move(c)); }

    size_t failed() const {
        size_t k = 0;
        for (const auto& c : checks)
            if (!c.pass) ++k;
        return k;
    }
    size_t passed_count() const { return checks.size() - failed(); }
    bool passed() const { return failed() == 0; }
};

} // namespace geodist

#endif
