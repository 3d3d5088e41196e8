#ifndef RESIL_ERRORBARS_HPP
#define RESIL_ERRORBARS_HPP

#include <string>
#include <vector>

#include "resil/panel.hpp"
#include "resil/stats.hpp"

namespace resil {

struct UnknownSelector : std::runtime_error {
    explicit UnknownSelector(const std::string& s)
        : std::runtime_error("unknown value selector: " + s) {}
};

enum class GroupBy { ResilienceClass, Continent };

/// Component names accepted by grouped_errorbars alongside covariate codes.
inline const std::vector<std::string>& component_selectors() {
    static const std::vector<std::string> s = {"r_en", "r_ec", "r_ev", "i_r"};
    return s;
}

/// One GroupStats per group (classes in Low/Medium/High order, continents
/// alphabetically). Missing values are excluded pairwise; groups with fewer
/// than 2 observations are reported with the interval flagged undefined.
std::vector<GroupStats> grouped_errorbars(const Panel& panel, const std::string& value_selector,
                                          GroupBy group_by, double level);

/// Serializes error-bar rows: group,n,mean,sd,ci_low,ci_high,level.
std::string errorbars_to_csv(const std::vector<GroupStats>& rows);

} // namespace resil

#endif
