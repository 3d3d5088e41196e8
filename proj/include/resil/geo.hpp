#ifndef RESIL_GEO_HPP
#define RESIL_GEO_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resil/errorbars.hpp"
#include "resil/panel.hpp"

namespace resil {

enum class TrajectoryStatus { Fixed, Commute, Insufficient };

const char* to_string(TrajectoryStatus s);

struct CountryTrajectory {
    std::string country_code;
    std::vector<std::pair<int, std::optional<Class>>> classes_by_shock; // (shock_year, class)
    TrajectoryStatus status = TrajectoryStatus::Insufficient;
    std::optional<Class> average_class; // Commute only: rounded mean of ordinals
};

struct ShiftRecord {
    Continent continent = Continent::Africa;
    int shock_year = 0;
    int net_shift = 0; // sum of +-1 per country with a class change at this shock
};

/// Fixed: >= 2 computable classes, all equal. Commute: >= 2 computable
/// classes, not all equal; its average class is the round-half-up mean of
/// class ordinals (Low=1, Medium=2, High=3). Fewer than 2 computable classes
/// is Insufficient.
std::vector<CountryTrajectory> fixed_commute_status(const Panel& panel);

/// Per continent and shock year, the net sum of sign(class_j - class_{j-1})
/// over consecutive computable class pairs; NotComputable shocks are skipped
/// and pairs form across the gap. The earliest enabled shock never receives
/// a record.
std::vector<ShiftRecord> shift_pyramid(const Panel& panel);

/// Error bars per continent for i_r and each component: (measure, stats).
std::vector<std::pair<std::string, std::vector<GroupStats>>>
continent_errorbars(const Panel& panel, double level);

struct ShareCell {
    TrajectoryStatus status;
    std::string continent; // "Global" for the totals row
    Class cls;
    double within_continent_pct = 0.0; // row share across classes
    double within_status_pct = 0.0;    // column share across continents
    int count = 0;
};

/// Within-continent row percentages across classes and within-status column
/// percentages across continents, separately for Fixed and Commute
/// populations; Global rows are shares of the total country count.
std::vector<ShareCell> class_share_tabulation(const std::vector<CountryTrajectory>& trajectories,
                                              const std::map<std::string, CountryMeta>& meta);

std::string trajectories_to_csv(const std::vector<CountryTrajectory>& trajectories);
std::string shift_pyramid_to_csv(const std::vector<ShiftRecord>& records);
std::string share_tabulation_to_csv(const std::vector<ShareCell>& cells);

/// Choropleth join: ISO3, status, class (average class for commute countries,
/// the fixed class otherwise; empty for insufficient data).
std::string choropleth_join_csv(const std::vector<CountryTrajectory>& trajectories);

} // namespace resil

#endif
