#include "resil/series.hpp"

#include <algorithm>

namespace resil {

const char* to_string(Continent c) {
    switch (c) {
    case Continent::Africa: return "Africa";
    case Continent::Asia: return "Asia";
    case Continent::Europe: return "Europe";
    case Continent::NorthAmerica: return "North America";
    case Continent::Oceania: return "Oceania";
    case Continent::SouthAmerica: return "South America";
    }
    return "?";
}

std::optional<Continent> continent_from_string(const std::string& label) {
    if (label == "Africa") return Continent::Africa;
    if (label == "Asia") return Continent::Asia;
    if (label == "Europe") return Continent::Europe;
    if (label == "North America") return Continent::NorthAmerica;
    if (label == "Oceania") return Continent::Oceania;
    if (label == "South America") return Continent::SouthAmerica;
    return std::nullopt;
}

const char* to_string(NotComputableReason r) {
    switch (r) {
    case NotComputableReason::InsufficientReference: return "InsufficientReference";
    case NotComputableReason::InsufficientPerformance: return "InsufficientPerformance";
    case NotComputableReason::GapAtShock: return "GapAtShock";
    case NotComputableReason::NoData: return "NoData";
    }
    return "?";
}

SplitResult split_at_shock(const AnnualSeries& series, const ShockEvent& shock,
                           const SplitPolicy& policy) {
    if (series.values.empty()) return NotComputable{NotComputableReason::NoData};

    const int shock_year = shock.reference_year;
    const int first_year = series.values.begin()->first;
    const int last_year = series.values.rbegin()->first;

    if (shock_year < first_year)
        return NotComputable{NotComputableReason::InsufficientReference};
    if (shock_year > last_year)
        return NotComputable{NotComputableReason::InsufficientPerformance};
    if (!series.values.count(shock_year))
        return NotComputable{NotComputableReason::GapAtShock};

    // Expand the contiguous non-missing run around the shock year.
    int run_start = shock_year;
    while (series.values.count(run_start - 1)) --run_start;
    int run_end = shock_year;
    while (series.values.count(run_end + 1)) ++run_end;

    const int n_ref = shock_year - run_start + 1;
    const int n_perf = run_end - shock_year;
    if (n_ref < policy.min_ref)
        return NotComputable{NotComputableReason::InsufficientReference};
    if (n_perf < policy.min_perf)
        return NotComputable{NotComputableReason::InsufficientPerformance};

    ShockWindow w;
    w.start_year = run_start;
    w.n = n_ref + n_perf;
    w.n_P = n_perf;
    w.reference_segment.reserve(static_cast<size_t>(n_ref));
    w.performance_segment.reserve(static_cast<size_t>(n_perf));
    for (int year = run_start; year <= run_end; ++year) {
        const TimePoint p{year - run_start + 1, series.values.at(year)};
        if (year <= shock_year)
            w.reference_segment.push_back(p);
        else
            w.performance_segment.push_back(p);
    }

    double ref_max = w.reference_segment.front().value;
    double ref_sum = 0.0;
    for (const auto& p : w.reference_segment) {
        ref_max = std::max(ref_max, p.value);
        ref_sum += p.value;
    }
    w.c_R = policy.level_mode == ReferenceLevelMode::Mean
                ? ref_sum / static_cast<double>(n_ref)
                : ref_max;
    // Latest attainment of the reference level. Under the Mean mode the level
    // may fall between observations; use the latest index at or above it.
    w.t_cR = w.reference_segment.front().index;
    for (const auto& p : w.reference_segment)
        if (p.value >= w.c_R) w.t_cR = p.index;

    w.M_P = w.performance_segment.front().value;
    for (const auto& p : w.performance_segment) w.M_P = std::max(w.M_P, p.value);
    return w;
}

WindowLevels window_levels(const ShockWindow& window) {
    return {window.c_R, window.t_cR, window.M_P};
}

} // namespace resil
