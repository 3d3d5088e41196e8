#ifndef RESIL_SERIES_HPP
#define RESIL_SERIES_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace resil {

/// One country's annual values for one indicator. Absent years are missing.
struct AnnualSeries {
    std::string country_code;   // ISO3
    std::string indicator_code; // e.g. "NY.GDP.MKTP.KD"
    std::map<int, double> values;

    bool empty() const { return values.empty(); }
    std::optional<double> at(int year) const {
        auto it = values.find(year);
        if (it == values.end()) return std::nullopt;
        return it->second;
    }
};

/// A named crisis. The reference year splits series into reference/performance
/// periods; for multi-year crises the start year is used.
struct ShockEvent {
    std::string name;
    int reference_year = 0;
    std::string scale_label;
    bool enabled = true;
};

enum class Continent { Africa, Asia, Europe, NorthAmerica, Oceania, SouthAmerica };

const char* to_string(Continent c);
std::optional<Continent> continent_from_string(const std::string& label);

struct CountryMeta {
    std::string country_code; // ISO3
    std::string name;
    Continent continent = Continent::Africa;
};

struct TimePoint {
    int index = 0; // 1-based position in the contiguous run
    double value = 0.0;
};

/// Result of splitting a series around a shock. Indices are 1-based positions
/// in the concatenated contiguous run; the shock year belongs to the
/// reference segment.
struct ShockWindow {
    std::vector<TimePoint> reference_segment;
    std::vector<TimePoint> performance_segment;
    double c_R = 0.0;  // reference level (max by default)
    int t_cR = 0;      // latest time-index attaining c_R
    double M_P = 0.0;  // performance maximum
    int n = 0;         // |reference| + |performance|
    int n_P = 0;       // |performance|
    int start_year = 0; // calendar year of time-index 1
};

enum class NotComputableReason {
    InsufficientReference,
    InsufficientPerformance,
    GapAtShock,
    NoData,
};

const char* to_string(NotComputableReason r);

struct NotComputable {
    NotComputableReason reason;
};

using SplitResult = std::variant<ShockWindow, NotComputable>;

enum class ReferenceLevelMode { Max, Mean };

struct SplitPolicy {
    int min_ref = 3;
    int min_perf = 2;
    ReferenceLevelMode level_mode = ReferenceLevelMode::Max;
};

/// Splits a series at a shock year into reference/performance segments.
/// Only the contiguous non-missing run of years spanning the shock year is
/// used; interior gaps elsewhere truncate the run (no interpolation).
SplitResult split_at_shock(const AnnualSeries& series, const ShockEvent& shock,
                           const SplitPolicy& policy = {});

/// (c_R, t_cR, M_P). When c_R is attained more than once, t_cR is the
/// latest such index.
struct WindowLevels {
    double c_R;
    int t_cR;
    double M_P;
};
WindowLevels window_levels(const ShockWindow& window);

} // namespace resil

#endif
