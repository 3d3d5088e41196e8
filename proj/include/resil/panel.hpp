#ifndef RESIL_PANEL_HPP
#define RESIL_PANEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resil/index.hpp"
#include "resil/series.hpp"

namespace resil {

/// Covariate codes in panel column order.
const std::vector<std::string>& default_covariate_codes();

struct PanelRow {
    std::string country_code;
    std::string shock_name;
    int shock_year = 0;
    std::optional<ResilienceRecord> record;
    std::optional<NotComputableReason> not_computable;
    std::map<std::string, std::optional<double>> covariates;
    Continent continent = Continent::Africa;
};

struct Panel {
    std::vector<PanelRow> rows;
    std::vector<std::string> covariate_codes;
    std::vector<std::string> provenance; // source descriptors, one line each
    std::string config_snapshot;         // shock list and policies used
};

struct DuplicateCountry : std::runtime_error {
    explicit DuplicateCountry(const std::string& code)
        : std::runtime_error("duplicate country in series set: " + code) {}
};
struct UnknownContinent : std::runtime_error {
    explicit UnknownContinent(const std::string& code)
        : std::runtime_error("country missing from continent table: " + code) {}
};
struct UnknownCovariateCode : std::runtime_error {
    explicit UnknownCovariateCode(const std::string& code)
        : std::runtime_error("unknown covariate code: " + code) {}
};

/// One row per country-shock pair (computable or not), ordered by country
/// code then shock year. Countries with zero data are dropped beforehand by
/// the caller; disabled shocks must be filtered out by the caller.
Panel build_panel(const std::vector<AnnualSeries>& series_set,
                  const std::vector<ShockEvent>& shocks,
                  const std::map<std::string, CountryMeta>& meta,
                  const SplitPolicy& policy = {},
                  SignConvention convention = SignConvention::Corrected);

enum class CovariateAlignment { ShockYearNearest, PerformanceMean };

/// Attaches covariate values at each row's shock year, falling back to the
/// nearest available year within +-2 (nearer wins, earlier wins ties), or the
/// performance-period mean under the alternative policy. Missing covariates
/// never touch the resilience record.
Panel attach_covariates(Panel panel,
                        const std::map<std::pair<std::string, std::string>, AnnualSeries>&
                            covariate_series, // keyed by (country, covariate code)
                        CovariateAlignment alignment = CovariateAlignment::ShockYearNearest);

/// Flat CSV, documented column order:
/// country,shock,year,r_en,r_ec,r_ev,i_r,class,not_computable_reason,
/// <one column per covariate code>,continent
std::string panel_to_csv(const Panel& panel);
std::string panel_to_json(const Panel& panel);

/// Formats a double the way all CSV/JSON emitters do (shortest round-trip).
std::string format_value(double v);

} // namespace resil

#endif
