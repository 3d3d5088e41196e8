#ifndef RESIL_CONFIG_HPP
#define RESIL_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "resil/index.hpp"
#include "resil/panel.hpp"
#include "resil/series.hpp"

namespace resil {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error("config: " + what) {}
};

struct FetchSpec {
    std::string base_url;
    std::string indicator_code;
};

struct CovariateSource {
    std::string code;                 // panel covariate code (POP, URB, ...)
    std::filesystem::path file;       // WDI wide CSV
    std::optional<FetchSpec> fetch;   // alternative to file
};

/// The default shock calendar: the fifteen reference crises of 1970-2020,
/// with the 1973 oil crisis disabled by default so the standard run covers
/// fourteen shocks. Multi-year crises are keyed by their start year.
std::vector<ShockEvent> default_shock_calendar();

/// Default World Bank indicator codes per covariate (documented in README).
const std::vector<std::pair<std::string, std::string>>& default_covariate_indicators();

struct RunConfig {
    std::filesystem::path gdp_csv;
    std::optional<FetchSpec> gdp_fetch;
    std::vector<CovariateSource> covariates;
    std::filesystem::path continents_csv; // defaults to the shipped table
    std::vector<ShockEvent> shocks = default_shock_calendar();
    SplitPolicy policy;
    SignConvention sign_convention = SignConvention::Corrected;
    double confidence_level = 0.95;
    CovariateAlignment covariate_alignment = CovariateAlignment::ShockYearNearest;
    std::filesystem::path output_dir = "out";

    std::vector<ShockEvent> enabled_shocks() const;
    void validate() const; // throws ConfigError
    std::string snapshot_json() const;
};

RunConfig load_config(const std::filesystem::path& file);
RunConfig parse_config_json(const std::string& text);

} // namespace resil

#endif
