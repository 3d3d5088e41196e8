#ifndef RESIL_PIPELINE_HPP
#define RESIL_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "resil/config.hpp"
#include "resil/panel.hpp"

namespace resil {

struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct PipelineResult {
    Panel panel;
    std::vector<std::string> dropped_countries; // countries with zero GDP data
    std::vector<std::filesystem::path> artifacts;
};

/// Loads sources, builds the panel, and writes the full artifact tree into
/// config.output_dir: panel CSV/JSON, class and covariate error-bar tables,
/// trajectory/status tables and choropleth join, shift pyramid, continent
/// error bars, class-share tabulation, SVG charts, and a run manifest.
PipelineResult run_pipeline(const RunConfig& config);

/// Builds the panel (with covariates attached) without writing outputs.
PipelineResult compute_panel(const RunConfig& config);

/// Re-reads a serialized panel CSV and checks the module invariants; returns
/// one message per violation, with row coordinates.
std::vector<std::string> validate_panel_csv(const std::filesystem::path& file);

/// Reads a panel CSV back into memory (inverse of panel_to_csv).
Panel panel_from_csv(const std::filesystem::path& file);

} // namespace resil

#endif
