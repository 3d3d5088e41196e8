#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "resil/errorbars.hpp"
#include "resil/geo.hpp"
#include "resil/ingest.hpp"
#include "resil/pipeline.hpp"
#include "resil/render.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitData = 3;
constexpr int kExitInvariant = 4;

void report_error(const std::string& kind, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw resil::DataError("cannot write " + path.string());
    out << content;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw resil::DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Economic resilience index toolkit"};
    app.require_subcommand(1);

    std::string config_path, panel_path, out_dir = "out", geojson_path, selector;
    double level = 0.95;

    auto* cmd_run = app.add_subcommand("run", "Run the full pipeline");
    cmd_run->add_option("--config", config_path, "JSON config file")->required();

    auto* cmd_compute = app.add_subcommand("compute", "Build the panel only");
    cmd_compute->add_option("--config", config_path, "JSON config file")->required();
    cmd_compute->add_option("--out", out_dir, "Output directory");

    auto* cmd_ingest = app.add_subcommand("ingest", "Parse sources and snapshot canonical CSVs");
    cmd_ingest->add_option("--config", config_path, "JSON config file")->required();
    cmd_ingest->add_option("--out", out_dir, "Output directory");

    auto* cmd_analyze = app.add_subcommand("analyze", "Run one analysis on an existing panel");
    cmd_analyze->require_subcommand(1);
    auto* an_class = cmd_analyze->add_subcommand("class-errorbars",
                                                 "CI error bars grouped by resilience class");
    an_class->add_option("--panel", panel_path, "panel.csv")->required();
    an_class->add_option("--out", out_dir, "Output directory");
    an_class->add_option("--level", level, "Confidence level");
    an_class->add_option("--selector", selector, "Single component/covariate (default: all)");
    auto* an_fixed = cmd_analyze->add_subcommand("fixed-commute", "Country trajectory statuses");
    an_fixed->add_option("--panel", panel_path, "panel.csv")->required();
    an_fixed->add_option("--out", out_dir, "Output directory");
    auto* an_shifts = cmd_analyze->add_subcommand("shifts", "Continent shift pyramid");
    an_shifts->add_option("--panel", panel_path, "panel.csv")->required();
    an_shifts->add_option("--out", out_dir, "Output directory");
    auto* an_cont = cmd_analyze->add_subcommand("continents", "CI error bars per continent");
    an_cont->add_option("--panel", panel_path, "panel.csv")->required();
    an_cont->add_option("--out", out_dir, "Output directory");
    an_cont->add_option("--level", level, "Confidence level");

    auto* cmd_render = app.add_subcommand("render", "SVG charts and GeoJSON join from a panel");
    cmd_render->add_option("--panel", panel_path, "panel.csv")->required();
    cmd_render->add_option("--out", out_dir, "Output directory");
    cmd_render->add_option("--level", level, "Confidence level");
    cmd_render->add_option("--geojson", geojson_path, "Boundaries file to property-join");

    auto* cmd_validate = app.add_subcommand("validate", "Check panel invariants");
    cmd_validate->add_option("--panel", panel_path, "panel.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        namespace fs = std::filesystem;
        using namespace resil;

        if (cmd_run->parsed()) {
            RunConfig cfg = load_config(config_path);
            const PipelineResult result = run_pipeline(cfg);
            std::cout << "panel rows: " << result.panel.rows.size() << "\n";
            if (!result.dropped_countries.empty())
                std::cout << "dropped countries (no data or no continent): "
                          << result.dropped_countries.size() << "\n";
            std::cout << "artifacts written to " << cfg.output_dir.string() << "\n";
            return kExitOk;
        }
        if (cmd_compute->parsed()) {
            RunConfig cfg = load_config(config_path);
            const PipelineResult result = compute_panel(cfg);
            write_text(fs::path(out_dir) / "panel.csv", panel_to_csv(result.panel));
            write_text(fs::path(out_dir) / "panel.json", panel_to_json(result.panel));
            std::cout << "panel rows: " << result.panel.rows.size() << "\n";
            return kExitOk;
        }
        if (cmd_ingest->parsed()) {
            RunConfig cfg = load_config(config_path);
            cfg.validate();
            const auto parsed = parse_wdi_csv(cfg.gdp_csv);
            std::map<std::string, std::string> names;
            const std::string canonical = serialize_wdi_csv(parsed.series, names,
                                                            parsed.source.indicator_code, 1960,
                                                            2020);
            write_text(fs::path(out_dir) / "ingested_gdp.csv", canonical);
            std::cout << "series: " << parsed.series.size()
                      << ", skipped rows: " << parsed.skipped_rows << "\n"
                      << parsed.source.describe() << "\n";
            return kExitOk;
        }

        if (cmd_validate->parsed()) {
            const auto violations = validate_panel_csv(panel_path);
            for (const auto& v : violations) std::cout << v << "\n";
            if (!violations.empty()) {
                report_error("invariant", std::to_string(violations.size()) + " violations");
                return kExitInvariant;
            }
            std::cout << "panel ok\n";
            return kExitOk;
        }

        const Panel panel = panel_from_csv(panel_path);
        const fs::path out(out_dir);

        if (an_class->parsed()) {
            std::vector<std::string> selectors;
            if (!selector.empty()) {
                selectors.push_back(selector);
            } else {
                selectors = component_selectors();
                selectors.insert(selectors.end(), panel.covariate_codes.begin(),
                                 panel.covariate_codes.end());
            }
            for (const auto& s : selectors) {
                const auto stats = grouped_errorbars(panel, s, GroupBy::ResilienceClass, level);
                const std::string prefix =
                    std::find(component_selectors().begin(), component_selectors().end(), s) !=
                            component_selectors().end()
                        ? "class_errorbars_"
                        : "covariate_errorbars_";
                write_text(out / (prefix + s + ".csv"), errorbars_to_csv(stats));
            }
            return kExitOk;
        }
        if (an_fixed->parsed()) {
            const auto trajectories = fixed_commute_status(panel);
            write_text(out / "trajectories.csv", trajectories_to_csv(trajectories));
            write_text(out / "choropleth_join.csv", choropleth_join_csv(trajectories));
            std::map<std::string, CountryMeta> meta;
            for (const auto& row : panel.rows)
                meta[row.country_code] =
                    CountryMeta{row.country_code, row.country_code, row.continent};
            write_text(out / "class_shares.csv",
                       share_tabulation_to_csv(class_share_tabulation(trajectories, meta)));
            return kExitOk;
        }
        if (an_shifts->parsed()) {
            write_text(out / "shift_pyramid.csv", shift_pyramid_to_csv(shift_pyramid(panel)));
            return kExitOk;
        }
        if (an_cont->parsed()) {
            std::ostringstream csv;
            csv << "measure,group,n,mean,sd,ci_low,ci_high,level\n";
            for (const auto& [measure, stats] : continent_errorbars(panel, level)) {
                std::istringstream rows(errorbars_to_csv(stats));
                std::string line;
                std::getline(rows, line);
                while (std::getline(rows, line)) csv << measure << ',' << line << '\n';
            }
            write_text(out / "continent_errorbars.csv", csv.str());
            return kExitOk;
        }
        if (cmd_render->parsed()) {
            for (const auto& measure : component_selectors()) {
                write_text(out / "charts" / ("class_" + measure + ".svg"),
                           render_errorbar_svg(
                               measure + " by resilience class",
                               grouped_errorbars(panel, measure, GroupBy::ResilienceClass, level)));
                write_text(out / "charts" / ("continent_" + measure + ".svg"),
                           render_errorbar_svg(
                               measure + " by continent",
                               grouped_errorbars(panel, measure, GroupBy::Continent, level)));
            }
            if (!geojson_path.empty()) {
                const auto trajectories = fixed_commute_status(panel);
                write_text(out / "boundaries_joined.geojson",
                           geojson_property_join(read_text(geojson_path), trajectories));
            }
            return kExitOk;
        }
        return kExitOk;
    } catch (const resil::ConfigError& e) {
        report_error("validation", e.what());
        return kExitValidation;
    } catch (const resil::UnknownSelector& e) {
        report_error("validation", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        report_error("data", e.what());
        return kExitData;
    }
}
