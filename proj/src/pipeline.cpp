#include "resil/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "resil/csv.hpp"
#include "resil/errorbars.hpp"
#include "resil/geo.hpp"
#include "resil/ingest.hpp"
#include "resil/render.hpp"

namespace resil {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content,
                PipelineResult& result) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    result.artifacts.push_back(path);
}

std::string now_utc_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path shipped_continents_table() {
    // Resolved relative to the binary's working directory or the env override.
    if (const char* env = std::getenv("RESIL_DATA_DIR"))
        return std::filesystem::path(env) / "country_continents.csv";
    return "data/country_continents.csv";
}

} // namespace

PipelineResult compute_panel(const RunConfig& config) {
    config.validate();

    PipelineResult result;
    std::vector<SourceDescriptor> sources;

    std::vector<AnnualSeries> gdp;
    if (!config.gdp_csv.empty()) {
        auto parsed = parse_wdi_csv(config.gdp_csv);
        gdp = std::move(parsed.series);
        sources.push_back(parsed.source);
    } else {
        const char* cache = std::getenv("RESIL_CACHE_DIR");
        const std::filesystem::path snapshot =
            std::filesystem::path(cache ? cache : ".") /
            ("wdi_" + config.gdp_fetch->indicator_code + ".json");
        std::filesystem::create_directories(snapshot.parent_path());
        auto fetched = fetch_indicator(config.gdp_fetch->base_url,
                                       config.gdp_fetch->indicator_code, "all", 1960, 2020,
                                       snapshot);
        gdp = std::move(fetched.series);
        sources.push_back(fetched.source);
    }

    // The country universe is defined by data availability; empty series are
    // dropped and reported.
    std::vector<AnnualSeries> usable;
    for (auto& s : gdp) {
        if (s.values.empty())
            result.dropped_countries.push_back(s.country_code);
        else
            usable.push_back(std::move(s));
    }

    const std::filesystem::path continents =
        config.continents_csv.empty() ? shipped_continents_table() : config.continents_csv;
    const auto meta = load_country_continents(continents);

    // Countries absent from the continent table cannot be grouped; drop and
    // report rather than failing the whole run (WDI ships aggregates too).
    std::vector<AnnualSeries> with_meta;
    for (auto& s : usable) {
        if (meta.count(s.country_code))
            with_meta.push_back(std::move(s));
        else
            result.dropped_countries.push_back(s.country_code);
    }
    std::sort(result.dropped_countries.begin(), result.dropped_countries.end());

    result.panel = build_panel(with_meta, config.enabled_shocks(), meta, config.policy,
                               config.sign_convention);

    std::map<std::pair<std::string, std::string>, AnnualSeries> covariate_series;
    for (const auto& cov : config.covariates) {
        WdiParseResult parsed = parse_wdi_csv(cov.file);
        sources.push_back(parsed.source);
        for (auto& s : parsed.series)
            covariate_series[{s.country_code, cov.code}] = std::move(s);
    }
    if (!covariate_series.empty())
        result.panel =
            attach_covariates(std::move(result.panel), covariate_series, config.covariate_alignment);

    for (const auto& src : sources) result.panel.provenance.push_back(src.describe());
    result.panel.config_snapshot = config.snapshot_json();
    return result;
}

PipelineResult run_pipeline(const RunConfig& config) {
    PipelineResult result = compute_panel(config);
    const Panel& panel = result.panel;
    const std::filesystem::path out = config.output_dir;
    const double level = config.confidence_level;

    write_file(out / "panel.csv", panel_to_csv(panel), result);
    write_file(out / "panel.json", panel_to_json(panel), result);

    // Component and covariate error bars across resilience classes.
    for (const auto& measure : component_selectors()) {
        const auto stats = grouped_errorbars(panel, measure, GroupBy::ResilienceClass, level);
        write_file(out / ("class_errorbars_" + measure + ".csv"), errorbars_to_csv(stats),
                   result);
        write_file(out / "charts" / ("class_" + measure + ".svg"),
                   render_errorbar_svg(measure + " by resilience class", stats), result);
    }
    for (const auto& code : panel.covariate_codes) {
        const auto stats = grouped_errorbars(panel, code, GroupBy::ResilienceClass, level);
        write_file(out / ("covariate_errorbars_" + code + ".csv"), errorbars_to_csv(stats),
                   result);
        write_file(out / "charts" / ("covariate_" + code + ".svg"),
                   render_errorbar_svg(code + " by resilience class", stats), result);
    }

    // Trajectories, choropleth join, shifts, continent comparisons, shares.
    const auto trajectories = fixed_commute_status(panel);
    write_file(out / "trajectories.csv", trajectories_to_csv(trajectories), result);
    write_file(out / "choropleth_join.csv", choropleth_join_csv(trajectories), result);
    write_file(out / "shift_pyramid.csv", shift_pyramid_to_csv(shift_pyramid(panel)), result);

    std::ostringstream continent_csv;
    continent_csv << "measure,group,n,mean,sd,ci_low,ci_high,level\n";
    for (const auto& [measure, stats] : continent_errorbars(panel, level)) {
        std::istringstream rows(errorbars_to_csv(stats));
        std::string line;
        std::getline(rows, line); // drop inner header
        while (std::getline(rows, line)) continent_csv << measure << ',' << line << '\n';
        write_file(out / "charts" / ("continent_" + measure + ".svg"),
                   render_errorbar_svg(measure + " by continent", stats), result);
    }
    write_file(out / "continent_errorbars.csv", continent_csv.str(), result);

    std::map<std::string, CountryMeta> meta;
    for (const auto& row : panel.rows)
        meta[row.country_code] = CountryMeta{row.country_code, row.country_code, row.continent};
    write_file(out / "class_shares.csv",
               share_tabulation_to_csv(class_share_tabulation(trajectories, meta)), result);

    nlohmann::ordered_json manifest;
    manifest["generated_at"] = now_utc_iso8601();
    manifest["config"] = nlohmann::ordered_json::parse(panel.config_snapshot);
    manifest["sources"] = panel.provenance;
    manifest["dropped_countries"] = result.dropped_countries;
    manifest["row_count"] = panel.rows.size();
    write_file(out / "manifest.json", manifest.dump(2) + "\n", result);
    return result;
}

Panel panel_from_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot open " + file.string());

    std::vector<std::string> header;
    if (!csv::read_record(in, header) || header.size() < 10)
        throw DataError("panel CSV header too short");

    Panel panel;
    panel.covariate_codes.assign(header.begin() + 9, header.end() - 1);

    std::vector<std::string> fields;
    while (csv::read_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != header.size())
            throw DataError("panel CSV row has " + std::to_string(fields.size()) + " fields");
        PanelRow row;
        row.country_code = fields[0];
        row.shock_name = fields[1];
        row.shock_year = std::stoi(fields[2]);
        if (!fields[8].empty()) {
            if (fields[8] == "InsufficientReference")
                row.not_computable = NotComputableReason::InsufficientReference;
            else if (fields[8] == "InsufficientPerformance")
                row.not_computable = NotComputableReason::InsufficientPerformance;
            else if (fields[8] == "GapAtShock")
                row.not_computable = NotComputableReason::GapAtShock;
            else
                row.not_computable = NotComputableReason::NoData;
        } else {
            ResilienceRecord rec;
            rec.vector.r_en = std::stod(fields[3]);
            rec.vector.r_ec = std::stod(fields[4]);
            rec.vector.r_ev = std::stod(fields[5]);
            rec.i_r = std::stod(fields[6]);
            rec.vector.direction = rec.i_r < 0.0 ? -1 : +1;
            rec.cls = fields[7] == "Low" ? Class::Low
                                         : (fields[7] == "Medium" ? Class::Medium : Class::High);
            row.record = rec;
        }
        for (size_t i = 0; i < panel.covariate_codes.size(); ++i) {
            const std::string& cell = fields[9 + i];
            row.covariates[panel.covariate_codes[i]] =
                cell.empty() ? std::optional<double>{} : std::optional<double>{std::stod(cell)};
        }
        if (auto cont = continent_from_string(fields.back()))
            row.continent = *cont;
        else
            throw DataError("unknown continent '" + fields.back() + "'");
        panel.rows.push_back(std::move(row));
    }
    return panel;
}

std::vector<std::string> validate_panel_csv(const std::filesystem::path& file) {
    const Panel panel = panel_from_csv(file);
    std::vector<std::string> violations;
    const double e_inv = std::exp(-1.0), e_pos = std::exp(1.0);
    std::set<std::pair<std::string, std::string>> seen;

    for (size_t i = 0; i < panel.rows.size(); ++i) {
        const auto& row = panel.rows[i];
        const std::string where =
            "row " + std::to_string(i + 2) + " (" + row.country_code + ", " + row.shock_name + ")";
        if (!seen.insert({row.country_code, row.shock_name}).second)
            violations.push_back(where + ": duplicate (country, shock) pair");
        if (!row.record) continue;
        const auto& v = row.record->vector;
        if (v.r_en < 0.0 || v.r_en > 1.0)
            violations.push_back(where + ": r_en outside [0,1]");
        if (v.r_ec < e_inv - 1e-12 || v.r_ec > e_pos + 1e-12)
            violations.push_back(where + ": r_ec outside [exp(-1), exp(1)]");
        if (!(v.r_ev > 0.0)) violations.push_back(where + ": r_ev not positive");
        const double norm =
            std::sqrt(v.r_en * v.r_en + v.r_ec * v.r_ec + v.r_ev * v.r_ev) / std::sqrt(3.0);
        if (std::abs(std::abs(row.record->i_r) - norm) > 1e-9)
            violations.push_back(where + ": |i_r| != ||components||_2 / sqrt(3)");
        const Class expected = classify(row.record->i_r);
        if (expected != row.record->cls)
            violations.push_back(where + ": class inconsistent with i_r");
    }
    return violations;
}

} // namespace resil
