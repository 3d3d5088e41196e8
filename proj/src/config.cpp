#include "resil/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace resil {

std::vector<ShockEvent> default_shock_calendar() {
    return {
        {"Oil crisis", 1973, "Global", false},
        {"Latin American debt crisis", 1980, "International", true},
        {"Black Monday", 1987, "Global", true},
        {"Norwegian banking crisis", 1988, "National/International", true},
        {"United States Savings & Loan crisis", 1989, "National/International", true},
        {"Japanese financial crisis", 1990, "National/International", true},
        {"Scandinavian banking crisis", 1991, "International/Regional", true},
        {"Black Wednesday", 1992, "International", true},
        {"Economic crisis in Mexico", 1994, "National/International", true},
        {"Asian financial crisis", 1997, "International", true},
        {"Russian financial crisis", 1998, "National/International", true},
        {"Argentina economic crisis", 1999, "National/International", true},
        {"Turkish economic crisis", 2000, "National/International", true},
        {"Dot-com bubble burst", 2001, "Global", true},
        {"Worldwide financial crisis", 2007, "Global", true},
    };
}

const std::vector<std::pair<std::string, std::string>>& default_covariate_indicators() {
    static const std::vector<std::pair<std::string, std::string>> codes = {
        {"POP", "SP.POP.TOTL"},       {"URB", "SP.URB.TOTL"},
        {"URB2", "EN.URB.LCTY.UR.ZS"}, {"LF", "SL.TLF.TOTL.IN"},
        {"EMP", "SL.EMP.TOTL.SP.ZS"}, {"GDPpc", "NY.GDP.PCAP.KD"},
        {"GVA", "NY.GDP.FCST.KD"},    {"AGVA", "NV.AGR.TOTL.KD"},
        {"BGVA", "NV.IND.TOTL.KD"},   {"CGVA", "NV.SRV.TOTL.KD"},
        {"TRD", "NE.TRD.GNFS.ZS"},    {"FCE", "NE.CON.TOTL.KD"},
        {"TXR", "GC.TAX.TOTL.GD.ZS"}, {"TNR", "NY.GDP.TOTL.RT.ZS"},
    };
    return codes;
}

std::vector<ShockEvent> RunConfig::enabled_shocks() const {
    std::vector<ShockEvent> out;
    for (const auto& s : shocks)
        if (s.enabled) out.push_back(s);
    return out;
}

void RunConfig::validate() const {
    if (enabled_shocks().empty()) throw ConfigError("no enabled shocks");
    if (confidence_level != 0.90 && confidence_level != 0.95 && confidence_level != 0.99)
        throw ConfigError("confidence_level must be one of 0.90, 0.95, 0.99");
    if (policy.min_ref < 2) throw ConfigError("min_ref must be >= 2");
    if (policy.min_perf < 1) throw ConfigError("min_perf must be >= 1");
    if (gdp_csv.empty() && !gdp_fetch) throw ConfigError("no GDP source configured");
    const auto& known = default_covariate_codes();
    for (const auto& cov : covariates) {
        if (std::find(known.begin(), known.end(), cov.code) == known.end())
            throw ConfigError("unknown covariate code " + cov.code);
        if (cov.file.empty() && !cov.fetch)
            throw ConfigError("covariate " + cov.code + " has no source");
    }
}

namespace {

nlohmann::ordered_json shocks_json(const std::vector<ShockEvent>& shocks) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : shocks)
        arr.push_back({{"name", s.name},
                       {"year", s.reference_year},
                       {"scale", s.scale_label},
                       {"enabled", s.enabled}});
    return arr;
}

} // namespace

std::string RunConfig::snapshot_json() const {
    nlohmann::ordered_json j;
    j["shocks"] = shocks_json(shocks);
    j["policy"] = {{"min_ref", policy.min_ref},
                   {"min_perf", policy.min_perf},
                   {"level_mode",
                    policy.level_mode == ReferenceLevelMode::Max ? "max" : "mean"}};
    j["sign_convention"] =
        sign_convention == SignConvention::Corrected ? "corrected" : "as_printed";
    j["confidence_level"] = confidence_level;
    j["covariate_alignment"] = covariate_alignment == CovariateAlignment::ShockYearNearest
                                   ? "shock_year_nearest"
                                   : "performance_mean";
    return j.dump(2);
}

RunConfig parse_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;
    if (j.contains("gdp")) {
        const auto& g = j["gdp"];
        if (g.contains("file")) cfg.gdp_csv = g["file"].get<std::string>();
        if (g.contains("fetch"))
            cfg.gdp_fetch = FetchSpec{g["fetch"].value("base_url", "https://api.worldbank.org/v2"),
                                      g["fetch"].value("indicator", "NY.GDP.MKTP.KD")};
    }
    if (j.contains("covariates")) {
        for (const auto& c : j["covariates"]) {
            CovariateSource src;
            src.code = c.at("code").get<std::string>();
            if (c.contains("file")) src.file = c["file"].get<std::string>();
            if (c.contains("fetch"))
                src.fetch = FetchSpec{c["fetch"].value("base_url", "https://api.worldbank.org/v2"),
                                      c["fetch"].value("indicator", "")};
            cfg.covariates.push_back(std::move(src));
        }
    }
    if (j.contains("continents")) cfg.continents_csv = j["continents"].get<std::string>();
    if (j.contains("shocks")) {
        cfg.shocks.clear();
        for (const auto& s : j["shocks"]) {
            ShockEvent ev;
            ev.name = s.at("name").get<std::string>();
            ev.reference_year = s.at("year").get<int>();
            ev.scale_label = s.value("scale", "");
            ev.enabled = s.value("enabled", true);
            cfg.shocks.push_back(std::move(ev));
        }
    }
    if (j.contains("policy")) {
        const auto& p = j["policy"];
        cfg.policy.min_ref = p.value("min_ref", cfg.policy.min_ref);
        cfg.policy.min_perf = p.value("min_perf", cfg.policy.min_perf);
        const std::string mode = p.value("level_mode", "max");
        if (mode == "max")
            cfg.policy.level_mode = ReferenceLevelMode::Max;
        else if (mode == "mean")
            cfg.policy.level_mode = ReferenceLevelMode::Mean;
        else
            throw ConfigError("level_mode must be max or mean");
    }
    if (j.contains("sign_convention")) {
        const std::string sc = j["sign_convention"].get<std::string>();
        if (sc == "corrected")
            cfg.sign_convention = SignConvention::Corrected;
        else if (sc == "as_printed")
            cfg.sign_convention = SignConvention::AsPrinted;
        else
            throw ConfigError("sign_convention must be corrected or as_printed");
    }
    cfg.confidence_level = j.value("confidence_level", cfg.confidence_level);
    if (j.contains("covariate_alignment")) {
        const std::string a = j["covariate_alignment"].get<std::string>();
        if (a == "shock_year_nearest")
            cfg.covariate_alignment = CovariateAlignment::ShockYearNearest;
        else if (a == "performance_mean")
            cfg.covariate_alignment = CovariateAlignment::PerformanceMean;
        else
            throw ConfigError("covariate_alignment must be shock_year_nearest or performance_mean");
    }
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

} // namespace resil
