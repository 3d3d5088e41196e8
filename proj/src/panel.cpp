#include "resil/panel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace resil {

const std::vector<std::string>& default_covariate_codes() {
    static const std::vector<std::string> codes = {
        "POP", "URB", "URB2", "LF",  "EMP", "GDPpc", "GVA",
        "AGVA", "BGVA", "CGVA", "TRD", "FCE", "TXR", "TNR",
    };
    return codes;
}

std::string format_value(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

Panel build_panel(const std::vector<AnnualSeries>& series_set,
                  const std::vector<ShockEvent>& shocks,
                  const std::map<std::string, CountryMeta>& meta,
                  const SplitPolicy& policy, SignConvention convention) {
    std::map<std::string, const AnnualSeries*> by_country;
    for (const auto& s : series_set) {
        if (!by_country.emplace(s.country_code, &s).second)
            throw DuplicateCountry(s.country_code);
    }

    std::vector<ShockEvent> ordered = shocks;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ShockEvent& a, const ShockEvent& b) {
                         return a.reference_year < b.reference_year;
                     });

    Panel panel;
    panel.covariate_codes = default_covariate_codes();

    // Per-country computation runs in parallel into pre-assigned slots; the
    // single-threaded assembly below keeps the output order deterministic.
    std::vector<std::pair<std::string, const AnnualSeries*>> countries(by_country.begin(),
                                                                       by_country.end());
    for (const auto& [code, series] : countries)
        if (!meta.count(code)) throw UnknownContinent(code);

    std::vector<std::vector<PanelRow>> slots(countries.size());
    const auto compute_country = [&](size_t i) {
        const auto& [code, series] = countries[i];
        const Continent continent = meta.at(code).continent;
        for (const auto& shock : ordered) {
            PanelRow row;
            row.country_code = code;
            row.shock_name = shock.name;
            row.shock_year = shock.reference_year;
            row.continent = continent;
            for (const auto& cov : panel.covariate_codes)
                row.covariates[cov] = std::nullopt;
            const SplitResult split = split_at_shock(*series, shock, policy);
            if (const auto* w = std::get_if<ShockWindow>(&split))
                row.record = compute_record(*w, convention);
            else
                row.not_computable = std::get<NotComputable>(split).reason;
            slots[i].push_back(std::move(row));
        }
    };

    const size_t workers =
        std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), countries.size());
    if (workers <= 1) {
        for (size_t i = 0; i < countries.size(); ++i) compute_country(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (size_t t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                try {
                    for (size_t i = next++; i < countries.size(); i = next++) compute_country(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    for (auto& slot : slots)
        for (auto& row : slot) panel.rows.push_back(std::move(row));
    return panel;
}

namespace {

std::optional<double> aligned_value(const AnnualSeries& series, const PanelRow& row,
                                    CovariateAlignment alignment) {
    if (alignment == CovariateAlignment::PerformanceMean) {
        if (!row.record) return std::nullopt;
        // Mean over the years after the shock through the last available year.
        double sum = 0.0;
        int count = 0;
        for (const auto& [year, value] : series.values) {
            if (year > row.shock_year) {
                sum += value;
                ++count;
            }
        }
        if (count == 0) return std::nullopt;
        return sum / count;
    }
    // Shock year first, then nearest within +-2 years; earlier wins ties.
    for (int offset : {0, -1, +1, -2, +2}) {
        if (auto v = series.at(row.shock_year + offset)) return v;
    }
    return std::nullopt;
}

} // namespace

Panel attach_covariates(
    Panel panel,
    const std::map<std::pair<std::string, std::string>, AnnualSeries>& covariate_series,
    CovariateAlignment alignment) {
    for (const auto& [key, _] : covariate_series) {
        if (std::find(panel.covariate_codes.begin(), panel.covariate_codes.end(), key.second) ==
            panel.covariate_codes.end())
            throw UnknownCovariateCode(key.second);
    }
    for (auto& row : panel.rows) {
        for (const auto& code : panel.covariate_codes) {
            auto it = covariate_series.find({row.country_code, code});
            if (it == covariate_series.end()) continue;
            row.covariates[code] = aligned_value(it->second, row, alignment);
        }
    }
    return panel;
}

std::string panel_to_csv(const Panel& panel) {
    std::ostringstream out;
    out << "country,shock,year,r_en,r_ec,r_ev,i_r,class,not_computable_reason";
    for (const auto& code : panel.covariate_codes) out << ',' << code;
    out << ",continent\n";
    for (const auto& row : panel.rows) {
        out << row.country_code << ",\"" << row.shock_name << "\"," << row.shock_year << ',';
        if (row.record) {
            out << format_value(row.record->vector.r_en) << ','
                << format_value(row.record->vector.r_ec) << ','
                << format_value(row.record->vector.r_ev) << ','
                << format_value(row.record->i_r) << ','
                << to_string(row.record->cls) << ',';
        } else {
            out << ",,,,," << to_string(*row.not_computable);
        }
        for (const auto& code : panel.covariate_codes) {
            out << ',';
            const auto& v = row.covariates.at(code);
            if (v) out << format_value(*v);
        }
        out << ",\"" << to_string(row.continent) << "\"\n";
    }
    return out.str();
}

std::string panel_to_json(const Panel& panel) {
    nlohmann::ordered_json doc;
    doc["covariate_codes"] = panel.covariate_codes;
    doc["provenance"] = panel.provenance;
    doc["config"] = panel.config_snapshot;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : panel.rows) {
        nlohmann::ordered_json j;
        j["country"] = row.country_code;
        j["shock"] = row.shock_name;
        j["year"] = row.shock_year;
        if (row.record) {
            j["r_en"] = row.record->vector.r_en;
            j["r_ec"] = row.record->vector.r_ec;
            j["r_ev"] = row.record->vector.r_ev;
            j["i_r"] = row.record->i_r;
            j["class"] = to_string(row.record->cls);
        } else {
            j["not_computable_reason"] = to_string(*row.not_computable);
        }
        auto& cov = j["covariates"] = nlohmann::ordered_json::object();
        for (const auto& code : panel.covariate_codes) {
            const auto& v = row.covariates.at(code);
            if (v)
                cov[code] = *v;
            else
                cov[code] = nullptr;
        }
        j["continent"] = to_string(row.continent);
        rows.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

} // namespace resil
