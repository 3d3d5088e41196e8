// Shared test fixtures: direct window construction, the 5-country x 3-shock
// synthetic panel, and a hand-counted 8-country geo fixture.
#ifndef RESIL_TESTS_FIXTURES_HPP
#define RESIL_TESTS_FIXTURES_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "resil/panel.hpp"
#include "resil/series.hpp"

namespace fixtures {

inline resil::ShockWindow make_window(const std::vector<double>& reference,
                                      const std::vector<double>& performance) {
    resil::ShockWindow w;
    int idx = 1;
    for (double v : reference) w.reference_segment.push_back({idx++, v});
    for (double v : performance) w.performance_segment.push_back({idx++, v});
    w.n = static_cast<int>(reference.size() + performance.size());
    w.n_P = static_cast<int>(performance.size());
    w.c_R = reference.front();
    for (size_t i = 0; i < reference.size(); ++i)
        if (reference[i] >= w.c_R) {
            w.c_R = reference[i];
            w.t_cR = static_cast<int>(i + 1);
        }
    w.M_P = performance.front();
    for (double v : performance) w.M_P = std::max(w.M_P, v);
    w.start_year = 1960;
    return w;
}

inline resil::AnnualSeries make_series(const std::string& code, int first_year,
                                       const std::vector<double>& values) {
    resil::AnnualSeries s;
    s.country_code = code;
    s.indicator_code = "NY.GDP.MKTP.KD";
    for (size_t i = 0; i < values.size(); ++i)
        s.values[first_year + static_cast<int>(i)] = values[i];
    return s;
}

/// Random strictly-positive window for fuzz/property tests.
inline resil::ShockWindow random_window(std::mt19937& rng) {
    std::uniform_int_distribution<int> ref_len(2, 20), perf_len(1, 20);
    std::uniform_real_distribution<double> level(1.0, 1000.0);
    std::vector<double> reference(ref_len(rng)), performance(perf_len(rng));
    for (auto& v : reference) v = level(rng);
    for (auto& v : performance) v = level(rng);
    return make_window(reference, performance);
}

/// The bundled synthetic panel fixture: 5 countries x 3 shocks = 15 rows,
/// 13 computable by design.
///  - CCC starts in 1984 -> InsufficientReference for the 1980 shock.
///  - DDD ends in 2001 -> InsufficientPerformance for the 2000 shock.
struct PanelFixture {
    std::vector<resil::AnnualSeries> series;
    std::vector<resil::ShockEvent> shocks;
    std::map<std::string, resil::CountryMeta> meta;
};

inline PanelFixture panel_fixture() {
    PanelFixture f;
    f.shocks = {
        {"Alpha crisis", 1980, "Global", true},
        {"Beta crisis", 1990, "International", true},
        {"Gamma crisis", 2000, "Global", true},
    };
    const auto grow = [](double base, double rate, int n) {
        std::vector<double> out;
        double v = base;
        for (int i = 0; i < n; ++i) {
            out.push_back(v);
            v *= rate;
        }
        return out;
    };
    // AAA: steady growth 1960-2015, immediate recoveries everywhere.
    f.series.push_back(make_series("AAA", 1960, grow(100.0, 1.03, 56)));
    // BBB: grows to 2000 then collapses and never recovers.
    {
        auto v = grow(200.0, 1.02, 41); // 1960..2000
        double level = v.back() * 0.7;
        for (int i = 0; i < 15; ++i) v.push_back(level *= 0.99); // 2001..2015
        f.series.push_back(make_series("BBB", 1960, v));
    }
    // CCC: data only from 1984.
    f.series.push_back(make_series("CCC", 1984, grow(50.0, 1.04, 32)));
    // DDD: data 1960..2001 only (one post-2000 point).
    f.series.push_back(make_series("DDD", 1960, grow(80.0, 1.01, 42)));
    // EEE: dip after each shock with slow recovery.
    {
        std::vector<double> v;
        double level = 150.0;
        for (int year = 1960; year <= 2015; ++year) {
            if (year == 1981 || year == 1991 || year == 2001) level *= 0.9;
            v.push_back(level);
            level *= 1.025;
        }
        f.series.push_back(make_series("EEE", 1960, v));
    }
    f.meta = {
        {"AAA", {"AAA", "Alphaland", resil::Continent::Europe}},
        {"BBB", {"BBB", "Betania", resil::Continent::Europe}},
        {"CCC", {"CCC", "Ceciland", resil::Continent::Asia}},
        {"DDD", {"DDD", "Deltia", resil::Continent::Asia}},
        {"EEE", {"EEE", "Echoria", resil::Continent::Oceania}},
    };
    return f;
}

} // namespace fixtures

#endif
