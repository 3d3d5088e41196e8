#include "resil/testkit.hpp"

#include <cmath>
#include <random>

namespace resil::testkit {

SynthResult generate(const SynthProfile& profile) {
    if (profile.base_level <= 0.0) throw InfeasibleProfile("base_level must be positive");
    if (profile.shock_drop < 0.0 || profile.shock_drop >= 1.0)
        throw InfeasibleProfile("shock_drop outside [0,1)");
    if (profile.reference_length < 1 || profile.reference_length >= profile.length)
        throw InfeasibleProfile("reference_length must leave a performance period");

    const int n_perf = profile.length - profile.reference_length;
    if (profile.recovery_after) {
        if (*profile.recovery_after < 1) throw InfeasibleProfile("recovery_after must be >= 1");
        if (*profile.recovery_after > n_perf)
            throw InfeasibleProfile("recovery_after exceeds the performance period");
        if (profile.post_regime == PostRegime::Below)
            throw InfeasibleProfile("a Below regime cannot recover");
    } else {
        if (profile.post_regime != PostRegime::Below)
            throw InfeasibleProfile("never recovering requires the Below regime");
        if (profile.shock_drop == 0.0)
            throw InfeasibleProfile("Below regime requires a positive shock_drop");
    }

    std::mt19937 rng(profile.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    // Noise stays within half the slack to the nearest designed bound.
    const auto jitter = [&](double value, double slack) {
        if (profile.noise_amplitude <= 0.0 || slack <= 0.0) return value;
        const double bound = std::min({profile.noise_amplitude * value, 0.45 * slack, 0.45 * value});
        return value + unit(rng) * bound;
    };

    SynthResult result;
    result.series.country_code = "SYN";
    result.series.indicator_code = "SYNTH";
    const int first_year = 1960;

    // Reference period: growth at pre_trend; the maximum sits at the last
    // reference index (latest attainment when flat).
    const double growth = 1.0 + profile.pre_trend;
    double c_R = profile.base_level;
    for (int i = 0; i < profile.reference_length; ++i) {
        const double v = profile.base_level * std::pow(growth, i);
        result.series.values[first_year + i] = v;
        c_R = v;
    }

    const int r = profile.recovery_after.value_or(0);
    double m_p = 0.0;
    for (int j = 1; j <= n_perf; ++j) {
        double v;
        if (!profile.recovery_after) {
            const double dip = c_R * (1.0 - profile.shock_drop);
            v = jitter(dip, c_R - dip);
        } else if (j < r) {
            // Ramp back toward c_R but stay strictly below it.
            const double frac = static_cast<double>(r - j) / r;
            const double drop = profile.shock_drop > 0.0 ? profile.shock_drop : 0.1;
            const double low = c_R * (1.0 - drop * frac);
            v = jitter(low, c_R - low);
        } else if (profile.post_regime == PostRegime::At) {
            v = c_R;
        } else { // Above
            const double high = c_R * (1.0 + 0.05 * (j - r + 1));
            v = jitter(high, high - c_R);
        }
        result.series.values[first_year + profile.reference_length - 1 + j] = v;
        m_p = std::max(m_p, v);
    }

    GroundTruth& truth = result.truth;
    truth.c_R = c_R;
    truth.t_cR = profile.reference_length;
    truth.M_P = m_p;
    truth.n = profile.length;
    truth.n_P = n_perf;
    truth.recovery_tau = profile.recovery_after;
    truth.direction = m_p >= c_R ? +1 : -1;
    truth.shock_year = first_year + profile.reference_length - 1;

    double perf_sum = 0.0;
    for (int j = 1; j <= n_perf; ++j)
        perf_sum += result.series.values.at(first_year + profile.reference_length - 1 + j);
    const double mean = perf_sum / n_perf;
    truth.mean_side = mean > c_R ? MeanSide::Above : (mean < c_R ? MeanSide::Below : MeanSide::At);
    return result;
}

} // namespace resil::testkit
