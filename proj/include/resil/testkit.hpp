#ifndef RESIL_TESTKIT_HPP
#define RESIL_TESTKIT_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "resil/series.hpp"

namespace resil::testkit {

struct InfeasibleProfile : std::runtime_error {
    explicit InfeasibleProfile(const std::string& what)
        : std::runtime_error("infeasible synthetic profile: " + what) {}
};

enum class PostRegime { Above, At, Below };

/// Synthetic series with analytically known ground truth. The reference
/// period grows at pre_trend from base_level; the shock drops the level by
/// shock_drop; recovery (if any) happens exactly recovery_after steps after
/// the reference maximum. Feasible combinations: (never, Below), (r, At),
/// (r, Above).
struct SynthProfile {
    double base_level = 100.0;
    double pre_trend = 0.02;            // per-year growth
    double shock_drop = 0.2;            // fraction in [0, 1)
    std::optional<int> recovery_after;  // steps after t(c_R); nullopt = never
    PostRegime post_regime = PostRegime::At;
    int length = 20;                    // total years
    int reference_length = 10;          // years up to and including the shock
    double noise_amplitude = 0.0;       // bounded so designed orderings hold
    unsigned seed = 1;
};

enum class MeanSide { Above, At, Below };

struct GroundTruth {
    double c_R = 0.0;
    int t_cR = 0;
    double M_P = 0.0;
    int n = 0;
    int n_P = 0;
    std::optional<int> recovery_tau; // designed first-recovery step
    int direction = +1;              // designed vertical-shift sign
    MeanSide mean_side = MeanSide::At;
    int shock_year = 0;
};

struct SynthResult {
    AnnualSeries series;
    GroundTruth truth;
};

SynthResult generate(const SynthProfile& profile);

} // namespace resil::testkit

#endif
