#ifndef RESIL_INDEX_HPP
#define RESIL_INDEX_HPP

#include <stdexcept>
#include <string>

#include "resil/series.hpp"

namespace resil {

enum class Class { Low, Medium, High };

const char* to_string(Class c);

/// Sign convention for the vertical shift. Corrected yields a positive sign
/// when the performance level exceeds the reference level, matching the
/// stated semantics of the components; AsPrinted flips it.
enum class SignConvention { Corrected, AsPrinted };

struct ResilienceVector {
    double r_en = 0.0; // recovery speed, [0, 1]
    double r_ec = 0.0; // vertical shift, [exp(-1), exp(+1)]
    double r_ev = 0.0; // adaptability, > 0
    int direction = +1; // adjusted signum of the vertical shift (0 == +1)
};

struct ResilienceRecord {
    ResilienceVector vector;
    double i_r = 0.0;
    Class cls = Class::Medium;
};

struct DegenerateLevels : std::runtime_error {
    DegenerateLevels() : std::runtime_error("degenerate functionality levels") {}
};

struct NonFinite : std::runtime_error {
    NonFinite() : std::runtime_error("non-finite index value") {}
};

/// Recovery-speed component: log(H/tau)/log(H) with H = n - t_cR and tau the
/// first performance step reaching c_R; 0 when no recovery, 1 for recovery at
/// the first step. For the degenerate horizon H = 1 the log form is
/// undefined; returns 1 on recovery at that single step, else 0.
double engineering_component(const ShockWindow& window);

/// Vertical-shift component: exp(|M_P - c_R| / max(|c_R|, |M_P|)) raised to
/// the adjusted signum of the shift. Greater than 1 when the system moves to
/// a higher functionality level (Corrected convention).
double ecological_component(const ShockWindow& window,
                            SignConvention convention = SignConvention::Corrected);

/// Adaptability component: exp(-sum_{i in P} (c_R - x_i) / (n_P |c_R + M_P|)).
/// Exceeds 1 exactly when the performance-period mean exceeds c_R.
double evolutionary_component(const ShockWindow& window);

/// Signed, sqrt(3)-normalized Euclidean norm of the components.
double scalar_index(const ResilienceVector& vector);

/// Low: i_r < 0; Medium: 0 <= i_r < 1; High: i_r >= 1.
Class classify(double i_r);

int shift_direction(const ShockWindow& window, SignConvention convention);

ResilienceRecord compute_record(const ShockWindow& window,
                                SignConvention convention = SignConvention::Corrected);

} // namespace resil

#endif
