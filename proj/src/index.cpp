#include "resil/index.hpp"

#include <cmath>

namespace resil {

const char* to_string(Class c) {
    switch (c) {
    case Class::Low: return "Low";
    case Class::Medium: return "Medium";
    case Class::High: return "High";
    }
    return "?";
}

double engineering_component(const ShockWindow& window) {
    const int horizon = window.n - window.t_cR;
    int tau = 0;
    for (const auto& p : window.performance_segment) {
        if (p.value >= window.c_R) {
            tau = p.index - window.t_cR;
            break;
        }
    }
    if (tau == 0) return 0.0; // no recovery
    if (horizon == 1) return 1.0; // single-step horizon, recovered
    return std::log(static_cast<double>(horizon) / tau) / std::log(static_cast<double>(horizon));
}

int shift_direction(const ShockWindow& window, SignConvention convention) {
    const double shift = convention == SignConvention::Corrected
                             ? window.M_P - window.c_R
                             : window.c_R - window.M_P;
    return shift < 0.0 ? -1 : +1; // adjusted signum: 0 maps to +1
}

double ecological_component(const ShockWindow& window, SignConvention convention) {
    const double scale = std::max(std::abs(window.c_R), std::abs(window.M_P));
    if (scale == 0.0) throw DegenerateLevels{};
    const double base = std::exp(std::abs(window.M_P - window.c_R) / scale);
    return shift_direction(window, convention) > 0 ? base : 1.0 / base;
}

double evolutionary_component(const ShockWindow& window) {
    const double denom_scale = std::abs(window.c_R + window.M_P);
    if (denom_scale == 0.0) throw DegenerateLevels{};
    double sum = 0.0;
    for (const auto& p : window.performance_segment) sum += window.c_R - p.value;
    return std::exp(-sum / (static_cast<double>(window.n_P) * denom_scale));
}

double scalar_index(const ResilienceVector& vector) {
    const double norm = std::sqrt(vector.r_en * vector.r_en + vector.r_ec * vector.r_ec +
                                  vector.r_ev * vector.r_ev);
    return vector.direction * norm / std::sqrt(3.0);
}

Class classify(double i_r) {
    if (!std::isfinite(i_r)) throw NonFinite{};
    if (i_r < 0.0) return Class::Low;
    if (i_r < 1.0) return Class::Medium;
    return Class::High;
}

ResilienceRecord compute_record(const ShockWindow& window, SignConvention convention) {
    ResilienceRecord rec;
    rec.vector.r_en = engineering_component(window);
    rec.vector.r_ec = ecological_component(window, convention);
    rec.vector.r_ev = evolutionary_component(window);
    rec.vector.direction = shift_direction(window, convention);
    rec.i_r = scalar_index(rec.vector);
    rec.cls = classify(rec.i_r);
    return rec;
}

} // namespace resil
