#ifndef RESIL_STATS_HPP
#define RESIL_STATS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace resil {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};
struct InsufficientData : std::runtime_error {
    InsufficientData() : std::runtime_error("need at least 2 observations") {}
};
struct DegenerateGroups : std::runtime_error {
    DegenerateGroups() : std::runtime_error("zero within-group deviation everywhere") {}
};

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t with df degrees of freedom.
double t_cdf(double t, double df);

/// p-quantile of Student's t, by numeric inversion of the CDF (accurate to 1e-8).
double t_quantile(double p, int df);

/// CDF of the F distribution with (df1, df2) degrees of freedom.
double f_cdf(double x, double df1, double df2);

struct GroupStats {
    std::string group_label;
    long n = 0;
    double mean = 0.0;
    double sd = 0.0; // sample sd, n-1 denominator
    double ci_low = 0.0;
    double ci_high = 0.0;
    double level = 0.95;
    bool interval_defined = true; // false when n < 2
};

/// Mean +- t-quantile * sd/sqrt(n) at the given confidence level.
GroupStats confidence_interval(const std::vector<double>& values, double level,
                               const std::string& label = "");

struct LeveneResult {
    double w_statistic = 0.0;
    int df1 = 0;
    int df2 = 0;
    double p_value = 1.0;
};

enum class LeveneCenter { Mean, Median };

/// Levene's homogeneity-of-variance test, classic mean-centered by default
/// (Brown-Forsythe when median-centered).
LeveneResult levene_test(const std::vector<std::vector<double>>& groups,
                         LeveneCenter center = LeveneCenter::Mean);

} // namespace resil

#endif
