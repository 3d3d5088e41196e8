#include "resil/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace resil {

namespace {

// Continued-fraction evaluation for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw DomainError("incomplete_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, double df) {
    if (df <= 0.0) throw DomainError("t_cdf: df must be positive");
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

double t_quantile(double p, int df) {
    if (p <= 0.0 || p >= 1.0) throw DomainError("t_quantile: p outside (0,1)");
    if (df < 1) throw DomainError("t_quantile: df must be >= 1");
    if (p == 0.5) return 0.0;

    const double dfd = static_cast<double>(df);
    // Bracket the quantile, then bisect to 1e-12 relative width.
    double lo = -1.0, hi = 1.0;
    while (t_cdf(lo, dfd) > p) lo *= 2.0;
    while (t_cdf(hi, dfd) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (t_cdf(mid, dfd) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double f_cdf(double x, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) throw DomainError("f_cdf: degrees of freedom must be positive");
    if (x <= 0.0) return 0.0;
    return incomplete_beta(0.5 * df1, 0.5 * df2, df1 * x / (df1 * x + df2));
}

GroupStats confidence_interval(const std::vector<double>& values, double level,
                               const std::string& label) {
    if (level <= 0.0 || level >= 1.0) throw DomainError("confidence level outside (0,1)");
    if (values.size() < 2) throw InsufficientData{};

    GroupStats s;
    s.group_label = label;
    s.n = static_cast<long>(values.size());
    s.level = level;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    const double t = t_quantile(0.5 * (1.0 + level), static_cast<int>(s.n - 1));
    const double half = t * s.sd / std::sqrt(static_cast<double>(s.n));
    s.ci_low = s.mean - half;
    s.ci_high = s.mean + half;
    return s;
}

LeveneResult levene_test(const std::vector<std::vector<double>>& groups, LeveneCenter center) {
    if (groups.size() < 2) throw DomainError("levene_test: need at least 2 groups");
    long total = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw DomainError("levene_test: each group needs at least 2 values");
        total += static_cast<long>(g.size());
    }

    const int k = static_cast<int>(groups.size());
    std::vector<std::vector<double>> dev(groups.size());
    for (size_t i = 0; i < groups.size(); ++i) {
        double c;
        if (center == LeveneCenter::Mean) {
            double sum = 0.0;
            for (double v : groups[i]) sum += v;
            c = sum / static_cast<double>(groups[i].size());
        } else {
            std::vector<double> sorted = groups[i];
            std::sort(sorted.begin(), sorted.end());
            const size_t m = sorted.size();
            c = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        }
        dev[i].reserve(groups[i].size());
        for (double v : groups[i]) dev[i].push_back(std::abs(v - c));
    }

    double grand_sum = 0.0;
    std::vector<double> group_mean(dev.size());
    for (size_t i = 0; i < dev.size(); ++i) {
        double sum = 0.0;
        for (double z : dev[i]) sum += z;
        group_mean[i] = sum / static_cast<double>(dev[i].size());
        grand_sum += sum;
    }
    const double grand_mean = grand_sum / static_cast<double>(total);

    double between = 0.0, within = 0.0;
    for (size_t i = 0; i < dev.size(); ++i) {
        between += static_cast<double>(dev[i].size()) *
                   (group_mean[i] - grand_mean) * (group_mean[i] - grand_mean);
        for (double z : dev[i]) within += (z - group_mean[i]) * (z - group_mean[i]);
    }

    LeveneResult r;
    r.df1 = k - 1;
    r.df2 = static_cast<int>(total) - k;
    if (within == 0.0) throw DegenerateGroups{};
    r.w_statistic = (static_cast<double>(r.df2) / r.df1) * between / within;
    r.p_value = 1.0 - f_cdf(r.w_statistic, r.df1, r.df2);
    return r;
}

} // namespace resil
