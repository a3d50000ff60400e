#pragma once

// Running moments and Kolmogorov-Smirnov tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hypervis/errors.hpp"

namespace hypervis {

/// Welford accumulator.
class RunningStats {
public:
    void push(double x) noexcept {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stddev() const noexcept { return std::sqrt(variance()); }
    double stderr_of_mean() const noexcept {
        return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Asymptotic 1% critical value coefficient of the Kolmogorov distribution.
inline constexpr double kKsCoefficient1pct = 1.628;

struct KsResult {
    double statistic = 0.0;
    std::size_t n = 0;
    double critical_1pct = 0.0;
    bool pass = false;
};

/// One-sample KS test of `samples` against Exp(rate).
inline KsResult ks_exponential(std::span<const double> samples, double rate) {
    if (samples.empty()) {
        throw DomainError("ks_exponential: empty sample");
    }
    if (!(rate > 0.0)) {
        throw DomainError("ks_exponential: rate must be positive");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = -std::expm1(-rate * x[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    KsResult r;
    r.statistic = d;
    r.n = x.size();
    r.critical_1pct = kKsCoefficient1pct / std::sqrt(n);
    r.pass = r.statistic < r.critical_1pct;
    return r;
}

/// Two-sample KS test at the 1% level; `n` reports the effective size nm/(n+m).
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw DomainError("ks_two_sample: empty sample");
    }
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    const double ne = nx * ny / (nx + ny);
    KsResult r;
    r.statistic = d;
    r.n = static_cast<std::size_t>(std::llround(ne));
    r.critical_1pct = kKsCoefficient1pct / std::sqrt(ne);
    r.pass = r.statistic < r.critical_1pct;
    return r;
}

} // namespace hypervis
