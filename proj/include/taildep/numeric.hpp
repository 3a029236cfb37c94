#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace taildep {

// Empirical quantile by linear interpolation of order statistics (the
// "type 7" rule: h = (n-1)p). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double p);
double quantile(std::span<const double> values, double p);

double mean(std::span<const double> values);
// Unbiased sample variance (n - 1 denominator).
double variance(std::span<const double> values);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double sxx = 0.0;  // sum of squared deviations of the regressor
};

LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Asymptotic Kolmogorov distribution tail P(K > lambda).
double kolmogorov_survival(double lambda);

// Hill estimate of the tail index from the k largest order statistics.
double hill_estimator(std::span<const double> sample, std::size_t k);

// Runs body(i) for i in [0, count) on a small pool of worker threads. Work is
// handed out by index, so results written to slot i never depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace taildep
