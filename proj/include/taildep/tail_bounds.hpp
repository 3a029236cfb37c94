#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "taildep/distributions.hpp"

namespace taildep {

struct TailConstants {
    double positive;  // sum p (rho)_+^alpha + q (rho)_-^alpha
    double absolute;  // sum |rho|^alpha
};

TailConstants linear_combination_tail_constant(std::span<const double> coeffs, double alpha,
                                               const BalanceWeights& balance);

struct CombinationTerm {
    double coefficient;
    DistributionSpec spec;
    BalanceWeights balance{};
};

struct LinearCombinationSpec {
    std::vector<CombinationTerm> terms;
};

// Log-log tail slopes of sum_i l_i X_i for independent regularly varying X_i.
double slope_dominant(const LinearCombinationSpec& spec);       // -min alpha
double slope_sum_bound(const LinearCombinationSpec& spec);      // -sum alpha
double slope_moment_bound(const LinearCombinationSpec& spec);   // -|sum alpha - sum alpha^2 / 2| / n
// n * min |l_i|, the scale inside the logarithm of the sum bound.
double sum_bound_scale(const LinearCombinationSpec& spec);

struct SlopeFit {
    double slope;
    double intercept;
    double threshold;
    std::size_t points;
};

// OLS of log empirical survival (strictly greater counts) on log x over the
// order statistics above the (1 - tail_fraction) quantile, the largest dropped.
SlopeFit empirical_log_tail_slope(std::span<const double> sample, double tail_fraction);

struct TailSlopeReport {
    double slope_dominant;
    double slope_sum;
    double slope_moment;
    std::optional<double> empirical_slope;
    std::optional<double> empirical_intercept;
    double threshold;
};

std::vector<double> sample_combination(const LinearCombinationSpec& spec, std::size_t n, Rng& rng);

TailSlopeReport tail_slope_report(const LinearCombinationSpec& spec, std::span<const double> sample,
                                  double tail_fraction);
TailSlopeReport tail_slope_report(const LinearCombinationSpec& spec);

}  // namespace taildep
