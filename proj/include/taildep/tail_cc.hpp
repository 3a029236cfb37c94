#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taildep/distributions.hpp"
#include "taildep/linear_process.hpp"

namespace taildep {

struct TailCCParams {
    std::size_t lag = 0;
    double qx = 0.9;
    double qy = 0.9;
};

struct TailCCEstimate {
    double tau;
    double threshold_x;
    double threshold_y;
    std::size_t n_exceed_x;
    std::size_t n_exceed_y;  // marginal y exceedances over the same index set
    std::size_t n_joint;
    std::size_t n_pairs;
    TailCCParams params;
};

// tau = [P(Y_{t+k} > y | X_t > x) - P(Y_{t+k} > y)] / [1 - P(X_t > x)] with
// thresholds at the empirical qx, qy quantiles of the full series and all
// probabilities counted over t = 1..n-k.
TailCCEstimate tail_cross_correlation(std::span<const double> x, std::span<const double> y,
                                      const TailCCParams& params);

struct QuantilePair {
    double qx;
    double qy;
};

struct TailCCCell {
    std::size_t lag;
    QuantilePair quantiles;
    std::optional<TailCCEstimate> estimate;
    std::string error;  // set when estimate is empty
};

struct TailCCTable {
    std::vector<std::size_t> lags;
    std::vector<QuantilePair> quantile_pairs;
    std::vector<TailCCCell> cells;  // quantile-pair major, lag minor

    const TailCCCell& at(std::size_t pair_index, std::size_t lag_index) const {
        return cells[pair_index * lags.size() + lag_index];
    }
};

TailCCTable tail_cc_profile(std::span<const double> x, std::span<const double> y,
                            const std::vector<std::size_t>& lags, const std::vector<QuantilePair>& pairs);

// Window design profile: tau between X*_{reference} and Y*_i for each i, all
// replicates drawn from the same innovations. Cells follow the index list.
struct WindowTailCCCell {
    long index;
    std::optional<TailCCEstimate> estimate;
    std::string error;
};

std::vector<WindowTailCCCell> window_tail_cc(const CoupledProcessConfig& config, long reference_index,
                                             const std::vector<long>& indices, QuantilePair quantiles);

struct RatioPrediction {
    long lag_index;
    double predicted_ratio;
    double alpha_used;
};

// |b_{i+2} / b_{i+1}|^alpha.
RatioPrediction predicted_ratio(const CoefficientScheme& b_scheme, long i, double alpha);

enum class Regime { iid_identical, noniid_identical, iid_distinct, noniid_distinct };

Regime parse_regime(const std::string& name);
std::string to_string(Regime regime);

struct ConditionReport {
    Regime regime;
    double lhs;
    double rhs;
    bool satisfied;
    double coefficient_ratio;  // |b_{i+2}| / |b_{i+1}|
    bool coefficient_ratio_below_one;
    std::optional<bool> tail_index_condition;  // competing index exceeds alpha
};

// Sufficient conditions for tau(i+1) <= tau(i). The numerator is
// |b_{i+2}|^alpha - |b_{i+1}|^alpha; the denominator is the tail constant of
// a_1 in the non-iid regimes and of the whole b sequence in the iid regimes
// with distinct quantiles. The iid identical regime reduces to the coefficient
// ratio compared with 1.
ConditionReport monotonicity_conditions(const CoefficientScheme& b_scheme, const CoefficientScheme& a_scheme,
                                        double alpha, const BalanceWeights& balance, long i, Regime regime,
                                        std::optional<double> quantile_ratio_term = std::nullopt,
                                        std::optional<double> competing_alpha = std::nullopt);

}  // namespace taildep
