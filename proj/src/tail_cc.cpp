#include "taildep/tail_cc.hpp"

#include <algorithm>
#include <cmath>

#include "taildep/numeric.hpp"
#include "taildep/tail_bounds.hpp"

namespace taildep {

TailCCEstimate tail_cross_correlation(std::span<const double> x, std::span<const double> y,
                                      const TailCCParams& params) {
    if (x.size() != y.size()) throw ShapeError("tail cross-correlation needs series of equal length");
    if (!(params.qx > 0.0 && params.qx < 1.0 && params.qy > 0.0 && params.qy < 1.0))
        throw ParameterDomainError("quantile levels must lie in (0,1)");
    const std::size_t n = x.size();
    const std::size_t k = params.lag;
    if (n < k + 20) throw InsufficientDataError("series too short for the requested lag");

    TailCCEstimate e{};
    e.params = params;
    e.threshold_x = quantile(x, params.qx);
    e.threshold_y = quantile(y, params.qy);
    e.n_pairs = n - k;
    for (std::size_t t = 0; t < e.n_pairs; ++t) {
        const bool ex = x[t] > e.threshold_x;
        const bool ey = y[t + k] > e.threshold_y;
        e.n_exceed_x += ex;
        e.n_exceed_y += ey;
        e.n_joint += ex && ey;
    }
    if (e.n_exceed_x == 0) throw DegenerateError("no exceedances of the x threshold; conditional probability undefined");
    if (e.n_exceed_x == e.n_pairs) throw DegenerateError("every x value exceeds its threshold");
    const double pairs = static_cast<double>(e.n_pairs);
    const double cond = static_cast<double>(e.n_joint) / static_cast<double>(e.n_exceed_x);
    const double marg = static_cast<double>(e.n_exceed_y) / pairs;
    e.tau = (cond - marg) / (1.0 - static_cast<double>(e.n_exceed_x) / pairs);
    return e;
}

TailCCTable tail_cc_profile(std::span<const double> x, std::span<const double> y,
                            const std::vector<std::size_t>& lags, const std::vector<QuantilePair>& pairs) {
    if (lags.empty() || pairs.empty()) throw ConfigurationError("profile needs at least one lag and one quantile pair");
    TailCCTable table{lags, pairs, {}};
    table.cells.resize(lags.size() * pairs.size());
    parallel_for(table.cells.size(), [&](std::size_t idx) {
        const std::size_t p = idx / lags.size();
        const std::size_t l = idx % lags.size();
        TailCCCell& cell = table.cells[idx];
        cell.lag = lags[l];
        cell.quantiles = pairs[p];
        try {
            cell.estimate = tail_cross_correlation(x, y, {lags[l], pairs[p].qx, pairs[p].qy});
        } catch (const Error& err) {
            cell.error = err.what();
        }
    });
    return table;
}

std::vector<WindowTailCCCell> window_tail_cc(const CoupledProcessConfig& config, long reference_index,
                                             const std::vector<long>& indices, QuantilePair quantiles) {
    if (!config.window) throw ConfigurationError("window profile needs a window configuration");
    const InnovationDraws draws = draw_innovations(config);
    CoupledProcessConfig c = config;
    c.window->index = reference_index;
    const std::vector<double> x = assemble(c, draws).x_star;
    std::vector<WindowTailCCCell> cells(indices.size());
    parallel_for(indices.size(), [&](std::size_t k) {
        CoupledProcessConfig ck = config;
        ck.window->index = indices[k];
        cells[k].index = indices[k];
        try {
            const std::vector<double> y = assemble(ck, draws).y_star;
            cells[k].estimate = tail_cross_correlation(x, y, {0, quantiles.qx, quantiles.qy});
        } catch (const Error& err) {
            cells[k].error = err.what();
        }
    });
    return cells;
}

RatioPrediction predicted_ratio(const CoefficientScheme& b_scheme, long i, double alpha) {
    validate(b_scheme);
    if (!(alpha > 0.0)) throw ParameterDomainError("tail index must be positive");
    if (i + 1 < 0) throw ParameterDomainError("lag index must be at least -1");
    const double b1 = coefficient_at(b_scheme, i + 1);
    const double b2 = coefficient_at(b_scheme, i + 2);
    if (b1 == 0.0) throw DegenerateError("coefficient b_{i+1} is zero; ratio undefined");
    return RatioPrediction{i, std::pow(std::abs(b2 / b1), alpha), alpha};
}

Regime parse_regime(const std::string& name) {
    if (name == "iid-identical" || name == "iid_identical") return Regime::iid_identical;
    if (name == "noniid-identical" || name == "noniid_identical") return Regime::noniid_identical;
    if (name == "iid-distinct" || name == "iid_distinct") return Regime::iid_distinct;
    if (name == "noniid-distinct" || name == "noniid_distinct") return Regime::noniid_distinct;
    throw ConfigurationError("unknown regime '" + name + "'");
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::iid_identical: return "iid-identical";
        case Regime::noniid_identical: return "noniid-identical";
        case Regime::iid_distinct: return "iid-distinct";
        case Regime::noniid_distinct: return "noniid-distinct";
    }
    return "unknown";
}

ConditionReport monotonicity_conditions(const CoefficientScheme& b_scheme, const CoefficientScheme& a_scheme,
                                        double alpha, const BalanceWeights& balance, long i, Regime regime,
                                        std::optional<double> quantile_ratio_term,
                                        std::optional<double> competing_alpha) {
    validate(b_scheme);
    validate(a_scheme);
    validate(balance);
    if (!(alpha > 0.0)) throw ParameterDomainError("tail index must be positive");
    if (i + 1 < 0) throw ParameterDomainError("lag index must be at least -1");
    const bool distinct = regime == Regime::iid_distinct || regime == Regime::noniid_distinct;
    if (distinct && !quantile_ratio_term)
        throw ConfigurationError("distinct-quantile regimes need the quantile ratio term");

    const double b1 = std::abs(coefficient_at(b_scheme, i + 1));
    const double b2 = std::abs(coefficient_at(b_scheme, i + 2));
    ConditionReport r{};
    r.regime = regime;
    if (b1 == 0.0) throw DegenerateError("coefficient b_{i+1} is zero");
    r.coefficient_ratio = b2 / b1;
    r.coefficient_ratio_below_one = r.coefficient_ratio < 1.0;
    if (competing_alpha) r.tail_index_condition = *competing_alpha > alpha;

    if (regime == Regime::iid_identical) {
        r.lhs = r.coefficient_ratio;
        r.rhs = 1.0;
    } else {
        const double numerator = std::pow(b2, alpha) - std::pow(b1, alpha);
        double denominator = 0.0;
        if (regime == Regime::iid_distinct) {
            const auto b = coefficients(b_scheme, default_truncation(b_scheme));
            denominator = linear_combination_tail_constant(b, alpha, balance).positive;
        } else {
            const double a1 = coefficient_at(a_scheme, 1);
            denominator = linear_combination_tail_constant(std::span<const double>(&a1, 1), alpha, balance).positive;
        }
        if (denominator == 0.0) throw DegenerateError("tail constant in the condition denominator is zero");
        r.lhs = numerator / denominator;
        r.rhs = distinct ? *quantile_ratio_term : 1.0;
    }
    r.satisfied = r.lhs < r.rhs;
    return r;
}

}  // namespace taildep
