#include "taildep/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taildep/numeric.hpp"

namespace taildep {

namespace {

std::vector<double> indices_of(const LinearCombinationSpec& spec) {
    if (spec.terms.empty()) throw ParameterDomainError("linear combination needs at least one term");
    std::vector<double> alphas;
    for (const auto& t : spec.terms) {
        validate(t.spec);
        const auto a = tail_index(t.spec);
        if (!a) throw NotRegularlyVaryingError(to_string(t.spec) + " is not regularly varying");
        alphas.push_back(*a);
    }
    return alphas;
}

}  // namespace

TailConstants linear_combination_tail_constant(std::span<const double> coeffs, double alpha,
                                               const BalanceWeights& balance) {
    if (coeffs.empty()) throw ParameterDomainError("empty coefficient list");
    if (!(alpha > 0.0)) throw ParameterDomainError("tail index must be positive");
    validate(balance);
    TailConstants c{0.0, 0.0};
    for (double rho : coeffs) {
        const double m = std::pow(std::abs(rho), alpha);
        if (rho > 0.0) c.positive += balance.p * m;
        if (rho < 0.0) c.positive += balance.q * m;
        c.absolute += m;
    }
    return c;
}

double slope_dominant(const LinearCombinationSpec& spec) {
    const auto alphas = indices_of(spec);
    const auto it = std::min_element(alphas.begin(), alphas.end());
    if (spec.terms[static_cast<std::size_t>(it - alphas.begin())].coefficient == 0.0)
        throw ParameterDomainError("the term with the minimal tail index has a zero coefficient");
    return -*it;
}

double slope_sum_bound(const LinearCombinationSpec& spec) {
    const auto alphas = indices_of(spec);
    double s = 0.0;
    for (double a : alphas) s += a;
    return -s;
}

double slope_moment_bound(const LinearCombinationSpec& spec) {
    const auto alphas = indices_of(spec);
    double s1 = 0.0, s2 = 0.0;
    for (double a : alphas) {
        s1 += a;
        s2 += a * a;
    }
    return -std::abs(s1 - 0.5 * s2) / static_cast<double>(alphas.size());
}

double sum_bound_scale(const LinearCombinationSpec& spec) {
    indices_of(spec);
    double lmin = std::numeric_limits<double>::infinity();
    for (const auto& t : spec.terms) lmin = std::min(lmin, std::abs(t.coefficient));
    return static_cast<double>(spec.terms.size()) * lmin;
}

SlopeFit empirical_log_tail_slope(std::span<const double> sample, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction < 0.5))
        throw ParameterDomainError("tail fraction must lie in (0, 0.5)");
    const std::size_t n = sample.size();
    if (n < 100) throw InsufficientDataError("empirical tail slope needs at least 100 observations");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const auto k = static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(n)));

    std::vector<double> lx, ls;
    std::size_t distinct = 0;
    std::size_t i = 0;
    while (i < k) {
        // Block of ties sharing the value sorted[i]; i values lie strictly above it.
        std::size_t j = i;
        while (j < k && sorted[j] == sorted[i]) ++j;
        ++distinct;
        if (i > 0 && sorted[i] > 0.0) {
            lx.push_back(std::log(sorted[i]));
            ls.push_back(std::log(static_cast<double>(i) / static_cast<double>(n)));
        }
        i = j;
    }
    if (distinct < 20 || lx.size() < 19)
        throw InsufficientDataError("too few distinct exceedances above the tail threshold");
    const LineFit fit = least_squares(lx, ls);
    return SlopeFit{fit.slope, fit.intercept, k < n ? sorted[k] : sorted.back(), lx.size()};
}

std::vector<double> sample_combination(const LinearCombinationSpec& spec, std::size_t n, Rng& rng) {
    if (spec.terms.empty()) throw ParameterDomainError("linear combination needs at least one term");
    for (const auto& t : spec.terms) validate(t.spec);
    std::vector<double> out(n, 0.0);
    for (auto& v : out)
        for (const auto& t : spec.terms) v += t.coefficient * draw(t.spec, rng);
    return out;
}

TailSlopeReport tail_slope_report(const LinearCombinationSpec& spec) {
    return TailSlopeReport{slope_dominant(spec), slope_sum_bound(spec), slope_moment_bound(spec),
                           std::nullopt, std::nullopt, std::numeric_limits<double>::quiet_NaN()};
}

TailSlopeReport tail_slope_report(const LinearCombinationSpec& spec, std::span<const double> sample,
                                  double tail_fraction) {
    TailSlopeReport r = tail_slope_report(spec);
    const SlopeFit fit = empirical_log_tail_slope(sample, tail_fraction);
    r.empirical_slope = fit.slope;
    r.empirical_intercept = fit.intercept;
    r.threshold = fit.threshold;
    return r;
}

}  // namespace taildep
