#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "taildep/errors.hpp"
#include "taildep/tail_bounds.hpp"

using namespace taildep;

namespace {

LinearCombinationSpec example_i() {
    return {{{1.0, Pareto{2.414, 1}, {}}, {1.0 / 3.0, Cauchy{0, 1}, {0.5, 0.5}}}};
}

LinearCombinationSpec example_ii() {
    return {{{1.0, Pareto{2.414, 1}, {}}, {1.0 / 3.0, Pareto{5, 1}, {}}}};
}

LinearCombinationSpec indices_only(std::vector<double> alphas) {
    LinearCombinationSpec s;
    for (double a : alphas) s.terms.push_back({1.0, Pareto{a, 1}, {}});
    return s;
}

std::vector<double> abs_cauchy(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    auto s = sample(Cauchy{0, 1}, n, rng);
    for (auto& v : s) v = std::abs(v);
    return s;
}

}  // namespace

TEST(TailConstant, Examples) {
    const std::vector<double> one{1};
    auto c = linear_combination_tail_constant(one, 1.7, {});
    EXPECT_EQ(c.positive, 1.0);
    EXPECT_EQ(c.absolute, 1.0);

    const std::vector<double> sym{1, -1};
    c = linear_combination_tail_constant(sym, 1.0, {0.5, 0.5});
    EXPECT_EQ(c.positive, 1.0);
    EXPECT_EQ(c.absolute, 2.0);

    const std::vector<double> two{2, 3};
    c = linear_combination_tail_constant(two, 2.0, {});
    EXPECT_DOUBLE_EQ(c.positive, 13.0);
    EXPECT_DOUBLE_EQ(c.absolute, 13.0);

    EXPECT_THROW(linear_combination_tail_constant(std::vector<double>{}, 1.0, {}), ParameterDomainError);
}

TEST(TailConstant, MirrorConstantsAddToAbsolute) {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> coeffs(1 + static_cast<std::size_t>(rng.uniform() * 8));
        for (auto& v : coeffs) v = rng.uniform() * 4 - 2;
        const double alpha = 0.2 + 4 * rng.uniform();
        // p = 1/2 only halves each term, so the identity holds bit for bit.
        const auto half = linear_combination_tail_constant(coeffs, alpha, {0.5, 0.5});
        EXPECT_EQ(half.positive + half.positive, half.absolute);
        // General weights: p + q = 1 itself rounds, so compare to rounding level.
        const double r = rng.uniform();
        const auto g = linear_combination_tail_constant(coeffs, alpha, {r, 1 - r});
        const auto gm = linear_combination_tail_constant(coeffs, alpha, {1 - r, r});
        EXPECT_NEAR(g.positive + gm.positive, g.absolute, 1e-12 * g.absolute);
    }
}

TEST(SlopeBounds, WorkedExampleOne) {
    EXPECT_EQ(slope_dominant(example_i()), -1.0);
    EXPECT_EQ(slope_sum_bound(example_i()), -3.414);
}

TEST(SlopeBounds, WorkedExampleTwo) {
    EXPECT_EQ(slope_dominant(example_ii()), -2.414);
    const double m = slope_moment_bound(example_ii());
    // Printed to two decimals as -3.99: the digits are truncated, not rounded.
    EXPECT_EQ(std::trunc(m * 100) / 100, -3.99);
    EXPECT_NEAR(m, -std::abs(7.414 - 0.5 * (2.414 * 2.414 + 25.0)) / 2.0, 1e-12);
}

TEST(SlopeBounds, SmallCases) {
    EXPECT_EQ(slope_dominant(indices_only({3})), -3.0);
    EXPECT_EQ(slope_sum_bound({{{1, Cauchy{0, 1}, {0.5, 0.5}}, {2, Cauchy{3, 4}, {0.5, 0.5}}}}), -2.0);
    EXPECT_EQ(slope_sum_bound({{{1, Pareto{2, 1}, {}}, {1, Pareto{3, 1}, {}}, {1, Cauchy{0, 1}, {0.5, 0.5}}}}), -6.0);
    EXPECT_EQ(slope_moment_bound(indices_only({2, 2})), 0.0);
    EXPECT_EQ(slope_moment_bound(indices_only({1})), -0.5);
}

TEST(SlopeBounds, Errors) {
    const LinearCombinationSpec weibull{{{1, Pareto{2, 1}, {}}, {1, Weibull{0.5, 1}, {}}}};
    EXPECT_THROW(slope_dominant(weibull), NotRegularlyVaryingError);
    EXPECT_THROW(slope_sum_bound(weibull), NotRegularlyVaryingError);
    EXPECT_THROW(slope_moment_bound(weibull), NotRegularlyVaryingError);
    const LinearCombinationSpec zero{{{0, Cauchy{0, 1}, {0.5, 0.5}}, {1, Pareto{3, 1}, {}}}};
    EXPECT_THROW(slope_dominant(zero), ParameterDomainError);
    EXPECT_THROW(slope_dominant(LinearCombinationSpec{}), ParameterDomainError);
}

TEST(SlopeBounds, SumBoundNeverAboveDominant) {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        LinearCombinationSpec s;
        const int k = 2 + static_cast<int>(rng.uniform() * 4);
        for (int t = 0; t < k; ++t) {
            const double l = rng.uniform() * 2 + 0.1;
            if (rng.uniform() < 0.3) s.terms.push_back({l, Cauchy{0, 1}, {0.5, 0.5}});
            else s.terms.push_back({l, Frechet{0, 0.5 + 5 * rng.uniform(), 1}, {}});
        }
        EXPECT_LE(slope_sum_bound(s), slope_dominant(s));
    }
    EXPECT_DOUBLE_EQ(sum_bound_scale(example_i()), 2.0 / 3.0);
}

TEST(EmpiricalSlope, ParetoTwo) {
    Rng rng(31);
    const auto s = sample(Pareto{2, 1}, 100000, rng);
    EXPECT_NEAR(empirical_log_tail_slope(s, 0.05).slope, -2.0, 0.15);
}

TEST(EmpiricalSlope, AbsoluteCauchy) {
    EXPECT_NEAR(empirical_log_tail_slope(abs_cauchy(100000, 32), 0.05).slope, -1.0, 0.15);
}

TEST(EmpiricalSlope, WorkedExampleOneSample) {
    Rng rng(33);
    const auto s = sample_combination(example_i(), 100000, rng);
    EXPECT_NEAR(empirical_log_tail_slope(s, 0.02).slope, -1.0, 0.2);
}

TEST(EmpiricalSlope, Errors) {
    const std::vector<double> few(50, 1.0);
    EXPECT_THROW(empirical_log_tail_slope(few, 0.1), InsufficientDataError);
    std::vector<double> ties(1000, 3.0);
    for (int i = 0; i < 10; ++i) ties[static_cast<std::size_t>(i)] = 4.0 + i;
    EXPECT_THROW(empirical_log_tail_slope(ties, 0.2), InsufficientDataError);
    const auto ok = abs_cauchy(1000, 1);
    EXPECT_THROW(empirical_log_tail_slope(ok, 0.0), ParameterDomainError);
    EXPECT_THROW(empirical_log_tail_slope(ok, 0.5), ParameterDomainError);
}

TEST(EmpiricalSlope, TracksDominantIndexOnLargeSamples) {
    const std::vector<LinearCombinationSpec> specs{
        example_i(),
        {{{1.0, Pareto{1.5, 1}, {}}, {0.5, Pareto{3, 1}, {}}}},
        {{{2.0, Pareto{4, 1}, {}}, {1.0, Cauchy{0, 1}, {0.5, 0.5}}, {1.0, Pareto{2, 1}, {}}}},
    };
    std::uint64_t seed = 40;
    for (const auto& spec : specs) {
        Rng rng(seed++);
        const auto s = sample_combination(spec, 1000000, rng);
        EXPECT_NEAR(empirical_log_tail_slope(s, 0.02).slope, slope_dominant(spec), 0.25);
    }
}

TEST(EmpiricalSlope, SumBoundLineCrossesBelowEmpiricalTail) {
    // The -sum(alpha) line through the empirical log-survival at the start of
    // the top three decades lies under it from twice that point onward: it is
    // steeper than the true index, so past the crossing it bounds the tail
    // from below. Right at the anchor, order-statistic spacing noise decides.
    Rng rng(50);
    const auto spec = example_i();
    auto s = sample_combination(spec, 1000000, rng);
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    const double top = s.back();
    const double scale = sum_bound_scale(spec);
    const double slope = slope_sum_bound(spec);
    const auto first = std::lower_bound(s.begin(), s.end(), top / 1000);
    auto log_surv = [&](std::vector<double>::const_iterator it) {
        const auto above = s.end() - std::upper_bound(it, s.cend(), *it);
        return std::log(static_cast<double>(above) / n);
    };
    const double x0 = *first;
    const double c = log_surv(first) - slope * std::log(x0 / scale);
    std::size_t checked = 0;
    for (auto it = std::lower_bound(first, s.end(), 2 * *first); it < s.end() - 1; ++it) {
        if (*it == *(it - 1)) continue;
        EXPECT_GE(log_surv(it), slope * std::log(*it / scale) + c) << "x=" << *it;
        ++checked;
    }
    EXPECT_GT(checked, 100u);
}

TEST(TailSlopeReport, CarriesAllThreeSlopes) {
    const auto r = tail_slope_report(example_ii());
    EXPECT_EQ(r.slope_dominant, -2.414);
    EXPECT_EQ(r.slope_sum, -7.414);
    EXPECT_EQ(r.slope_moment, slope_moment_bound(example_ii()));
    EXPECT_FALSE(r.empirical_slope.has_value());

    Rng rng(60);
    const auto s = sample_combination(example_ii(), 20000, rng);
    const auto e = tail_slope_report(example_ii(), s, 0.05);
    ASSERT_TRUE(e.empirical_slope.has_value());
    EXPECT_LT(*e.empirical_slope, 0.0);
    EXPECT_GT(e.threshold, 1.0);
}
