#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "taildep/errors.hpp"
#include "taildep/memory_diag.hpp"

using namespace taildep;

namespace {

std::vector<double> white(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}

std::vector<double> integrated(std::size_t n, std::uint64_t seed) {
    auto v = white(n, seed);
    for (std::size_t i = 1; i < n; ++i) v[i] += v[i - 1];
    return v;
}

constexpr std::size_t kN = 1 << 14;

}  // namespace

TEST(Hurst, WhiteNoiseNearHalf) {
    for (std::uint64_t s = 0; s < 5; ++s) EXPECT_NEAR(hurst_rs(white(kN, s)), 0.5, 0.05) << "seed " << s;
}

TEST(Hurst, IntegratedNoiseNearOne) {
    for (std::uint64_t s = 0; s < 5; ++s) EXPECT_NEAR(hurst_rs(integrated(kN, s)), 1.0, 0.07) << "seed " << s;
}

TEST(Hurst, IntegratedAboveWhiteOnEverySeed) {
    for (std::uint64_t s = 10; s < 20; ++s) EXPECT_GT(hurst_rs(integrated(4096, s)), hurst_rs(white(4096, s)));
}

TEST(Hurst, AffineInvariance) {
    // R/S is scale- and location-free per window; only rounding separates the two.
    const auto x = white(5000, 3);
    for (auto [a, c] : {std::pair{2.5, 100.0}, std::pair{-0.01, -3.0}, std::pair{1e6, 1.0}}) {
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + c;
        EXPECT_NEAR(hurst_rs(y), hurst_rs(x), 1e-12);
    }
}

TEST(Hurst, WindowGridAndExpectation) {
    const auto w = hurst_windows(kN);
    ASSERT_GE(w.size(), 5u);
    EXPECT_EQ(w.front(), 8u);
    EXPECT_LE(w.back(), kN / 2);
    for (std::size_t i = 1; i < w.size(); ++i) EXPECT_GT(w[i], w[i - 1]);
    // E[R/S] grows like sqrt(w) and is increasing.
    EXPECT_LT(expected_rescaled_range(8), expected_rescaled_range(16));
    EXPECT_NEAR(expected_rescaled_range(400) / std::sqrt(400.0 * M_PI / 2), 1.0, 0.1);
    EXPECT_THROW(expected_rescaled_range(1), ParameterDomainError);
}

TEST(Hurst, Errors) {
    EXPECT_THROW(hurst_rs(white(63, 1)), InsufficientDataError);
    EXPECT_THROW(hurst_rs(std::vector<double>(500, 2.0)), DegenerateError);
}

TEST(Gph, WhiteNoiseNearZero) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto g = gph(white(kN, s));
        EXPECT_NEAR(g.d, 0.0, 0.1) << "seed " << s;
        EXPECT_EQ(g.bandwidth, 128u);
        EXPECT_GT(g.standard_error, 0.0);
    }
}

TEST(Gph, IntegratedNoiseNearOne) {
    for (std::uint64_t s = 0; s < 5; ++s) EXPECT_NEAR(gph(integrated(kN, s)).d, 1.0, 0.15) << "seed " << s;
}

TEST(Gph, ConstantShiftDoesNotMove) {
    const auto x = integrated(3000, 4);
    auto y = x;
    for (auto& v : y) v += 12345.0;
    EXPECT_NEAR(gph(y).d, gph(x).d, 1e-10);
}

TEST(Gph, Errors) {
    EXPECT_THROW(gph(white(127, 1)), InsufficientDataError);
    EXPECT_THROW(gph(white(1000, 1), 1.0), ParameterDomainError);
    EXPECT_THROW(gph(white(1000, 1), 0.1), ParameterDomainError);
    EXPECT_THROW(gph(std::vector<double>(512, 1.0)), DegenerateError);
}

TEST(ClassifyScheme, Examples) {
    EXPECT_EQ(classify_scheme(Exponential{0.3}), MemoryClass::short_memory);
    EXPECT_EQ(classify_scheme(PowerLaw{2}), MemoryClass::long_memory);
    EXPECT_EQ(classify_scheme(Explicit{{1, 0, 0, 0}}), MemoryClass::short_memory);
    EXPECT_EQ(classify_scheme(Explicit{{1, 0.5, 0.25, 0.125, 0.0625, 0.03125}}), MemoryClass::short_memory);
    EXPECT_EQ(classify_scheme(Explicit{{1, 1, 0.35, 0.19, 0.125, 0.089, 0.067, 0.052}}), MemoryClass::long_memory);
    EXPECT_EQ(classify_scheme(Explicit{{1, 0.2, 0.9, 0.1, 0.8, 0.05, 0.7, 0.3}}), MemoryClass::unknown);
}

TEST(ClassifyScheme, SummablePowerLawIsFlagged) {
    EXPECT_TRUE(classification_note(PowerLaw{2}).has_value());
    EXPECT_FALSE(classification_note(PowerLaw{0.4}).has_value());
    EXPECT_FALSE(classification_note(Exponential{0.4}).has_value());
}

TEST(MemoryReport, BundlesBothEstimators) {
    const auto x = integrated(4096, 9);
    const auto r = memory_report(x);
    EXPECT_EQ(r.hurst, hurst_rs(x));
    EXPECT_EQ(r.gph_d, gph(x).d);
    EXPECT_EQ(r.gph_bandwidth, 64u);
}
