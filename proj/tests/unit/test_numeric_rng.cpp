#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <vector>

#include "taildep/distributions.hpp"
#include "taildep/errors.hpp"
#include "taildep/numeric.hpp"
#include "taildep/rng.hpp"

using namespace taildep;

TEST(Rng, NamedSubstreamsAreStableAndDistinct) {
    EXPECT_EQ(derive_seed(42, "x-innovations"), derive_seed(42, "x-innovations"));
    EXPECT_NE(derive_seed(42, "x-innovations"), derive_seed(42, "y-innovations"));
    EXPECT_NE(derive_seed(42, "x-innovations"), derive_seed(43, "x-innovations"));
    EXPECT_NE(derive_seed(42, std::uint64_t{0}), derive_seed(42, std::uint64_t{1}));

    Rng a = Rng::substream(9, "s");
    Rng b = Rng::substream(9, "s");
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, UniformStaysInOpenUnitInterval) {
    Rng rng(1);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Rng, NormalMomentsMatch) {
    Rng rng(2);
    std::vector<double> z(100000);
    for (auto& v : z) v = rng.normal();
    EXPECT_NEAR(mean(z), 0.0, 0.02);
    EXPECT_NEAR(variance(z), 1.0, 0.02);
}

TEST(Numeric, Type7Quantile) {
    const std::vector<double> v{4, 1, 3, 2};
    EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile(v, 0.9), 3.7);
    EXPECT_THROW(quantile(v, 1.5), ParameterDomainError);
    EXPECT_THROW(quantile(std::vector<double>{}, 0.5), InsufficientDataError);
}

TEST(Numeric, MeanVarianceAndLeastSquares) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    EXPECT_DOUBLE_EQ(mean(x), 3.0);
    EXPECT_DOUBLE_EQ(variance(x), 2.5);

    std::vector<double> y;
    for (double v : x) y.push_back(2.0 - 0.5 * v);
    const LineFit f = least_squares(x, y);
    EXPECT_NEAR(f.slope, -0.5, 1e-14);
    EXPECT_NEAR(f.intercept, 2.0, 1e-14);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(f.sxx, 10.0);

    const std::vector<double> flat{1, 1, 1};
    EXPECT_THROW(least_squares(flat, flat), DegenerateError);
}

TEST(Numeric, KolmogorovSurvivalKnownValues) {
    EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
    EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
    EXPECT_DOUBLE_EQ(kolmogorov_survival(0.0), 1.0);
    EXPECT_LT(kolmogorov_survival(5.0), 1e-20);
}

TEST(Numeric, HillRecoversParetoIndex) {
    Rng rng(5);
    const auto s = sample(Pareto{2.0, 1.0}, 100000, rng);
    EXPECT_NEAR(hill_estimator(s, 1000), 2.0, 0.15);
}

TEST(Numeric, ParallelForVisitsEveryIndexOnceAndRethrows) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);

    EXPECT_THROW(parallel_for(10,
                              [](std::size_t i) {
                                  if (i == 7) throw DataError("boom");
                              }),
                 DataError);
}
