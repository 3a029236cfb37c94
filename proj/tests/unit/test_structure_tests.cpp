#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "taildep/errors.hpp"
#include "taildep/distributions.hpp"
#include "taildep/structure_tests.hpp"

using namespace taildep;

namespace {

struct DipCase {
    std::vector<double> sample;
    double dip;
};

// Produced by tests/oracles/dip_lp_oracle.py (one linear programme per mode
// location), frozen here.
const std::vector<DipCase> kLpCases = {
    {{1.0, 2.0, 3.0, 4.0}, 0.125},
    {{0.0, 0.1, 0.9, 1.0}, 0.22222222222222218},
    {{0.0, 0.5, 1.0, 4.0, 4.5, 5.0}, 0.1875},
    {{1.0289, 1.6419, 1.1467, -0.9732, -1.3928}, 0.16534665730685055},
    {{4.6398, 3.2687, 2.8923, 1.4844, 0.0489, 0.8115}, 0.12378666385313357},
    {{-0.5341, 4.1638, -0.6685, 3.7477, -0.2219, 0.4181, 3.5687}, 0.18024096201739903},
    {{-0.4026, 3.0421, 1.2112, -0.4395, 3.6124, -1.3887, -2.0982, 0.6343}, 0.09531171914042987},
    {{4.0175, 1.3353, 1.2655, 4.71, 3.1336, -0.0537, 0.6029, -0.2119, -0.61}, 0.100752391954738},
    {{-0.8274, 3.5433, 1.9736, 0.0991, 0.5382, 4.663, 1.0556, -0.2375, -0.6102, -0.0596}, 0.06318020003390405},
    {{4.3609, 3.271, 0.0233, 4.4318, -1.3274, -0.6949, 0.4231, 2.2488, 4.4623, -0.0589, 3.1548, 4.3916},
     0.11069712789850214},
};

std::vector<double> uniform(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform();
    return v;
}

std::vector<double> bimodal(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal() + (rng.uniform() < 0.5 ? 0.0 : 8.0);
    return v;
}

std::vector<double> planted_break(Rng& rng) {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.normal() + (i < 500 ? 0.0 : 5.0);
    return v;
}

}  // namespace

TEST(Dip, MatchesLinearProgrammeOracle) {
    for (const auto& c : kLpCases) EXPECT_NEAR(dip_statistic(c.sample), c.dip, 1e-9) << "n=" << c.sample.size();
}

TEST(Dip, EquallySpacedFourPoints) { EXPECT_DOUBLE_EQ(dip_statistic(std::vector<double>{0, 1, 2, 3}), 0.125); }

TEST(Dip, UniformSmallBimodalLarge) {
    Rng rng(1);
    EXPECT_LT(dip_statistic(uniform(10000, rng)), 0.02);
    EXPECT_GT(dip_statistic(bimodal(10000, rng)), 0.05);
}

TEST(Dip, AffineInvariance) {
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto x = bimodal(300, rng);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = -4.0 * x[i] + 17.0;
        EXPECT_NEAR(dip_statistic(y), dip_statistic(x), 1e-12);
    }
}

TEST(Dip, NonlinearMonotoneMapsChangeTheStatistic) {
    // The dip measures distance in x, so it is not rank-invariant: a
    // well-separated mixture and its exponential differ.
    Rng rng(3);
    const auto x = bimodal(500, rng);
    std::vector<double> e(x.size());
    std::transform(x.begin(), x.end(), e.begin(), [](double v) { return std::exp(v); });
    EXPECT_GT(std::abs(dip_statistic(x) - dip_statistic(e)), 1e-3);
}

TEST(Dip, Errors) {
    EXPECT_THROW(dip_statistic(std::vector<double>{1, 2, 3}), InsufficientDataError);
    EXPECT_THROW(dip_statistic(std::vector<double>{1, 2, NAN, 4}), DataError);
    EXPECT_THROW(dip_test(std::vector<double>{1, 2, 3, 4, 5}, 0, 1), ParameterDomainError);
}

TEST(DipTest, SeededAndCalibrated) {
    Rng rng(4);
    const auto u = uniform(200, rng);
    const auto a = dip_test(u, 200, 99);
    const auto b = dip_test(u, 200, 99);
    EXPECT_EQ(a.p_value, b.p_value);
    EXPECT_EQ(a.n_bootstrap, 200u);
    EXPECT_EQ(a.statistic, dip_statistic(u));
    EXPECT_GE(a.p_value, 0.0);
    EXPECT_LE(a.p_value, 1.0);

    int rejected_uniform = 0, detected_bimodal = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        rejected_uniform += dip_test(uniform(200, rng), 200, s).p_value <= 0.05;
        detected_bimodal += dip_test(bimodal(200, rng), 200, s).p_value < 0.01;
    }
    EXPECT_LE(rejected_uniform, 4);
    EXPECT_EQ(detected_bimodal, 20);
}

TEST(ChangePoints, PlantedMeanShift) {
    Rng rng(5);
    const auto v = planted_break(rng);
    const auto r = detect_changepoints(v, {});
    ASSERT_EQ(r.locations.size(), 1u);
    EXPECT_NEAR(static_cast<double>(r.locations[0]), 500.0, 10.0);
    EXPECT_EQ(r.n_segments, 2u);
    EXPECT_LT(r.p_value_per_split[0], 1e-10);
}

TEST(ChangePoints, ConstantSeriesHasNone) {
    const auto r = detect_changepoints(std::vector<double>(400, 7.0), {});
    EXPECT_TRUE(r.locations.empty());
    EXPECT_EQ(r.n_segments, 1u);
}

TEST(ChangePoints, AffineInvariantLocations) {
    Rng rng(6);
    std::vector<double> v(1200);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = draw(Cauchy{i < 300 ? 0.0 : (i < 800 ? 6.0 : -3.0), 1}, rng);
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = 0.5 * v[i] - 2.0;
    const auto a = detect_changepoints(v, {5, 50, 0.05});
    const auto b = detect_changepoints(w, {5, 50, 0.05});
    EXPECT_EQ(a.locations, b.locations);
    EXPECT_EQ(a.discovery_order, b.discovery_order);
    EXPECT_GE(a.locations.size(), 2u);
}

TEST(ChangePoints, SegmentsTileTheRange) {
    Rng rng(7);
    std::vector<double> v(2306);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.normal() + static_cast<double>(i / 400);
    const auto r = detect_changepoints(v, {5, 100, 0.05});
    const auto segs = r.segments(v.size());
    ASSERT_EQ(segs.size(), r.n_segments);
    EXPECT_EQ(segs.front().first, 0u);
    EXPECT_EQ(segs.back().second, v.size());
    for (std::size_t k = 1; k < segs.size(); ++k) EXPECT_EQ(segs[k].first, segs[k - 1].second);
    for (const auto& s : segs) EXPECT_GE(s.second - s.first, 100u);
    EXPECT_LE(r.locations.size(), 5u);
    EXPECT_TRUE(std::is_sorted(r.locations.begin(), r.locations.end()));
    EXPECT_EQ(r.discovery_order.size(), r.locations.size());
}

TEST(ChangePoints, MaximumIsImposed) {
    Rng rng(8);
    std::vector<double> v(2000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.normal() + 4.0 * static_cast<double>(i / 200 % 2);
    EXPECT_EQ(detect_changepoints(v, {3, 50, 0.05}).locations.size(), 3u);
}

TEST(ChangePoints, Errors) {
    EXPECT_THROW(detect_changepoints(std::vector<double>(150, 1.0), {5, 100, 0.05}), InsufficientDataError);
    EXPECT_THROW(detect_changepoints(std::vector<double>(400, 1.0), {0, 100, 0.05}), ParameterDomainError);
    EXPECT_THROW(detect_changepoints(std::vector<double>(400, 1.0), {5, 100, 1.5}), ParameterDomainError);
}
