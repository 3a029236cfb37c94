#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace taildep {

// Hartigan dip: sup distance between the empirical CDF and the closest
// unimodal CDF. Rank based, at most 0.25.
double dip_statistic(std::span<const double> sample);

struct DipResult {
    double statistic;
    double p_value;
    std::size_t n_bootstrap;
};

// p-value: share of uniform(0,1) samples of the same size whose dip is
// strictly larger than the observed one. Replicate r uses its own derived seed.
DipResult dip_test(std::span<const double> sample, std::size_t n_bootstrap, std::uint64_t seed);

struct ChangePointOptions {
    std::size_t max_changepoints = 5;
    std::size_t min_segment = 100;
    double alpha = 0.05;  // per-split level after Bonferroni over candidate splits
};

struct ChangePointResult {
    // A location s splits [0, s) from [s, n): it is the number of observations
    // before the break (the 1-based index of the last point of the left segment).
    std::vector<std::size_t> locations;        // sorted
    std::vector<std::size_t> discovery_order;  // as found
    std::vector<double> statistic_per_split;   // sqrt(n1 n2 / n) * D, discovery order
    std::vector<double> p_value_per_split;     // adjusted, discovery order
    std::size_t n_segments = 1;

    // [begin, end) index ranges of the segments, in order.
    std::vector<std::pair<std::size_t, std::size_t>> segments(std::size_t n) const;
};

// Binary segmentation with the two-sample Kolmogorov-Smirnov statistic.
ChangePointResult detect_changepoints(std::span<const double> series, const ChangePointOptions& options);

}  // namespace taildep
