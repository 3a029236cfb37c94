#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taildep/linear_process.hpp"

namespace taildep {

enum class RsCorrection {
    none,        // plain log R/S regression
    anis_lloyd,  // subtract the expected log R/S of independent noise, add 1/2
};

struct HurstOptions {
    std::size_t min_window = 8;
    std::size_t grid_points = 10;
    double max_window_fraction = 0.5;
    RsCorrection correction = RsCorrection::anis_lloyd;
};

// Expected R/S of an independent Gaussian block of length w (small-sample form).
double expected_rescaled_range(std::size_t w);

// Geometric grid of window sizes used by hurst_rs for a series of length n.
std::vector<std::size_t> hurst_windows(std::size_t n, const HurstOptions& options = {});

double hurst_rs(std::span<const double> series, const HurstOptions& options = {});

struct GphEstimate {
    double d;
    double standard_error;
    std::size_t bandwidth;
};

GphEstimate gph(std::span<const double> series, double bandwidth_exponent = 0.5);

enum class MemoryClass { short_memory, long_memory, unknown };

std::string to_string(MemoryClass c);
MemoryClass classify_scheme(const CoefficientScheme& scheme);
// Advisory text for schemes the classification labels long although their
// coefficients are summable (power law with beta >= 1).
std::optional<std::string> classification_note(const CoefficientScheme& scheme);

struct MemoryReport {
    double hurst;
    double gph_d;
    double gph_standard_error;
    std::size_t gph_bandwidth;
    std::optional<MemoryClass> classification;
};

MemoryReport memory_report(std::span<const double> series, const HurstOptions& options = {},
                           double bandwidth_exponent = 0.5);

}  // namespace taildep
