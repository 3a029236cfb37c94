#include "taildep/memory_diag.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "taildep/errors.hpp"
#include "taildep/numeric.hpp"

namespace taildep {

double expected_rescaled_range(std::size_t w) {
    if (w < 2) throw ParameterDomainError("rescaled range needs a window of at least 2");
    const double n = static_cast<double>(w);
    double sum = 0.0;
    for (std::size_t i = 1; i < w; ++i) sum += std::sqrt((n - static_cast<double>(i)) / static_cast<double>(i));
    const double lead = w <= 340
                            ? std::exp(std::lgamma((n - 1.0) / 2.0) - std::lgamma(n / 2.0)) / std::sqrt(std::numbers::pi)
                            : 1.0 / std::sqrt(n * std::numbers::pi / 2.0);
    return (n - 0.5) / n * lead * sum;
}

std::vector<std::size_t> hurst_windows(std::size_t n, const HurstOptions& options) {
    const auto max_w = static_cast<std::size_t>(std::floor(options.max_window_fraction * static_cast<double>(n)));
    if (max_w < options.min_window || options.grid_points < 2)
        throw InsufficientDataError("series too short for the rescaled-range window grid");
    std::vector<std::size_t> windows;
    const double lo = std::log(static_cast<double>(options.min_window));
    const double hi = std::log(static_cast<double>(max_w));
    for (std::size_t g = 0; g < options.grid_points; ++g) {
        const double t = lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(options.grid_points - 1);
        const auto w = static_cast<std::size_t>(std::llround(std::exp(t)));
        if (windows.empty() || w != windows.back()) windows.push_back(w);
    }
    return windows;
}

namespace {

// Mean R/S over the disjoint blocks of length w; blocks with zero spread are skipped.
double mean_rescaled_range(std::span<const double> x, std::size_t w) {
    const std::size_t blocks = x.size() / w;
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto block = x.subspan(b * w, w);
        double m = 0.0;
        for (double v : block) m += v;
        m /= static_cast<double>(w);
        double cum = 0.0, hi = 0.0, lo = 0.0, ss = 0.0;
        for (double v : block) {
            const double dv = v - m;
            cum += dv;
            hi = std::max(hi, cum);
            lo = std::min(lo, cum);
            ss += dv * dv;
        }
        const double sd = std::sqrt(ss / static_cast<double>(w));
        if (sd > 0.0) {
            total += (hi - lo) / sd;
            ++used;
        }
    }
    if (used == 0) return std::nan("");
    return total / static_cast<double>(used);
}

}  // namespace

double hurst_rs(std::span<const double> series, const HurstOptions& options) {
    if (series.size() < 64) throw InsufficientDataError("Hurst estimation needs at least 64 observations");
    const auto [mn, mx] = std::minmax_element(series.begin(), series.end());
    if (*mn == *mx) throw DegenerateError("constant series has zero variance");
    std::vector<double> lx, ly;
    for (std::size_t w : hurst_windows(series.size(), options)) {
        const double rs = mean_rescaled_range(series, w);
        if (!(rs > 0.0)) continue;
        double y = std::log(rs);
        if (options.correction == RsCorrection::anis_lloyd) y -= std::log(expected_rescaled_range(w));
        lx.push_back(std::log(static_cast<double>(w)));
        ly.push_back(y);
    }
    if (lx.size() < 2) throw DegenerateError("too few windows with non-zero spread");
    const double slope = least_squares(lx, ly).slope;
    return options.correction == RsCorrection::anis_lloyd ? 0.5 + slope : slope;
}

GphEstimate gph(std::span<const double> series, double bandwidth_exponent) {
    if (!(bandwidth_exponent > 0.0 && bandwidth_exponent < 1.0))
        throw ParameterDomainError("bandwidth exponent must lie in (0,1)");
    const std::size_t n = series.size();
    if (n < 128) throw InsufficientDataError("GPH estimation needs at least 128 observations");
    const auto m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), bandwidth_exponent)));
    if (m < 3 || 2 * m >= n) throw ParameterDomainError("GPH bandwidth outside [3, n/2)");

    const double mu = mean(series);
    std::vector<double> centred(n);
    for (std::size_t t = 0; t < n; ++t) centred[t] = series[t] - mu;

    std::vector<double> lx, ly;
    lx.reserve(m);
    ly.reserve(m);
    const double two_pi_n = 2.0 * std::numbers::pi / static_cast<double>(n);
    std::vector<double> cos_table(n), sin_table(n);
    for (std::size_t k = 0; k < n; ++k) {
        cos_table[k] = std::cos(two_pi_n * static_cast<double>(k));
        sin_table[k] = std::sin(two_pi_n * static_cast<double>(k));
    }
    for (std::size_t j = 1; j <= m; ++j) {
        double re = 0.0, im = 0.0;
        std::size_t phase = 0;  // j * t mod n, kept exact
        for (std::size_t t = 0; t < n; ++t) {
            re += centred[t] * cos_table[phase];
            im -= centred[t] * sin_table[phase];
            phase += j;
            if (phase >= n) phase -= n;
        }
        const double periodogram = (re * re + im * im) / (2.0 * std::numbers::pi * static_cast<double>(n));
        if (!(periodogram > 0.0)) throw DegenerateError("zero periodogram ordinate in the GPH band");
        const double s = std::sin(0.5 * two_pi_n * static_cast<double>(j));
        lx.push_back(std::log(4.0 * s * s));
        ly.push_back(std::log(periodogram));
    }
    const LineFit fit = least_squares(lx, ly);
    return GphEstimate{-fit.slope, std::sqrt(std::numbers::pi * std::numbers::pi / (6.0 * fit.sxx)), m};
}

std::string to_string(MemoryClass c) {
    switch (c) {
        case MemoryClass::short_memory: return "short";
        case MemoryClass::long_memory: return "long";
        case MemoryClass::unknown: return "unknown";
    }
    return "unknown";
}

MemoryClass classify_scheme(const CoefficientScheme& scheme) {
    validate(scheme);
    if (std::holds_alternative<Exponential>(scheme)) return MemoryClass::short_memory;
    if (std::holds_alternative<PowerLaw>(scheme)) return MemoryClass::long_memory;
    const auto& values = std::get<Explicit>(scheme).values;
    std::vector<double> j, lj, lb;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] == 0.0) continue;
        j.push_back(static_cast<double>(k));
        lj.push_back(std::log(static_cast<double>(k)));
        lb.push_back(std::log(std::abs(values[k])));
    }
    // Fewer than three non-zero lags: finite support, nothing to fit.
    if (j.size() < 3) return MemoryClass::short_memory;
    const auto r2 = [](std::span<const double> x, std::span<const double> y) {
        try {
            return least_squares(x, y).r_squared;
        } catch (const DegenerateError&) {
            return 0.0;
        }
    };
    const double r2_exp = r2(j, lb);
    const double r2_pow = r2(lj, lb);
    if (std::max(r2_exp, r2_pow) < 0.9) return MemoryClass::unknown;
    return r2_exp >= r2_pow ? MemoryClass::short_memory : MemoryClass::long_memory;
}

std::optional<std::string> classification_note(const CoefficientScheme& scheme) {
    if (const auto* p = std::get_if<PowerLaw>(&scheme); p && p->beta >= 1.0)
        return "power-law coefficients with beta >= 1 are absolutely summable; labelled long memory by decay form only";
    return std::nullopt;
}

MemoryReport memory_report(std::span<const double> series, const HurstOptions& options, double bandwidth_exponent) {
    const GphEstimate g = gph(series, bandwidth_exponent);
    return MemoryReport{hurst_rs(series, options), g.d, g.standard_error, g.bandwidth, std::nullopt};
}

}  // namespace taildep
