#include "taildep/structure_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "taildep/errors.hpp"
#include "taildep/numeric.hpp"
#include "taildep/rng.hpp"

namespace taildep {

namespace {

// Greatest convex minorant / least concave majorant iteration on sorted data,
// 1-based as in the published algorithm. Returns the dip times 2n.
double dip_sorted(const std::vector<double>& xs) {
    const long n = static_cast<long>(xs.size());
    std::vector<double> x(static_cast<std::size_t>(n + 1));
    std::copy(xs.begin(), xs.end(), x.begin() + 1);
    if (n < 2 || x[1] == x[static_cast<std::size_t>(n)]) return 1.0;

    std::vector<long> mn(static_cast<std::size_t>(n + 1)), mj(static_cast<std::size_t>(n + 1));
    std::vector<long> gcm(static_cast<std::size_t>(n + 2)), lcm(static_cast<std::size_t>(n + 2));
    auto X = [&](long i) { return x[static_cast<std::size_t>(i)]; };

    mn[1] = 1;
    for (long j = 2; j <= n; ++j) {
        mn[j] = j - 1;
        for (;;) {
            const long a = mn[j], b = mn[a];
            if (a == 1 || (X(j) - X(a)) * static_cast<double>(a - b) < (X(a) - X(b)) * static_cast<double>(j - a)) break;
            mn[j] = b;
        }
    }
    mj[n] = n;
    for (long k = n - 1; k >= 1; --k) {
        mj[k] = k + 1;
        for (;;) {
            const long a = mj[k], b = mj[a];
            if (a == n || (X(k) - X(a)) * static_cast<double>(a - b) < (X(a) - X(b)) * static_cast<double>(k - a)) break;
            mj[k] = b;
        }
    }

    long low = 1, high = n;
    double dip = 1.0;
    for (;;) {
        long i = 1;
        gcm[1] = high;
        while (gcm[i] > low) {
            gcm[i + 1] = mn[gcm[i]];
            ++i;
        }
        long ig = i;
        const long l_gcm = i;
        long ix = ig - 1;

        i = 1;
        lcm[1] = low;
        while (lcm[i] < high) {
            lcm[i + 1] = mj[lcm[i]];
            ++i;
        }
        long ih = i;
        const long l_lcm = i;
        long iv = 2;

        double d = 0.0;
        if (l_gcm != 2 || l_lcm != 2) {
            for (;;) {
                const long gx = gcm[ix], lv = lcm[iv];
                if (gx > lv) {
                    const long g1 = gcm[ix + 1];
                    const double dx = static_cast<double>(lv - g1 + 1) -
                                      (X(lv) - X(g1)) * static_cast<double>(gx - g1) / (X(gx) - X(g1));
                    ++iv;
                    if (dx >= d) {
                        d = dx;
                        ig = ix + 1;
                        ih = iv - 1;
                    }
                } else {
                    const long l1 = lcm[iv - 1];
                    const double dx = (X(gx) - X(l1)) * static_cast<double>(lv - l1) / (X(lv) - X(l1)) -
                                      static_cast<double>(gx - l1 - 1);
                    --ix;
                    if (dx >= d) {
                        d = dx;
                        ig = ix + 1;
                        ih = iv;
                    }
                }
                if (ix < 1) ix = 1;
                if (iv > l_lcm) iv = l_lcm;
                if (gcm[ix] == lcm[iv]) break;
            }
        } else {
            d = 1.0;
        }
        if (d < dip) break;

        double dip_l = 0.0;
        for (long j = ig; j < l_gcm; ++j) {
            double max_t = 1.0;
            const long jb = gcm[j + 1], je = gcm[j];
            if (je - jb > 1 && X(je) != X(jb)) {
                const double c = static_cast<double>(je - jb) / (X(je) - X(jb));
                for (long jj = jb; jj <= je; ++jj) {
                    const double t = static_cast<double>(jj - jb + 1) - (X(jj) - X(jb)) * c;
                    max_t = std::max(max_t, t);
                }
            }
            dip_l = std::max(dip_l, max_t);
        }
        double dip_u = 0.0;
        for (long j = ih; j < l_lcm; ++j) {
            double max_t = 1.0;
            const long jb = lcm[j], je = lcm[j + 1];
            if (je - jb > 1 && X(je) != X(jb)) {
                const double c = static_cast<double>(je - jb) / (X(je) - X(jb));
                for (long jj = jb; jj <= je; ++jj) {
                    const double t = (X(jj) - X(jb)) * c - static_cast<double>(jj - jb - 1);
                    max_t = std::max(max_t, t);
                }
            }
            dip_u = std::max(dip_u, max_t);
        }
        dip = std::max(dip, std::max(dip_u, dip_l));
        if (low == gcm[ig] && high == lcm[ih]) break;
        low = gcm[ig];
        high = lcm[ih];
    }
    return dip;
}

struct SplitCandidate {
    std::size_t begin = 0, end = 0;
    std::size_t location = 0;
    double statistic = 0.0;
    double p_value = 1.0;
    bool valid = false;
};

// Best KS split of series[begin, end) with at least min_segment points a side.
SplitCandidate best_split(std::span<const double> series, std::size_t begin, std::size_t end, std::size_t min_segment) {
    SplitCandidate best;
    best.begin = begin;
    best.end = end;
    const std::size_t len = end - begin;
    if (len < 2 * min_segment) return best;
    std::vector<std::size_t> order(len);
    std::iota(order.begin(), order.end(), begin);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });

    for (std::size_t s = begin + min_segment; s + min_segment <= end; ++s) {
        const double n1 = static_cast<double>(s - begin);
        const double n2 = static_cast<double>(end - s);
        std::size_t c1 = 0, c2 = 0;
        double d = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            if (order[k] < s) ++c1; else ++c2;
            // Compare the two CDFs only after the last of a run of ties.
            if (k + 1 < len && series[order[k + 1]] == series[order[k]]) continue;
            d = std::max(d, std::abs(static_cast<double>(c1) / n1 - static_cast<double>(c2) / n2));
        }
        const double stat = std::sqrt(n1 * n2 / (n1 + n2)) * d;
        if (!best.valid || stat > best.statistic) {
            best.statistic = stat;
            best.location = s;
            best.valid = true;
        }
    }
    const double candidates = static_cast<double>(len - 2 * min_segment + 1);
    best.p_value = std::min(1.0, kolmogorov_survival(best.statistic) * candidates);
    return best;
}

}  // namespace

double dip_statistic(std::span<const double> sample) {
    if (sample.size() < 4) throw InsufficientDataError("dip statistic needs at least 4 observations");
    std::vector<double> sorted(sample.begin(), sample.end());
    for (double v : sorted)
        if (!std::isfinite(v)) throw DataError("non-finite observation in dip sample");
    std::sort(sorted.begin(), sorted.end());
    return dip_sorted(sorted) / (2.0 * static_cast<double>(sorted.size()));
}

DipResult dip_test(std::span<const double> sample, std::size_t n_bootstrap, std::uint64_t seed) {
    if (n_bootstrap < 1) throw ParameterDomainError("bootstrap size must be positive");
    const double observed = dip_statistic(sample);
    const std::size_t n = sample.size();
    std::vector<char> exceeds(n_bootstrap, 0);
    parallel_for(n_bootstrap, [&](std::size_t r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<double> u(n);
        for (auto& v : u) v = rng.uniform();
        std::sort(u.begin(), u.end());
        exceeds[r] = dip_sorted(u) / (2.0 * static_cast<double>(n)) > observed;
    });
    const auto count = static_cast<double>(std::count(exceeds.begin(), exceeds.end(), 1));
    return DipResult{observed, count / static_cast<double>(n_bootstrap), n_bootstrap};
}

std::vector<std::pair<std::size_t, std::size_t>> ChangePointResult::segments(std::size_t n) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t loc : locations) {
        out.emplace_back(start, loc);
        start = loc;
    }
    out.emplace_back(start, n);
    return out;
}

ChangePointResult detect_changepoints(std::span<const double> series, const ChangePointOptions& options) {
    if (options.min_segment < 1) throw ParameterDomainError("minimum segment length must be positive");
    if (options.max_changepoints < 1) throw ParameterDomainError("maximum number of change points must be positive");
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw ParameterDomainError("significance level must lie in (0,1)");
    if (series.size() < 2 * options.min_segment)
        throw InsufficientDataError("series shorter than twice the minimum segment length");
    for (double v : series)
        if (!std::isfinite(v)) throw DataError("non-finite value in change-point series");

    ChangePointResult result;
    std::vector<SplitCandidate> open{best_split(series, 0, series.size(), options.min_segment)};
    while (result.discovery_order.size() < options.max_changepoints) {
        auto pick = open.end();
        for (auto it = open.begin(); it != open.end(); ++it) {
            if (!it->valid) continue;
            if (pick == open.end() || it->p_value < pick->p_value ||
                (it->p_value == pick->p_value && it->statistic > pick->statistic))
                pick = it;
        }
        if (pick == open.end() || !(pick->p_value < options.alpha)) break;
        const SplitCandidate chosen = *pick;
        open.erase(pick);
        result.discovery_order.push_back(chosen.location);
        result.statistic_per_split.push_back(chosen.statistic);
        result.p_value_per_split.push_back(chosen.p_value);
        open.push_back(best_split(series, chosen.begin, chosen.location, options.min_segment));
        open.push_back(best_split(series, chosen.location, chosen.end, options.min_segment));
    }
    result.locations = result.discovery_order;
    std::sort(result.locations.begin(), result.locations.end());
    result.n_segments = result.locations.size() + 1;
    return result;
}

}  // namespace taildep
