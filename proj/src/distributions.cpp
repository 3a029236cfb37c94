#include "taildep/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "taildep/numeric.hpp"

namespace taildep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kIterationCap = 200;
constexpr double kGradientTolerance = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void require_support(bool ok, std::string_view family) {
    if (!ok) throw DataError("observation outside the support of the " + std::string(family) + " family");
}

// ---- Pareto -------------------------------------------------------------

FitResult fit_pareto(std::span<const double> x) {
    const double lo = *std::min_element(x.begin(), x.end());
    require_support(lo > 0.0, "Pareto");
    double s = 0.0;
    for (double v : x) s += std::log(v / lo);
    if (s <= 0.0) throw DegenerateError("Pareto fit on a constant sample");
    return make_fit_result(Pareto{static_cast<double>(x.size()) / s, lo}, x);
}

// ---- Weibull --------------------------------------------------------------

struct WeibullProfile {
    std::vector<double> log_y;  // log of data scaled by the geometric mean
    double log_y_max;
    double mean_log_y;

    // Profile score in the shape k (root = MLE) and its derivative.
    void eval(double k, double& g, double& dg) const {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (double ly : log_y) {
            const double w = std::exp(k * (ly - log_y_max));
            s0 += w;
            s1 += w * ly;
            s2 += w * ly * ly;
        }
        const double m1 = s1 / s0;
        g = m1 - 1.0 / k - mean_log_y;
        dg = s2 / s0 - m1 * m1 + 1.0 / (k * k);
    }

    double scale_for(double k) const {
        double s0 = 0.0;
        for (double ly : log_y) s0 += std::exp(k * (ly - log_y_max));
        return std::exp(log_y_max + std::log(s0 / static_cast<double>(log_y.size())) / k);
    }
};

// Returns (shape, scale) maximizing the Weibull likelihood of positive data.
std::pair<double, double> weibull_mle(std::span<const double> x) {
    WeibullProfile prof;
    prof.log_y.reserve(x.size());
    double mean_log = 0.0;
    for (double v : x) {
        require_support(v > 0.0, "Weibull");
        mean_log += std::log(v);
    }
    mean_log /= static_cast<double>(x.size());
    for (double v : x) prof.log_y.push_back(std::log(v) - mean_log);
    prof.log_y_max = *std::max_element(prof.log_y.begin(), prof.log_y.end());
    prof.mean_log_y = 0.0;
    for (double ly : prof.log_y) prof.mean_log_y += ly;
    prof.mean_log_y /= static_cast<double>(x.size());
    if (prof.log_y_max <= 1e-300) throw DegenerateError("Weibull fit on a constant sample");

    double lo = 1e-3, hi = 1.0, g = 0.0, dg = 0.0;
    prof.eval(lo, g, dg);
    for (int i = 0; g > 0.0 && i < 60; ++i) {
        lo *= 0.5;
        prof.eval(lo, g, dg);
    }
    prof.eval(hi, g, dg);
    for (int i = 0; g < 0.0 && i < 60; ++i) {
        lo = hi;
        hi *= 2.0;
        prof.eval(hi, g, dg);
    }
    double k = 0.5 * (lo + hi);
    for (int it = 0; it < kIterationCap; ++it) {
        prof.eval(k, g, dg);
        if (std::abs(g) < kGradientTolerance * 1e-2) {
            const double scale = std::exp(mean_log) * prof.scale_for(k);
            return {k, scale};
        }
        if (g > 0.0) hi = k; else lo = k;
        double next = k - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo < 1e-14 * hi) {
            const double scale = std::exp(mean_log) * prof.scale_for(next);
            return {next, scale};
        }
        k = next;
    }
    throw OptimizationFailure("Weibull likelihood iteration did not converge",
                              Weibull{k, std::exp(mean_log) * prof.scale_for(k)});
}

FitResult fit_weibull(std::span<const double> x) {
    const auto [k, lambda] = weibull_mle(x);
    return make_fit_result(Weibull{k, lambda}, x);
}

// ---- Cauchy -------------------------------------------------------------

FitResult fit_cauchy(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double theta = quantile(x, 0.5);
    double iqr = quantile(x, 0.75) - quantile(x, 0.25);
    if (!(iqr > 0.0)) {
        double spread = 0.0;
        for (double v : x) spread = std::max(spread, std::abs(v - theta));
        if (!(spread > 0.0)) throw DegenerateError("Cauchy fit on a constant sample");
        iqr = spread;
    }
    double s = std::log(0.5 * iqr);

    auto loglik = [&](double th, double ls) {
        const double g = std::exp(ls);
        double ll = 0.0;
        for (double v : x) {
            const double z = (v - th) / g;
            ll -= std::log1p(z * z);
        }
        return ll - n * (ls + std::log(std::numbers::pi));
    };

    double current = loglik(theta, s);
    for (int it = 0; it < kIterationCap; ++it) {
        const double gamma = std::exp(s);
        double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
        for (double v : x) {
            const double z = (v - theta) / gamma;
            const double w = 1.0 + z * z;
            a += z / w;
            b += (z * z - 1.0) / w;
            c += (1.0 - z * z) / (w * w);
            d += z * z / (w * w);
            e += z / (w * w);
        }
        // Gradient and Hessian in (theta, log gamma).
        const double g_t = 2.0 * a / gamma;
        const double g_s = b;
        if (std::abs(g_t * gamma) / n < kGradientTolerance && std::abs(g_s) / n < kGradientTolerance)
            return make_fit_result(Cauchy{theta, gamma}, x);
        const double h_tt = -2.0 * c / (gamma * gamma);
        const double h_ss = -4.0 * d;
        const double h_ts = -4.0 * e / gamma;
        const double det = h_tt * h_ss - h_ts * h_ts;
        double step_t, step_s;
        if (h_tt < 0.0 && det > 0.0) {
            step_t = -(h_ss * g_t - h_ts * g_s) / det;
            step_s = -(-h_ts * g_t + h_tt * g_s) / det;
        } else {
            // Not locally concave: scaled gradient ascent.
            step_t = g_t * gamma * gamma / n;
            step_s = g_s / n;
        }
        double t = 1.0;
        bool improved = false;
        for (int half = 0; half < 60; ++half, t *= 0.5) {
            const double cand = loglik(theta + t * step_t, s + t * step_s);
            if (cand >= current) {
                theta += t * step_t;
                s += t * step_s;
                current = cand;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    throw OptimizationFailure("Cauchy likelihood iteration did not converge", Cauchy{theta, std::exp(s)});
}

// ---- Frechet --------------------------------------------------------------

// Profile log-likelihood at a given location: 1/(x - location) is Weibull.
double frechet_profile(std::span<const double> x, double location, double& shape, double& scale) {
    std::vector<double> v;
    v.reserve(x.size());
    for (double xi : x) v.push_back(1.0 / (xi - location));
    const auto [k, lambda] = weibull_mle(v);
    shape = k;
    scale = 1.0 / lambda;
    return log_likelihood(Frechet{location, shape, scale}, x);
}

FitResult fit_frechet(std::span<const double> x) {
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double spread = *hi_it - lo;
    if (!(spread > 0.0)) throw DegenerateError("Frechet fit on a constant sample");

    double shape = 0.0, scale = 0.0;
    auto profile_at = [&](double t) {
        double k = 0.0, s = 0.0;
        return frechet_profile(x, lo - spread * std::exp(t), k, s);
    };
    // Coarse grid over the log gap between the location and the sample minimum,
    // then golden-section refinement around the best grid point.
    const double t_lo = std::log(1e-6), t_hi = std::log(1e3);
    constexpr int grid = 48;
    int best = 0;
    double best_ll = -kInf;
    for (int i = 0; i <= grid; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / grid;
        double ll = -kInf;
        try {
            ll = profile_at(t);
        } catch (const Error&) {
        }
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    if (!std::isfinite(best_ll)) throw OptimizationFailure("Frechet profile likelihood is not finite", Frechet{lo - spread, 1.0, spread});
    const double h = (t_hi - t_lo) / grid;
    double a = t_lo + h * std::max(best - 1, 0);
    double b = t_lo + h * std::min(best + 1, grid);
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = profile_at(c), fd = profile_at(d);
    for (int it = 0; it < kIterationCap && b - a > 1e-10; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - r * (b - a); fc = profile_at(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + r * (b - a); fd = profile_at(d);
        }
    }
    const double location = lo - spread * std::exp(0.5 * (a + b));
    frechet_profile(x, location, shape, scale);
    return make_fit_result(Frechet{location, shape, scale}, x);
}

}  // namespace

Family family_of(const DistributionSpec& spec) { return static_cast<Family>(spec.index()); }

std::string_view family_name(Family family) {
    switch (family) {
        case Family::pareto: return "pareto";
        case Family::cauchy: return "cauchy";
        case Family::weibull: return "weibull";
        case Family::frechet: return "frechet";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    const std::string n = lower(trim(name));
    if (n == "pareto" || n == "p") return Family::pareto;
    if (n == "cauchy" || n == "c") return Family::cauchy;
    if (n == "weibull" || n == "w") return Family::weibull;
    if (n == "frechet" || n == "f") return Family::frechet;
    throw ConfigurationError("unknown distribution family '" + std::string(name) + "'");
}

std::size_t parameter_count(Family family) { return family == Family::frechet ? 3 : 2; }

void validate(const DistributionSpec& spec) {
    std::visit(overloaded{
                   [](const Pareto& d) {
                       if (!positive(d.shape) || !positive(d.scale))
                           throw ParameterDomainError("Pareto shape and scale must be positive");
                   },
                   [](const Cauchy& d) {
                       if (!std::isfinite(d.location) || !positive(d.scale))
                           throw ParameterDomainError("Cauchy scale must be positive, location finite");
                   },
                   [](const Weibull& d) {
                       if (!positive(d.shape) || !positive(d.scale))
                           throw ParameterDomainError("Weibull shape and scale must be positive");
                   },
                   [](const Frechet& d) {
                       if (!std::isfinite(d.location) || !positive(d.shape) || !positive(d.scale))
                           throw ParameterDomainError("Frechet shape and scale must be positive, location finite");
                   },
               },
               spec);
}

std::string to_string(const DistributionSpec& spec) {
    return std::visit(overloaded{
                          [](const Pareto& d) {
                              return "pareto(" + format_number(d.shape) + "," + format_number(d.scale) + ")";
                          },
                          [](const Cauchy& d) {
                              return "cauchy(" + format_number(d.location) + "," + format_number(d.scale) + ")";
                          },
                          [](const Weibull& d) {
                              return "weibull(" + format_number(d.shape) + "," + format_number(d.scale) + ")";
                          },
                          [](const Frechet& d) {
                              return "frechet(" + format_number(d.location) + "," + format_number(d.shape) + "," +
                                     format_number(d.scale) + ")";
                          },
                      },
                      spec);
}

DistributionSpec parse_spec(std::string_view text) {
    const std::string_view t = trim(text);
    const auto open = t.find('(');
    if (open == std::string_view::npos || t.back() != ')')
        throw ConfigurationError("distribution must look like family(a,b): '" + std::string(text) + "'");
    const Family family = parse_family(t.substr(0, open));
    std::vector<double> args;
    std::string_view rest = t.substr(open + 1, t.size() - open - 2);
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view tok = trim(rest.substr(0, comma));
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ConfigurationError("bad numeric parameter in '" + std::string(text) + "'");
        args.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (args.size() != parameter_count(family))
        throw ConfigurationError("wrong number of parameters in '" + std::string(text) + "'");
    DistributionSpec spec = [&]() -> DistributionSpec {
        switch (family) {
            case Family::pareto: return Pareto{args[0], args[1]};
            case Family::cauchy: return Cauchy{args[0], args[1]};
            case Family::weibull: return Weibull{args[0], args[1]};
            case Family::frechet: return Frechet{args[0], args[1], args[2]};
        }
        throw ConfigurationError("unreachable family");
    }();
    validate(spec);
    return spec;
}

BalanceWeights BalanceWeights::upper(double p) {
    BalanceWeights b{p, 1.0 - p};
    validate(b);
    return b;
}

void validate(const BalanceWeights& balance) {
    if (!(balance.p >= 0.0 && balance.p <= 1.0 && balance.q >= 0.0 && balance.q <= 1.0) ||
        std::abs(balance.p + balance.q - 1.0) > 1e-12)
        throw ParameterDomainError("balance weights must lie in [0,1] and sum to 1");
}

double survival(const DistributionSpec& spec, double x) {
    validate(spec);
    return std::visit(overloaded{
                          [x](const Pareto& d) { return x <= d.scale ? 1.0 : std::pow(d.scale / x, d.shape); },
                          [x](const Cauchy& d) {
                              const double z = (x - d.location) / d.scale;
                              if (z > 0.0) return std::atan(1.0 / z) / std::numbers::pi;
                              return 0.5 - std::atan(z) / std::numbers::pi;
                          },
                          [x](const Weibull& d) { return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / d.scale, d.shape)); },
                          [x](const Frechet& d) {
                              const double y = (x - d.location) / d.scale;
                              return y <= 0.0 ? 1.0 : -std::expm1(-std::pow(y, -d.shape));
                          },
                      },
                      spec);
}

double cdf(const DistributionSpec& spec, double x) {
    validate(spec);
    return std::visit(overloaded{
                          [x](const Pareto& d) {
                              return x <= d.scale ? 0.0 : -std::expm1(d.shape * std::log(d.scale / x));
                          },
                          [x](const Cauchy& d) {
                              const double z = (x - d.location) / d.scale;
                              if (z < 0.0) return std::atan(-1.0 / z) / std::numbers::pi;
                              return 0.5 + std::atan(z) / std::numbers::pi;
                          },
                          [x](const Weibull& d) { return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / d.scale, d.shape)); },
                          [x](const Frechet& d) {
                              const double y = (x - d.location) / d.scale;
                              return y <= 0.0 ? 0.0 : std::exp(-std::pow(y, -d.shape));
                          },
                      },
                      spec);
}

double quantile(const DistributionSpec& spec, double p) {
    validate(spec);
    if (!(p > 0.0 && p < 1.0)) throw ParameterDomainError("quantile level must lie in (0,1)");
    return std::visit(overloaded{
                          [p](const Pareto& d) { return d.scale * std::exp(-std::log1p(-p) / d.shape); },
                          [p](const Cauchy& d) { return d.location + d.scale * std::tan(std::numbers::pi * (p - 0.5)); },
                          [p](const Weibull& d) { return d.scale * std::pow(-std::log1p(-p), 1.0 / d.shape); },
                          [p](const Frechet& d) { return d.location + d.scale * std::pow(-std::log(p), -1.0 / d.shape); },
                      },
                      spec);
}

double log_pdf(const DistributionSpec& spec, double x) {
    return std::visit(overloaded{
                          [x](const Pareto& d) {
                              if (x < d.scale) return -kInf;
                              return std::log(d.shape) + d.shape * std::log(d.scale) - (d.shape + 1.0) * std::log(x);
                          },
                          [x](const Cauchy& d) {
                              const double z = (x - d.location) / d.scale;
                              return -std::log(std::numbers::pi) - std::log(d.scale) - std::log1p(z * z);
                          },
                          [x](const Weibull& d) {
                              if (x < 0.0) return -kInf;
                              const double y = x / d.scale;
                              return std::log(d.shape / d.scale) + (d.shape - 1.0) * std::log(y) - std::pow(y, d.shape);
                          },
                          [x](const Frechet& d) {
                              const double y = (x - d.location) / d.scale;
                              if (y <= 0.0) return -kInf;
                              return std::log(d.shape / d.scale) - (1.0 + d.shape) * std::log(y) - std::pow(y, -d.shape);
                          },
                      },
                      spec);
}

double log_likelihood(const DistributionSpec& spec, std::span<const double> sample) {
    validate(spec);
    double ll = 0.0;
    for (double v : sample) ll += log_pdf(spec, v);
    return ll;
}

std::optional<double> tail_index(const DistributionSpec& spec) {
    return std::visit(overloaded{
                          [](const Pareto& d) -> std::optional<double> { return d.shape; },
                          [](const Cauchy&) -> std::optional<double> { return 1.0; },
                          [](const Weibull&) -> std::optional<double> { return std::nullopt; },
                          [](const Frechet& d) -> std::optional<double> { return d.shape; },
                      },
                      spec);
}

double draw(const DistributionSpec& spec, Rng& rng) { return quantile(spec, rng.uniform()); }

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, Rng& rng) {
    validate(spec);
    if (n < 1) throw ParameterDomainError("sample size must be positive");
    std::vector<double> out(n);
    for (auto& v : out) v = draw(spec, rng);
    return out;
}

FitResult make_fit_result(const DistributionSpec& spec, std::span<const double> sample) {
    const double ll = log_likelihood(spec, sample);
    const double k = static_cast<double>(parameter_count(family_of(spec)));
    const double n = static_cast<double>(sample.size());
    return FitResult{spec, ll, 2.0 * k - 2.0 * ll, k * std::log(n) - 2.0 * ll, sample.size()};
}

FitResult fit_mle(std::span<const double> sample, Family family) {
    if (sample.size() < 10) throw InsufficientDataError("maximum likelihood fitting needs at least 10 observations");
    for (double v : sample)
        if (!std::isfinite(v)) throw DataError("non-finite observation in fitting sample");
    switch (family) {
        case Family::pareto: return fit_pareto(sample);
        case Family::cauchy: return fit_cauchy(sample);
        case Family::weibull: return fit_weibull(sample);
        case Family::frechet: return fit_frechet(sample);
    }
    throw ConfigurationError("unknown family");
}

}  // namespace taildep
