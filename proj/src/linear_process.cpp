#include "taildep/linear_process.hpp"

#include <charconv>
#include <cmath>

namespace taildep {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::size_t truncation_of(const CoupledProcessConfig& config, const CoefficientScheme& scheme) {
    return config.truncation_order.value_or(default_truncation(scheme));
}

std::size_t stream_truncation(const CoupledProcessConfig& config) {
    return std::max(truncation_of(config, config.a_scheme), truncation_of(config, config.b_scheme));
}

void check_plan(const InnovationPlan& plan, std::size_t needed, const char* which) {
    if (const auto* p = std::get_if<PerIndexPlan>(&plan)) {
        if (p->specs.empty()) throw ConfigurationError(std::string(which) + ": per-index plan is empty");
        if (p->specs.size() < needed)
            throw ConfigurationError(std::string(which) + ": per-index plan has " + std::to_string(p->specs.size()) +
                                     " laws but the window needs " + std::to_string(needed));
        for (const auto& s : p->specs) validate(s);
    } else {
        validate(std::get<IidPlan>(plan).spec);
    }
}

// Draws for times lo..hi: times >= 1 come from `name`, earlier times from a
// separate stream walked backwards, so lengthening the pre-sample keeps the
// draws already made.
std::vector<double> draw_timeline(const InnovationPlan& plan, long lo, long hi, std::uint64_t seed,
                                  const std::string& name) {
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
    Rng forward = Rng::substream(seed, name);
    for (long t = std::max(lo, 1L); t <= hi; ++t) out[static_cast<std::size_t>(t - lo)] = draw(law_of(plan, t), forward);
    Rng backward = Rng::substream(seed, name + ".presample");
    for (long t = std::min(hi, 0L); t >= lo; --t) out[static_cast<std::size_t>(t - lo)] = draw(law_of(plan, t), backward);
    return out;
}

}  // namespace

void validate(const CoefficientScheme& scheme) {
    std::visit(overloaded{
                   [](const Exponential& s) {
                       if (!(std::abs(s.phi) < 1.0)) throw ParameterDomainError("exponential scheme needs |phi| < 1");
                   },
                   [](const PowerLaw& s) {
                       if (!(s.beta > 0.0) || !std::isfinite(s.beta))
                           throw ParameterDomainError("power-law scheme needs beta > 0");
                   },
                   [](const Explicit& s) {
                       if (s.values.empty()) throw ParameterDomainError("explicit scheme needs at least one coefficient");
                       for (double v : s.values)
                           if (!std::isfinite(v)) throw ParameterDomainError("explicit coefficients must be finite");
                   },
               },
               scheme);
}

std::string to_string(const CoefficientScheme& scheme) {
    return std::visit(overloaded{
                          [](const Exponential& s) { return "exponential(" + format_number(s.phi) + ")"; },
                          [](const PowerLaw& s) { return "power_law(" + format_number(s.beta) + ")"; },
                          [](const Explicit& s) {
                              std::string out = "explicit(";
                              for (std::size_t i = 0; i < s.values.size(); ++i)
                                  out += (i ? "," : "") + format_number(s.values[i]);
                              return out + ")";
                          },
                      },
                      scheme);
}

double coefficient_at(const CoefficientScheme& scheme, long j, NegativeIndexPolicy policy) {
    if (j < 0 && policy == NegativeIndexPolicy::zero) return 0.0;
    return std::visit(overloaded{
                          [j](const Exponential& s) { return std::pow(s.phi, static_cast<double>(j)); },
                          [j](const PowerLaw& s) {
                              if (j == 0) return 1.0;
                              return std::pow(static_cast<double>(std::labs(j)), -s.beta);
                          },
                          [j](const Explicit& s) {
                              if (j < 0 || static_cast<std::size_t>(j) >= s.values.size()) return 0.0;
                              return s.values[static_cast<std::size_t>(j)];
                          },
                      },
                      scheme);
}

std::vector<double> coefficients(const CoefficientScheme& scheme, std::size_t count) {
    validate(scheme);
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = coefficient_at(scheme, static_cast<long>(j));
    return out;
}

std::size_t default_truncation(const CoefficientScheme& scheme) {
    return std::visit(overloaded{
                          [](const Exponential&) -> std::size_t { return 200; },
                          [](const PowerLaw&) -> std::size_t { return 2000; },
                          [](const Explicit& s) -> std::size_t { return s.values.size(); },
                      },
                      scheme);
}

PerIndexPlan pareto_schedule(std::size_t count) {
    PerIndexPlan plan;
    for (std::size_t m = 1; m <= count; ++m) plan.specs.push_back(Pareto{static_cast<double>(count - m + 1), 1.0});
    return plan;
}

PerIndexPlan cauchy_schedule(std::size_t count) {
    PerIndexPlan plan;
    for (std::size_t m = 1; m <= count; ++m) plan.specs.push_back(Cauchy{0.0, static_cast<double>(count - m + 1)});
    return plan;
}

std::string to_string(const InnovationPlan& plan) {
    if (const auto* iid = std::get_if<IidPlan>(&plan)) return to_string(iid->spec);
    std::string out = "per_index[";
    const auto& specs = std::get<PerIndexPlan>(plan).specs;
    for (std::size_t i = 0; i < specs.size(); ++i) out += (i ? ";" : "") + to_string(specs[i]);
    return out + "]";
}

const DistributionSpec& law_of(const InnovationPlan& plan, long index) {
    if (const auto* iid = std::get_if<IidPlan>(&plan)) return iid->spec;
    const auto& specs = std::get<PerIndexPlan>(plan).specs;
    const long k = static_cast<long>(specs.size());
    return specs[static_cast<std::size_t>(((index - 1) % k + k) % k)];
}

void validate(const CoupledProcessConfig& config) {
    validate(config.a_scheme);
    validate(config.b_scheme);
    validate(config.perturbation);
    if (config.horizon < 1) throw ConfigurationError("horizon must be at least 1");
    if (config.truncation_order && *config.truncation_order < 1)
        throw ConfigurationError("truncation order must be at least 1");
    if (config.window) {
        const Window& w = *config.window;
        if (w.width < 1) throw ConfigurationError("window width must be at least 1");
        if (w.index < 0) throw ConfigurationError("window index must be non-negative");
        check_plan(config.innovations_x, static_cast<std::size_t>(w.width), "x innovations");
        check_plan(config.innovations_y, static_cast<std::size_t>(w.width), "y innovations");
    } else {
        check_plan(config.innovations_x, 1, "x innovations");
        check_plan(config.innovations_y, 1, "y innovations");
        if (config.coupled_lag >= stream_truncation(config))
            throw ConfigurationError("coupled lag must be below the truncation order");
    }
}

InnovationDraws draw_innovations(const CoupledProcessConfig& config) {
    validate(config);
    InnovationDraws d;
    const long n = static_cast<long>(config.horizon);
    if (config.window) {
        const long width = config.window->width;
        d.x.resize(static_cast<std::size_t>(n * width));
        d.y.resize(d.x.size());
        d.shared.resize(static_cast<std::size_t>(n));
        Rng rx = Rng::substream(config.seed, "x-innovations");
        Rng ry = Rng::substream(config.seed, "y-innovations");
        Rng rp = Rng::substream(config.seed, "perturbation");
        for (long r = 0; r < n; ++r) {
            for (long m = 1; m <= width; ++m) {
                d.x[static_cast<std::size_t>(r * width + m - 1)] = draw(law_of(config.innovations_x, m), rx);
                d.y[static_cast<std::size_t>(r * width + m - 1)] = draw(law_of(config.innovations_y, m), ry);
            }
            d.shared[static_cast<std::size_t>(r)] = draw(config.perturbation, rp);
        }
        return d;
    }
    const long J = static_cast<long>(stream_truncation(config));
    const long c = static_cast<long>(config.coupled_lag);
    d.first_time = 2 - J;
    d.shared_first_time = 1 - c;
    d.x = draw_timeline(config.innovations_x, d.first_time, n, config.seed, "x-innovations");
    d.y = draw_timeline(config.innovations_y, d.first_time, n, config.seed, "y-innovations");
    d.shared = draw_timeline(IidPlan{config.perturbation}, d.shared_first_time, n - c, config.seed, "perturbation");
    return d;
}

CoupledSeries assemble(const CoupledProcessConfig& config, const InnovationDraws& d) {
    validate(config);
    const std::size_t n = config.horizon;
    CoupledSeries out;
    out.x_star.resize(n);
    out.y_star.resize(n);
    out.shared_perturbation_draws.resize(n);
    if (config.window) {
        const Window& w = *config.window;
        const long i = w.index;
        const std::size_t width = static_cast<std::size_t>(w.width);
        if (d.x.size() != n * width || d.y.size() != n * width || d.shared.size() != n)
            throw ShapeError("innovation draws do not match the window configuration");
        std::vector<double> a, b;
        for (long j = i - w.width; j <= i - 1; ++j) {
            a.push_back(coefficient_at(config.a_scheme, j, w.policy));
            b.push_back(coefficient_at(config.b_scheme, j, w.policy));
        }
        const double a_i = coefficient_at(config.a_scheme, i, w.policy);
        const double b_i = coefficient_at(config.b_scheme, i, w.policy);
        for (std::size_t r = 0; r < n; ++r) {
            const double* ex = &d.x[r * width];
            const double* ey = &d.y[r * width];
            double sx = 0.0, sy = 0.0;
            for (std::size_t k = 0; k < width; ++k) {
                // j = i - width + k draws innovation index i - j = width - k.
                sx += a[k] * ex[width - k - 1];
                sy += b[k] * ey[width - k - 1];
            }
            out.x_star[r] = sx + a_i * d.shared[r];
            out.y_star[r] = sy + b_i * d.shared[r];
            out.shared_perturbation_draws[r] = d.shared[r];
        }
        return out;
    }

    const std::size_t J = stream_truncation(config);
    const std::size_t c = config.coupled_lag;
    const std::vector<double> a = coefficients(config.a_scheme, truncation_of(config, config.a_scheme));
    const std::vector<double> b = coefficients(config.b_scheme, truncation_of(config, config.b_scheme));
    const long first = d.first_time;
    if (first != 2 - static_cast<long>(J) || d.x.size() != n + J - 1 || d.y.size() != n + J - 1 ||
        d.shared.size() != n)
        throw ShapeError("innovation draws do not match the stream configuration");
    auto convolve = [&](const std::vector<double>& coef, const std::vector<double>& e, std::vector<double>& dst) {
        for (std::size_t t = 1; t <= n; ++t) {
            const double shared = d.shared[t - 1];  // e*_{t-c}
            double s = 0.0;
            for (std::size_t j = 0; j < coef.size(); ++j) {
                const double v = j == c ? shared : e[static_cast<std::size_t>(static_cast<long>(t - j) - first)];
                s += coef[j] * v;
            }
            dst[t - 1] = s;
        }
    };
    convolve(a, d.x, out.x_star);
    convolve(b, d.y, out.y_star);
    out.shared_perturbation_draws = d.shared;
    return out;
}

CoupledSeries generate_coupled(const CoupledProcessConfig& config) {
    return assemble(config, draw_innovations(config));
}

}  // namespace taildep
