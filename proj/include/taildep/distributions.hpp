#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "taildep/errors.hpp"
#include "taildep/rng.hpp"

namespace taildep {

// Support [scale, inf), survival (scale/x)^shape.
struct Pareto {
    double shape;
    double scale;
};

struct Cauchy {
    double location;
    double scale;
};

// Survival exp(-(x/scale)^shape) on [0, inf).
struct Weibull {
    double shape;
    double scale;
};

// CDF exp(-((x-location)/scale)^(-shape)) on (location, inf).
struct Frechet {
    double location;
    double shape;
    double scale;
};

using DistributionSpec = std::variant<Pareto, Cauchy, Weibull, Frechet>;

enum class Family { pareto, cauchy, weibull, frechet };

Family family_of(const DistributionSpec& spec);
std::string_view family_name(Family family);
Family parse_family(std::string_view name);
std::size_t parameter_count(Family family);

// Throws ParameterDomainError unless every scale/shape is finite and positive.
void validate(const DistributionSpec& spec);

// Compact text form, e.g. "pareto(2.414,1)". parse_spec accepts the same form
// (family names are case-insensitive; "P(3,1)", "C(0,1)", "W(1,1)", "F(0,1,1)"
// abbreviations are also understood).
std::string to_string(const DistributionSpec& spec);
DistributionSpec parse_spec(std::string_view text);

struct BalanceWeights {
    double p = 1.0;
    double q = 0.0;

    static BalanceWeights upper(double p);
};

void validate(const BalanceWeights& balance);

double survival(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);
double quantile(const DistributionSpec& spec, double p);
double log_pdf(const DistributionSpec& spec, double x);
double log_likelihood(const DistributionSpec& spec, std::span<const double> sample);

// Regular-variation exponent at +inf; empty for Weibull.
std::optional<double> tail_index(const DistributionSpec& spec);

double draw(const DistributionSpec& spec, Rng& rng);
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, Rng& rng);

struct FitResult {
    DistributionSpec spec;
    double log_likelihood;
    double aic;
    double bic;
    std::size_t sample_size;
};

class OptimizationFailure : public NumericalError {
public:
    OptimizationFailure(const std::string& what, DistributionSpec last_iterate)
        : NumericalError(what), last_iterate_(last_iterate) {}

    const DistributionSpec& last_iterate() const noexcept { return last_iterate_; }

private:
    DistributionSpec last_iterate_;
};

FitResult make_fit_result(const DistributionSpec& spec, std::span<const double> sample);
FitResult fit_mle(std::span<const double> sample, Family family);

}  // namespace taildep
