#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "taildep/distributions.hpp"

namespace taildep {

struct Exponential {
    double phi;  // b_j = phi^j, |phi| < 1
};

struct PowerLaw {
    double beta;  // b_j = j^-beta for j >= 1, b_0 = 1
};

struct Explicit {
    std::vector<double> values;  // b_0, b_1, ... ; zero beyond the list
};

using CoefficientScheme = std::variant<Exponential, PowerLaw, Explicit>;

void validate(const CoefficientScheme& scheme);
std::string to_string(const CoefficientScheme& scheme);

std::vector<double> coefficients(const CoefficientScheme& scheme, std::size_t count);

// How coefficients at negative indices are read inside the finite window.
enum class NegativeIndexPolicy {
    extend,  // evaluate the scheme formula (phi^j, |j|^-beta); Explicit gives 0
    zero,    // causal reading: b_j = 0 for j < 0
};

double coefficient_at(const CoefficientScheme& scheme, long j,
                      NegativeIndexPolicy policy = NegativeIndexPolicy::extend);

// Default truncation order J: 200 (exponential), 2000 (power law), list size (explicit).
std::size_t default_truncation(const CoefficientScheme& scheme);

struct IidPlan {
    DistributionSpec spec;
};

// specs[m-1] is the law of the innovation with index m. In stream mode the
// list repeats with period specs.size().
struct PerIndexPlan {
    std::vector<DistributionSpec> specs;
};

using InnovationPlan = std::variant<IidPlan, PerIndexPlan>;

// Non-identical schedules of the simulation design: index m = 1..count gets
// Pareto(count - m + 1, 1) or Cauchy(0, count - m + 1).
PerIndexPlan pareto_schedule(std::size_t count = 5);
PerIndexPlan cauchy_schedule(std::size_t count = 5);

std::string to_string(const InnovationPlan& plan);
const DistributionSpec& law_of(const InnovationPlan& plan, long index);

// Finite window design: for each replicate, innovations with indices 1..width
// and one perturbation draw e*_0;
//   X*_i = sum_{j=i-width}^{i-1} a_j e1_{i-j} + a_i e*_0   (likewise Y* with b, e2).
// Each replicate is independent; the horizon counts replicates.
struct Window {
    long index = 1;
    long width = 5;
    NegativeIndexPolicy policy = NegativeIndexPolicy::extend;
};

struct CoupledProcessConfig {
    CoefficientScheme a_scheme = Exponential{0.5};
    CoefficientScheme b_scheme = Exponential{0.5};
    InnovationPlan innovations_x = IidPlan{Pareto{3.0, 1.0}};
    InnovationPlan innovations_y = IidPlan{Pareto{3.0, 1.0}};
    DistributionSpec perturbation = Pareto{3.0, 1.0};
    std::optional<std::size_t> truncation_order;  // stream mode only
    std::size_t horizon = 1000;
    // Stream mode: lag at which the shared perturbation stream replaces the
    // series' own innovation, X*_t = sum_{j != c} a_j e1_{t-j} + a_c e*_{t-c}.
    std::size_t coupled_lag = 0;
    std::optional<Window> window;
    std::uint64_t seed = 0;
};

struct CoupledSeries {
    std::vector<double> x_star;
    std::vector<double> y_star;
    std::vector<double> shared_perturbation_draws;
};

// Realized innovations, split out so the assembly step can be checked
// against an independent convolution.
struct InnovationDraws {
    // Stream mode: element k holds time (first_time + k). Window mode: element
    // r * width + (m - 1) holds index m of replicate r.
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> shared;
    long first_time = 0;
    long shared_first_time = 0;
};

void validate(const CoupledProcessConfig& config);
InnovationDraws draw_innovations(const CoupledProcessConfig& config);
CoupledSeries assemble(const CoupledProcessConfig& config, const InnovationDraws& draws);
CoupledSeries generate_coupled(const CoupledProcessConfig& config);

}  // namespace taildep
