#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "taildep/cli/report.hpp"
#include "taildep/linear_process.hpp"
#include "taildep/memory_diag.hpp"

namespace taildep::cli {

enum class SchemeKind { exponential, power_law };

struct SimulationGrid {
    SchemeKind scheme = SchemeKind::exponential;
    std::vector<double> scheme_values;
    std::vector<std::string> innovations;    // plan strings, see parse_plan
    std::vector<std::string> perturbations;  // distribution strings
    std::vector<long> indices;
    std::size_t replications = 20;
    std::size_t horizon = 10000;
    long window_width = 5;
    NegativeIndexPolicy policy = NegativeIndexPolicy::extend;
    std::uint64_t base_seed = 0;
};

struct GridCell {
    double scheme_value;
    long index;
    std::string innovation;
    std::string perturbation;
    std::optional<double> hurst_mean;
    std::optional<double> hurst_sd;
    std::size_t replications_used = 0;
    std::string error;
};

// Named presets reproducing the layouts of the four simulation tables.
SimulationGrid preset_grid(const std::string& name);

SimulationGrid grid_from_json(const Json& config);
Json grid_to_json(const SimulationGrid& grid);

// Hurst exponent of Y*_i for one replicate of one cell.
double replicate_hurst(const SimulationGrid& grid, double scheme_value, long index, const std::string& innovation,
                       const std::string& perturbation, std::size_t replicate);

std::vector<GridCell> run_simulation_grid(const SimulationGrid& grid);

// Long table (one row per cell) plus the wide table keyed by scheme value and index.
void add_grid_tables(Report& report, const SimulationGrid& grid, const std::vector<GridCell>& cells);

}  // namespace taildep::cli
