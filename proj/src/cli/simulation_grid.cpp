#include "taildep/cli/simulation_grid.hpp"

#include <cmath>

#include "taildep/numeric.hpp"

namespace taildep::cli {

namespace {

const std::vector<std::string> kPerturbations = {"pareto(2.414,1)", "weibull(1,1)", "weibull(0.5,1)", "frechet(0,1,1)"};

void validate_grid(const SimulationGrid& g) {
    if (g.scheme_values.empty() || g.innovations.empty() || g.perturbations.empty() || g.indices.empty())
        throw ConfigurationError("simulation grid has an empty axis");
    if (g.replications < 1) throw ConfigurationError("replications must be at least 1");
    if (g.horizon < 64) throw ConfigurationError("horizon must be at least 64 for Hurst estimation");
    for (const auto& s : g.perturbations) parse_spec(s);
    for (const auto& s : g.innovations) parse_plan(s);
}

CoefficientScheme scheme_for(SchemeKind kind, double value) {
    CoefficientScheme s = kind == SchemeKind::exponential ? CoefficientScheme{Exponential{value}}
                                                          : CoefficientScheme{PowerLaw{value}};
    validate(s);
    return s;
}

std::string cell_key(double scheme_value, const std::string& innovation, const std::string& perturbation,
                     std::size_t replicate) {
    return "scheme=" + format_double(scheme_value) + "|innovation=" + innovation + "|perturbation=" + perturbation +
           "|replicate=" + std::to_string(replicate);
}

}  // namespace

SimulationGrid preset_grid(const std::string& name) {
    SimulationGrid g;
    g.indices = {1, 2, 3, 4, 5, 6};
    g.perturbations = kPerturbations;
    if (name == "table1" || name == "table3") {
        g.scheme = SchemeKind::exponential;
        g.scheme_values = {0.1, 0.25, 0.5};
    } else if (name == "table2" || name == "table4") {
        g.scheme = SchemeKind::power_law;
        g.scheme_values = {2, 10, 20};
    } else {
        throw ConfigurationError("unknown preset '" + name + "' (expected table1..table4)");
    }
    if (name == "table1" || name == "table2")
        g.innovations = {"pareto(3,1)", "pareto(10,1)", "cauchy(0,1)", "cauchy(0,10)"};
    else
        g.innovations = {"schedule:pareto", "schedule:cauchy"};
    return g;
}

SimulationGrid grid_from_json(const Json& c) {
    SimulationGrid g;
    if (c.contains("preset")) g = preset_grid(get_string(c, "preset"));
    try {
        if (c.contains("scheme")) {
            const std::string s = get_string(c, "scheme");
            if (s == "exponential") g.scheme = SchemeKind::exponential;
            else if (s == "power_law") g.scheme = SchemeKind::power_law;
            else throw ConfigurationError("scheme must be 'exponential' or 'power_law'");
        }
        if (c.contains("scheme_values")) g.scheme_values = c["scheme_values"].get<std::vector<double>>();
        if (c.contains("innovations")) g.innovations = c["innovations"].get<std::vector<std::string>>();
        if (c.contains("perturbations")) g.perturbations = c["perturbations"].get<std::vector<std::string>>();
        if (c.contains("indices")) g.indices = c["indices"].get<std::vector<long>>();
        if (c.contains("replications")) g.replications = static_cast<std::size_t>(get_int(c, "replications"));
        if (c.contains("horizon")) g.horizon = static_cast<std::size_t>(get_int(c, "horizon"));
        if (c.contains("window_width")) g.window_width = static_cast<long>(get_int(c, "window_width"));
        if (c.contains("negative_index_policy")) {
            const std::string p = get_string(c, "negative_index_policy");
            if (p == "extend") g.policy = NegativeIndexPolicy::extend;
            else if (p == "zero") g.policy = NegativeIndexPolicy::zero;
            else throw ConfigurationError("negative_index_policy must be 'extend' or 'zero'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError(std::string("simulation configuration: ") + e.what());
    }
    g.base_seed = get_seed(c);
    validate_grid(g);
    return g;
}

Json grid_to_json(const SimulationGrid& g) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["scheme"] = g.scheme == SchemeKind::exponential ? "exponential" : "power_law";
    j["scheme_values"] = g.scheme_values;
    j["innovations"] = g.innovations;
    j["perturbations"] = g.perturbations;
    j["indices"] = g.indices;
    j["replications"] = g.replications;
    j["horizon"] = g.horizon;
    j["window_width"] = g.window_width;
    j["negative_index_policy"] = g.policy == NegativeIndexPolicy::extend ? "extend" : "zero";
    j["seed"] = g.base_seed;
    return j;
}

double replicate_hurst(const SimulationGrid& grid, double scheme_value, long index, const std::string& innovation,
                       const std::string& perturbation, std::size_t replicate) {
    CoupledProcessConfig config;
    config.a_scheme = scheme_for(grid.scheme, scheme_value);
    config.b_scheme = config.a_scheme;
    config.innovations_x = parse_plan(innovation);
    config.innovations_y = config.innovations_x;
    config.perturbation = parse_spec(perturbation);
    config.horizon = grid.horizon;
    config.window = Window{index, grid.window_width, grid.policy};
    // The key leaves out the index so every i of a cell row sees the same draws.
    config.seed = derive_seed(grid.base_seed, cell_key(scheme_value, innovation, perturbation, replicate));
    return hurst_rs(generate_coupled(config).y_star);
}

std::vector<GridCell> run_simulation_grid(const SimulationGrid& grid) {
    validate_grid(grid);
    std::vector<GridCell> cells;
    for (double v : grid.scheme_values)
        for (long i : grid.indices)
            for (const auto& inn : grid.innovations)
                for (const auto& pert : grid.perturbations) cells.push_back(GridCell{v, i, inn, pert, {}, {}, 0, {}});

    parallel_for(cells.size(), [&](std::size_t k) {
        GridCell& cell = cells[k];
        std::vector<double> h;
        try {
            for (std::size_t r = 0; r < grid.replications; ++r)
                h.push_back(replicate_hurst(grid, cell.scheme_value, cell.index, cell.innovation, cell.perturbation, r));
        } catch (const Error& e) {
            cell.error = e.what();
            return;
        }
        cell.hurst_mean = mean(h);
        cell.hurst_sd = h.size() > 1 ? std::sqrt(variance(h)) : 0.0;
        cell.replications_used = h.size();
    });
    return cells;
}

void add_grid_tables(Report& report, const SimulationGrid& grid, const std::vector<GridCell>& cells) {
    const std::string value_name = grid.scheme == SchemeKind::exponential ? "phi" : "beta";
    Table& lng = report.add_table("hurst_cells", {value_name, "i", "innovation", "perturbation", "hurst_mean",
                                                  "hurst_sd", "replications", "error"});
    for (const auto& c : cells) {
        lng.add_row({c.scheme_value, static_cast<std::int64_t>(c.index), c.innovation, c.perturbation,
                     c.hurst_mean ? Cell{*c.hurst_mean} : Cell{}, c.hurst_sd ? Cell{*c.hurst_sd} : Cell{},
                     static_cast<std::int64_t>(c.replications_used), c.error.empty() ? Cell{} : Cell{c.error}});
        if (!c.error.empty())
            report.add_error("simulate", value_name + "=" + format_double(c.scheme_value) + " i=" +
                                             std::to_string(c.index) + " " + c.innovation + " / " + c.perturbation +
                                             ": " + c.error);
    }
    std::vector<std::string> columns{value_name, "i"};
    for (const auto& inn : grid.innovations)
        for (const auto& pert : grid.perturbations) columns.push_back(inn + " | " + pert);
    Table& wide = report.add_table("hurst", columns);
    const std::size_t per_row = grid.innovations.size() * grid.perturbations.size();
    for (std::size_t row = 0; row * per_row < cells.size(); ++row) {
        std::vector<Cell> r{cells[row * per_row].scheme_value, static_cast<std::int64_t>(cells[row * per_row].index)};
        for (std::size_t k = 0; k < per_row; ++k) {
            const auto& c = cells[row * per_row + k];
            r.push_back(c.hurst_mean ? Cell{*c.hurst_mean} : Cell{});
        }
        wide.add_row(std::move(r));
    }
}

}  // namespace taildep::cli
