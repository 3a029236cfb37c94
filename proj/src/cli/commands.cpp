#include "taildep/cli/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <map>
#include <set>

#include "taildep/cli/pipeline.hpp"
#include "taildep/cli/price_table.hpp"
#include "taildep/cli/simulation_grid.hpp"
#include "taildep/errors.hpp"
#include "taildep/memory_diag.hpp"
#include "taildep/numeric.hpp"
#include "taildep/structure_tests.hpp"
#include "taildep/tail_bounds.hpp"
#include "taildep/tail_cc.hpp"

namespace taildep::cli {

namespace {

using Keys = std::set<std::string>;

const Keys kDataKeys = {"data", "timestamp_column", "columns"};

void check_keys(const Json& c, const std::string& command, Keys allowed) {
    if (!c.is_object()) throw ConfigurationError("configuration must be a JSON object");
    allowed.insert("schema_version");
    for (const auto& item : c.items())
        if (!allowed.count(item.key()))
            throw ConfigurationError("unknown configuration key '" + item.key() + "' for " + command);
}

Keys with_data(Keys k) {
    k.insert(kDataKeys.begin(), kDataKeys.end());
    return k;
}

double opt_double(const Json& c, const std::string& key, double fallback) {
    return c.contains(key) ? get_double(c, key) : fallback;
}

std::int64_t opt_int(const Json& c, const std::string& key, std::int64_t fallback) {
    return c.contains(key) ? get_int(c, key) : fallback;
}

std::size_t opt_count(const Json& c, const std::string& key, std::size_t fallback) {
    const auto v = opt_int(c, key, static_cast<std::int64_t>(fallback));
    if (v < 0) throw ConfigurationError("configuration key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

std::string opt_string(const Json& c, const std::string& key, const std::string& fallback) {
    return c.contains(key) ? get_string(c, key) : fallback;
}

template <class T>
std::vector<T> opt_list(const Json& c, const std::string& key, std::vector<T> fallback) {
    if (!c.contains(key)) return fallback;
    try {
        return c.at(key).get<std::vector<T>>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigurationError("configuration key '" + key + "' has the wrong element type");
    }
}

std::vector<QuantilePair> opt_pairs(const Json& c, const std::string& key, std::vector<QuantilePair> fallback) {
    if (!c.contains(key)) return fallback;
    std::vector<QuantilePair> out;
    for (const auto& v : opt_list<std::vector<double>>(c, key, {})) {
        if (v.size() != 2) throw ConfigurationError("each quantile pair needs two entries");
        out.push_back({v[0], v[1]});
    }
    if (out.empty()) throw ConfigurationError("'" + key + "' must not be empty");
    return out;
}

Json pairs_json(const std::vector<QuantilePair>& pairs) {
    Json out = Json::array();
    for (const auto& q : pairs) out.push_back(Json::array({q.qx, q.qy}));
    return out;
}

NegativeIndexPolicy parse_policy(const std::string& s) {
    if (s == "extend") return NegativeIndexPolicy::extend;
    if (s == "zero") return NegativeIndexPolicy::zero;
    throw ConfigurationError("negative_index_policy must be 'extend' or 'zero'");
}

// Reads the CSV named by "data" and records the resolved data keys.
PriceTable load_data(const Json& c, Json& resolved) {
    ColumnSpec spec;
    if (c.contains("timestamp_column")) spec.timestamp_column = get_string(c, "timestamp_column");
    const std::string path = get_string(c, "data");
    PriceTable table = ingest_csv(path, spec);
    resolved["data"] = path;
    resolved["timestamp_column"] = table.timestamp_name;
    resolved["columns"] = resolve_columns(table, opt_list<std::string>(c, "columns", {}));
    resolved["rows"] = table.rows();
    return table;
}

std::vector<std::string> resolved_columns(const Json& resolved) {
    return resolved.at("columns").get<std::vector<std::string>>();
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// ---- bounds ----

BalanceWeights default_balance(const DistributionSpec& spec) {
    // Symmetric laws split their tail mass evenly.
    return family_of(spec) == Family::cauchy ? BalanceWeights{0.5, 0.5} : BalanceWeights{1.0, 0.0};
}

Json worked_example(const std::string& name) {
    if (name == "i")
        return Json::array({Json{{"coefficient", 1.0}, {"distribution", "pareto(2.414,1)"}},
                            Json{{"coefficient", 1.0 / 3.0}, {"distribution", "cauchy(0,1)"}}});
    if (name == "ii")
        return Json::array({Json{{"coefficient", 1.0}, {"distribution", "pareto(2.414,1)"}},
                            Json{{"coefficient", 1.0 / 3.0}, {"distribution", "pareto(5,1)"}}});
    throw ConfigurationError("unknown example '" + name + "' (expected 'i' or 'ii')");
}

}  // namespace

Report run_bounds(const Json& c) {
    check_keys(c, "bounds", {"example", "terms", "samples", "tail_fraction", "seed"});
    if (c.contains("example") == c.contains("terms"))
        throw ConfigurationError("bounds needs exactly one of 'example' or 'terms'");
    const Json terms_in = c.contains("example") ? worked_example(get_string(c, "example")) : c.at("terms");
    if (!terms_in.is_array() || terms_in.empty()) throw ConfigurationError("'terms' must be a non-empty array");

    LinearCombinationSpec spec;
    Json terms_out = Json::array();
    for (const auto& t : terms_in) {
        check_keys(t, "bounds term", {"coefficient", "distribution", "p"});
        CombinationTerm term{get_double(t, "coefficient"), parse_spec(get_string(t, "distribution")), {}};
        term.balance = default_balance(term.spec);
        if (t.contains("p")) {
            const double p = get_double(t, "p");
            term.balance = {p, 1.0 - p};
        }
        validate(term.balance);
        terms_out.push_back(Json{{"coefficient", term.coefficient}, {"distribution", to_string(term.spec)},
                                 {"p", term.balance.p}});
        spec.terms.push_back(std::move(term));
    }
    const std::size_t samples = opt_count(c, "samples", 0);
    const double tail_fraction = opt_double(c, "tail_fraction", 0.02);

    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    if (c.contains("example")) resolved["example"] = get_string(c, "example");
    resolved["terms"] = terms_out;
    resolved["samples"] = samples;
    resolved["tail_fraction"] = tail_fraction;
    std::uint64_t seed = 0;
    if (samples > 0) resolved["seed"] = seed = get_seed(c);

    Report report("bounds", resolved);
    auto& r = report.results();
    r["slope_dominant"] = slope_dominant(spec);
    r["slope_sum"] = slope_sum_bound(spec);
    r["slope_moment"] = slope_moment_bound(spec);
    r["sum_bound_scale"] = sum_bound_scale(spec);

    Table& t = report.add_table("terms", {"coefficient", "distribution", "tail_index", "p"});
    for (const auto& term : spec.terms) {
        const auto a = tail_index(term.spec);
        t.add_row({term.coefficient, to_string(term.spec), a ? Cell{*a} : Cell{}, term.balance.p});
    }

    if (samples > 0) {
        try {
            Rng rng(derive_seed(seed, "bounds:sample"));
            const auto draws = sample_combination(spec, samples, rng);
            const SlopeFit fit = empirical_log_tail_slope(draws, tail_fraction);
            r["empirical_slope"] = fit.slope;
            r["empirical_intercept"] = fit.intercept;
            r["threshold"] = fit.threshold;
            r["tail_points"] = fit.points;
        } catch (const Error& e) {
            report.add_error("empirical_slope", e.what(), e.category() == Error::Category::numerical);
            if (e.category() == Error::Category::data) throw;
        }
    }
    return report;
}

Report run_simulate(const Json& c) {
    check_keys(c, "simulate",
               {"preset", "scheme", "scheme_values", "innovations", "perturbations", "indices", "replications",
                "horizon", "window_width", "negative_index_policy", "seed"});
    const SimulationGrid grid = grid_from_json(c);
    Json resolved = grid_to_json(grid);
    if (c.contains("preset")) resolved["preset"] = get_string(c, "preset");
    Report report("simulate", resolved);

    const auto cells = run_simulation_grid(grid);
    std::size_t failed = 0;
    for (const auto& cell : cells) failed += cell.error.empty() ? 0 : 1;
    report.results()["cells"] = cells.size();
    report.results()["failed_cells"] = failed;
    Json notes = Json::array();
    const long min_index = *std::min_element(grid.indices.begin(), grid.indices.end());
    if (min_index <= grid.window_width) {
        notes.push_back(grid.policy == NegativeIndexPolicy::extend
                            ? "window reaches non-positive coefficient indices; the scheme formula is extended there"
                            : "window reaches non-positive coefficient indices; those coefficients are set to zero");
        for (const auto& inn : grid.innovations)
            if (inn.rfind("schedule:", 0) == 0 || inn.rfind("per_index:", 0) == 0) {
                notes.push_back("per-index innovation laws repeat periodically outside their listed range");
                break;
            }
    }
    report.results()["notes"] = notes;
    add_grid_tables(report, grid, cells);
    return report;
}

namespace {

Report tailcc_from_data(const Json& c) {
    check_keys(c, "tailcc", with_data({"lags", "quantile_pairs"}));
    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    const PriceTable table = load_data(c, resolved);
    const auto lags = opt_list<std::size_t>(c, "lags", {1, 3, 5, 7, 30, 100});
    const auto pairs = opt_pairs(c, "quantile_pairs", default_quantile_pairs());
    if (lags.empty()) throw ConfigurationError("'lags' must not be empty");
    resolved["lags"] = lags;
    resolved["quantile_pairs"] = pairs_json(pairs);
    Report report("tailcc", resolved);
    add_tailcc_section(report, table, resolved_columns(resolved), lags, pairs, true);
    return report;
}

Report tailcc_from_simulation(const Json& c) {
    check_keys(c, "tailcc",
               {"a_scheme", "b_scheme", "innovations", "innovations_y", "perturbation", "horizon", "window_width",
                "negative_index_policy", "reference_index", "indices", "quantile_pairs", "regime",
                "quantile_ratio_term", "seed"});
    CoupledProcessConfig config;
    const std::string a = opt_string(c, "a_scheme", "exponential(0.5)");
    const std::string b = opt_string(c, "b_scheme", a);
    const std::string inn_x = opt_string(c, "innovations", "pareto(3,1)");
    const std::string inn_y = opt_string(c, "innovations_y", inn_x);
    const std::string pert = opt_string(c, "perturbation", "pareto(3,1)");
    config.a_scheme = parse_scheme(a);
    config.b_scheme = parse_scheme(b);
    config.innovations_x = parse_plan(inn_x);
    config.innovations_y = parse_plan(inn_y);
    config.perturbation = parse_spec(pert);
    config.horizon = opt_count(c, "horizon", 100000);
    const long width = static_cast<long>(opt_int(c, "window_width", 5));
    const NegativeIndexPolicy policy = parse_policy(opt_string(c, "negative_index_policy", "extend"));
    config.window = Window{1, width, policy};
    config.seed = get_seed(c);
    const long reference = static_cast<long>(opt_int(c, "reference_index", 0));
    const auto indices = opt_list<long>(c, "indices", {1, 2, 3, 4, 5, 6});
    const auto pairs = opt_pairs(c, "quantile_pairs", {{0.95, 0.95}});
    const Regime regime = parse_regime(opt_string(c, "regime", "iid-identical"));
    if (indices.empty()) throw ConfigurationError("'indices' must not be empty");
    validate(config);

    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    resolved["a_scheme"] = to_string(config.a_scheme);
    resolved["b_scheme"] = to_string(config.b_scheme);
    resolved["innovations"] = inn_x;
    resolved["innovations_y"] = inn_y;
    resolved["perturbation"] = to_string(config.perturbation);
    resolved["horizon"] = config.horizon;
    resolved["window_width"] = width;
    resolved["negative_index_policy"] = policy == NegativeIndexPolicy::extend ? "extend" : "zero";
    resolved["reference_index"] = reference;
    resolved["indices"] = indices;
    resolved["quantile_pairs"] = pairs_json(pairs);
    resolved["regime"] = to_string(regime);
    if (c.contains("quantile_ratio_term")) resolved["quantile_ratio_term"] = get_double(c, "quantile_ratio_term");
    resolved["seed"] = config.seed;

    Report report("tailcc", resolved);
    const auto alpha = tail_index(config.perturbation);
    report.results()["b_memory"] = to_string(classify_scheme(config.b_scheme));
    if (alpha) report.results()["alpha_used"] = *alpha;

    Table& taus = report.add_table("window_tau", {"qx", "qy", "index", "tau", "threshold_x", "threshold_y",
                                                  "n_exceed_x", "n_exceed_y", "n_joint", "n_pairs"});
    Table& ratios = report.add_table("ratios", {"qx", "qy", "index", "empirical_ratio", "predicted_ratio"});
    std::size_t estimated = 0;
    for (const auto& q : pairs) {
        const auto cells = window_tail_cc(config, reference, indices, q);
        for (const auto& cell : cells) {
            std::vector<Cell> row{q.qx, q.qy, static_cast<std::int64_t>(cell.index)};
            if (cell.estimate) {
                const auto& e = *cell.estimate;
                row.insert(row.end(), {e.tau, e.threshold_x, e.threshold_y, as_int(e.n_exceed_x), as_int(e.n_exceed_y),
                                       as_int(e.n_joint), as_int(e.n_pairs)});
                ++estimated;
            } else {
                row.resize(taus.columns.size());
                report.add_error("window_tau", "index " + std::to_string(cell.index) + ": " + cell.error);
            }
            taus.add_row(std::move(row));
        }
        // tau(i+1) / tau(i) for consecutive listed indices.
        for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
            if (cells[k + 1].index != cells[k].index + 1) continue;
            const long i = cells[k].index;
            Cell empirical, predicted;
            if (cells[k].estimate && cells[k + 1].estimate && cells[k].estimate->tau != 0.0)
                empirical = cells[k + 1].estimate->tau / cells[k].estimate->tau;
            if (alpha) {
                try {
                    predicted = predicted_ratio(config.b_scheme, i - 1, *alpha).predicted_ratio;
                } catch (const Error& e) {
                    report.add_error("ratios", "index " + std::to_string(i) + ": " + e.what());
                }
            }
            ratios.add_row({q.qx, q.qy, static_cast<std::int64_t>(i), empirical, predicted});
        }
    }
    if (estimated == 0) report.add_error("window_tau", "no index produced an estimate", true);

    if (alpha) {
        Table& cond = report.add_table("conditions", {"index", "regime", "lhs", "rhs", "satisfied",
                                                      "coefficient_ratio", "coefficient_ratio_below_one"});
        std::optional<double> qterm;
        if (c.contains("quantile_ratio_term")) qterm = get_double(c, "quantile_ratio_term");
        for (long i : indices) {
            try {
                const auto r = monotonicity_conditions(config.b_scheme, config.a_scheme, *alpha, BalanceWeights{}, i - 1,
                                                       regime, qterm);
                cond.add_row({static_cast<std::int64_t>(i), to_string(regime), r.lhs, r.rhs,
                              std::string(r.satisfied ? "true" : "false"), r.coefficient_ratio,
                              std::string(r.coefficient_ratio_below_one ? "true" : "false")});
            } catch (const Error& e) {
                if (e.category() == Error::Category::configuration) throw;
                report.add_error("conditions", "index " + std::to_string(i) + ": " + e.what());
            }
        }
    }
    return report;
}

}  // namespace

Report run_tailcc(const Json& c) {
    return c.is_object() && c.contains("data") ? tailcc_from_data(c) : tailcc_from_simulation(c);
}

Report run_memory(const Json& c) {
    check_keys(c, "memory", with_data({"bandwidth_exponent", "schemes"}));
    const auto schemes = opt_list<std::string>(c, "schemes", {});
    if (!c.contains("data") && schemes.empty())
        throw ConfigurationError("memory needs 'data', 'schemes', or both");
    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    std::optional<PriceTable> table;
    if (c.contains("data")) table = load_data(c, resolved);
    const double exponent = opt_double(c, "bandwidth_exponent", 0.5);
    resolved["bandwidth_exponent"] = exponent;
    std::vector<CoefficientScheme> parsed;
    for (const auto& s : schemes) parsed.push_back(parse_scheme(s));
    resolved["schemes"] = schemes;

    Report report("memory", resolved);
    if (table) add_memory_section(report, *table, resolved_columns(resolved), exponent, true);
    if (!parsed.empty()) {
        Table& t = report.add_table("classification", {"scheme", "memory", "note"});
        for (const auto& s : parsed) {
            const auto note = classification_note(s);
            t.add_row({to_string(s), to_string(classify_scheme(s)), note ? Cell{*note} : Cell{}});
        }
    }
    return report;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> parse_segments(const std::vector<std::string>& labels, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& label : labels) {
        const auto dash = label.find('-');
        std::size_t first = 0, last = 0;
        const char* b = label.data();
        const char* e = b + label.size();
        if (dash == std::string::npos || std::from_chars(b, b + dash, first).ptr != b + dash ||
            std::from_chars(b + dash + 1, e, last).ptr != e)
            throw ConfigurationError("segment '" + label + "' must look like first-last (1-based, inclusive)");
        if (first < 1 || last < first || last > n)
            throw ConfigurationError("segment '" + label + "' lies outside rows 1-" + std::to_string(n));
        out.emplace_back(first - 1, last);
    }
    return out;
}

ChangePointOptions changepoint_options(const Json& c, Json& resolved) {
    ChangePointOptions o;
    o.max_changepoints = opt_count(c, "max_changepoints", o.max_changepoints);
    o.min_segment = opt_count(c, "min_segment", o.min_segment);
    o.alpha = opt_double(c, "alpha", o.alpha);
    resolved["max_changepoints"] = o.max_changepoints;
    resolved["min_segment"] = o.min_segment;
    resolved["alpha"] = o.alpha;
    return o;
}

std::vector<Family> parse_families(const Json& c, Json& resolved) {
    std::vector<Family> out;
    for (const auto& f : opt_list<std::string>(c, "families", {"pareto", "cauchy", "weibull"}))
        out.push_back(parse_family(f));
    if (out.empty()) throw ConfigurationError("at least one family is needed");
    Json names = Json::array();
    for (auto f : out) names.push_back(std::string(family_name(f)));
    resolved["families"] = names;
    return out;
}

}  // namespace

Report run_fit(const Json& c) {
    check_keys(c, "fit", with_data({"families", "segments", "detect_changepoints", "max_changepoints", "min_segment",
                                    "alpha"}));
    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    const PriceTable table = load_data(c, resolved);
    const auto families = parse_families(c, resolved);
    const auto labels = opt_list<std::string>(c, "segments", {});
    bool detect = false;
    if (c.contains("detect_changepoints")) {
        if (!c["detect_changepoints"].is_boolean()) throw ConfigurationError("'detect_changepoints' must be a boolean");
        detect = c["detect_changepoints"].get<bool>();
    }
    if (detect && !labels.empty()) throw ConfigurationError("use either 'segments' or 'detect_changepoints'");
    resolved["segments"] = labels;
    resolved["detect_changepoints"] = detect;
    ChangePointOptions options;
    if (detect) options = changepoint_options(c, resolved);

    Report report("fit", resolved);
    const auto columns = resolved_columns(resolved);
    std::vector<std::optional<ChangePointResult>> found(columns.size());
    if (detect) found = add_changepoint_section(report, table, columns, options, true);
    for (std::size_t k = 0; k < columns.size(); ++k) {
        const std::size_t n = table.column(columns[k]).values.size();
        std::vector<std::pair<std::size_t, std::size_t>> segments{{0, n}};
        if (!labels.empty()) segments = parse_segments(labels, n);
        else if (found[k]) segments = found[k]->segments(n);
        add_fit_section(report, table, columns[k], segments, families);
    }
    // A segment where every family failed is a failed required section.
    if (const Table* fits = report.find_table("fits"))
        for (const auto& row : fits->rows)
            if (std::holds_alternative<std::monostate>(row.back()))
                report.add_error("fits", std::get<std::string>(row[0]) + " " + std::get<std::string>(row[1]) +
                                             ": no family could be fitted", true);
    return report;
}

Report run_dip(const Json& c) {
    check_keys(c, "dip", with_data({"n_bootstrap", "seed"}));
    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    const PriceTable table = load_data(c, resolved);
    const std::size_t n_bootstrap = opt_count(c, "n_bootstrap", 2000);
    if (n_bootstrap < 1) throw ConfigurationError("n_bootstrap must be positive");
    resolved["n_bootstrap"] = n_bootstrap;
    resolved["seed"] = get_seed(c);
    Report report("dip", resolved);
    add_dip_section(report, table, resolved_columns(resolved), n_bootstrap, resolved["seed"].get<std::uint64_t>(), true);
    return report;
}

Report run_changepoint(const Json& c) {
    check_keys(c, "changepoint", with_data({"max_changepoints", "min_segment", "alpha"}));
    Json resolved;
    resolved["schema_version"] = kSchemaVersion;
    const PriceTable table = load_data(c, resolved);
    const auto options = changepoint_options(c, resolved);
    Report report("changepoint", resolved);
    add_changepoint_section(report, table, resolved_columns(resolved), options, true);
    return report;
}

Report run_pipeline(const Json& c) {
    check_keys(c, "pipeline",
               with_data({"dip_bootstrap", "max_changepoints", "min_segment", "alpha", "families",
                          "bandwidth_exponent", "lags", "quantile_pairs", "seed"}));
    Json data_keys;
    const PriceTable table = load_data(c, data_keys);
    PipelineConfig config = pipeline_from_json(c);
    config.columns = resolved_columns(data_keys);
    Json resolved = pipeline_to_json(config);
    resolved["data"] = data_keys["data"];
    resolved["timestamp_column"] = data_keys["timestamp_column"];
    resolved["rows"] = data_keys["rows"];
    return run_empirical_pipeline(table, config, resolved);
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"simulate", "tailcc",      "memory", "fit",
                                                "dip",      "changepoint", "bounds", "pipeline"};
    return names;
}

Report run_command(const std::string& command, const Json& config) {
    if (command == "bounds") return run_bounds(config);
    if (command == "simulate") return run_simulate(config);
    if (command == "tailcc") return run_tailcc(config);
    if (command == "memory") return run_memory(config);
    if (command == "fit") return run_fit(config);
    if (command == "dip") return run_dip(config);
    if (command == "changepoint") return run_changepoint(config);
    if (command == "pipeline") return run_pipeline(config);
    throw ConfigurationError("unknown command '" + command + "'");
}

int exit_code_for(const Error& error) {
    switch (error.category()) {
        case Error::Category::configuration: return 2;
        case Error::Category::data: return 3;
        case Error::Category::numerical: return 4;
    }
    return 4;
}

// ---- command line ----

namespace {

enum class Kind { text, integer, seed, number, texts, integers, numbers, pairs, boolean };

struct FlagSpec {
    std::string flag;
    std::string key;
    Kind kind;
    std::string help;
};

// Separators inside (...) or [...] belong to the item: "pareto(3,1),cauchy(0,1)".
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out(1);
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == sep && depth == 0) {
            out.emplace_back();
        } else {
            out.back() += ch;
        }
    }
    return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& flag) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigurationError("invalid value '" + text + "' for " + flag);
    return v;
}

Json flag_value(const FlagSpec& f, const std::string& text) {
    switch (f.kind) {
        case Kind::text: return text;
        case Kind::integer: return parse_number<std::int64_t>(text, f.flag);
        case Kind::seed: return parse_number<std::uint64_t>(text, f.flag);
        case Kind::number: return parse_number<double>(text, f.flag);
        case Kind::texts: return split(text, ',');
        case Kind::integers: {
            Json out = Json::array();
            for (const auto& p : split(text, ',')) out.push_back(parse_number<std::int64_t>(p, f.flag));
            return out;
        }
        case Kind::numbers: {
            Json out = Json::array();
            for (const auto& p : split(text, ',')) out.push_back(parse_number<double>(p, f.flag));
            return out;
        }
        case Kind::pairs: {
            Json out = Json::array();
            for (const auto& p : split(text, ',')) {
                const auto parts = split(p, ':');
                if (parts.size() != 2) throw ConfigurationError(f.flag + " expects qx:qy pairs");
                out.push_back(Json::array({parse_number<double>(parts[0], f.flag), parse_number<double>(parts[1], f.flag)}));
            }
            return out;
        }
        case Kind::boolean: return true;
    }
    return nullptr;
}

const std::vector<FlagSpec> kDataFlags = {
    {"--data", "data", Kind::text, "input CSV"},
    {"--timestamp-column", "timestamp_column", Kind::text, "timestamp column name (default: first)"},
    {"--columns", "columns", Kind::texts, "comma-separated value columns (default: all)"},
};

std::vector<FlagSpec> flags_for(const std::string& command) {
    std::vector<FlagSpec> f;
    auto add_data = [&] { f.insert(f.end(), kDataFlags.begin(), kDataFlags.end()); };
    const FlagSpec seed{"--seed", "seed", Kind::seed, "master seed"};
    const std::vector<FlagSpec> cp = {
        {"--max-changepoints", "max_changepoints", Kind::integer, "maximum number of change points"},
        {"--min-segment", "min_segment", Kind::integer, "minimum segment length"},
        {"--alpha", "alpha", Kind::number, "split significance level"},
    };
    if (command == "bounds") {
        f = {{"--example", "example", Kind::text, "worked example: i or ii"},
             {"--samples", "samples", Kind::integer, "draws for the empirical slope (0: none)"},
             {"--tail-fraction", "tail_fraction", Kind::number, "upper tail fraction for the empirical slope"},
             seed};
    } else if (command == "simulate") {
        f = {{"--preset", "preset", Kind::text, "table1, table2, table3 or table4"},
             {"--scheme", "scheme", Kind::text, "exponential or power_law"},
             {"--scheme-values", "scheme_values", Kind::numbers, "phi or beta values"},
             {"--innovations", "innovations", Kind::texts, "innovation plans"},
             {"--perturbations", "perturbations", Kind::texts, "perturbation laws"},
             {"--indices", "indices", Kind::integers, "window indices i"},
             {"--replications", "replications", Kind::integer, "replications per cell"},
             {"--horizon", "horizon", Kind::integer, "series length"},
             {"--window-width", "window_width", Kind::integer, "window width"},
             {"--negative-index-policy", "negative_index_policy", Kind::text, "extend or zero"},
             seed};
    } else if (command == "tailcc") {
        add_data();
        f.insert(f.end(), {{"--lags", "lags", Kind::integers, "lags (data mode)"},
                           {"--quantile-pairs", "quantile_pairs", Kind::pairs, "qx:qy pairs"},
                           {"--a-scheme", "a_scheme", Kind::text, "X coefficients (simulation mode)"},
                           {"--b-scheme", "b_scheme", Kind::text, "Y coefficients (simulation mode)"},
                           {"--innovations", "innovations", Kind::text, "innovation plan"},
                           {"--innovations-y", "innovations_y", Kind::text, "Y innovation plan"},
                           {"--perturbation", "perturbation", Kind::text, "shared perturbation law"},
                           {"--horizon", "horizon", Kind::integer, "replicates per index"},
                           {"--window-width", "window_width", Kind::integer, "window width"},
                           {"--negative-index-policy", "negative_index_policy", Kind::text, "extend or zero"},
                           {"--reference-index", "reference_index", Kind::integer, "X index"},
                           {"--indices", "indices", Kind::integers, "Y indices"},
                           {"--regime", "regime", Kind::text, "monotonicity regime"},
                           {"--quantile-ratio-term", "quantile_ratio_term", Kind::number, "distinct-regime bound"},
                           seed});
    } else if (command == "memory") {
        add_data();
        f.insert(f.end(), {{"--bandwidth-exponent", "bandwidth_exponent", Kind::number, "GPH bandwidth exponent"},
                           {"--schemes", "schemes", Kind::texts, "coefficient schemes to classify"}});
    } else if (command == "fit") {
        add_data();
        f.insert(f.end(), {{"--families", "families", Kind::texts, "candidate families"},
                           {"--segments", "segments", Kind::texts, "segments first-last, 1-based"},
                           {"--detect-changepoints", "detect_changepoints", Kind::boolean, "segment at change points"}});
        f.insert(f.end(), cp.begin(), cp.end());
    } else if (command == "dip") {
        add_data();
        f.insert(f.end(), {{"--n-bootstrap", "n_bootstrap", Kind::integer, "bootstrap replicates"}, seed});
    } else if (command == "changepoint") {
        add_data();
        f.insert(f.end(), cp.begin(), cp.end());
    } else if (command == "pipeline") {
        add_data();
        f.insert(f.end(), {{"--dip-bootstrap", "dip_bootstrap", Kind::integer, "dip bootstrap replicates"},
                           {"--families", "families", Kind::texts, "candidate families"},
                           {"--bandwidth-exponent", "bandwidth_exponent", Kind::number, "GPH bandwidth exponent"},
                           {"--lags", "lags", Kind::integers, "tail cross-correlation lags"},
                           {"--quantile-pairs", "quantile_pairs", Kind::pairs, "qx:qy pairs"},
                           seed});
        f.insert(f.end(), cp.begin(), cp.end());
    }
    return f;
}

const std::map<std::string, std::string> kDescriptions = {
    {"simulate", "Hurst exponents over a simulation grid"},
    {"tailcc", "tail cross-correlation from data or a simulated coupled process"},
    {"memory", "Hurst and GPH estimates; coefficient-scheme classification"},
    {"fit", "heavy-tailed MLE fits with AIC/BIC model selection"},
    {"dip", "dip test of unimodality"},
    {"changepoint", "binary-segmentation change points"},
    {"bounds", "log-tail slope bounds for linear combinations"},
    {"pipeline", "the full empirical report"},
};

struct Invocation {
    std::string config_path;
    std::string out_dir = ".";
    std::string name;
    bool quiet = false;
    std::vector<FlagSpec> flags;
    std::vector<std::string> values;
    std::vector<bool> switches;
    std::vector<CLI::Option*> options;
};

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Heavy-tailed linear processes: simulation, tail dependence and empirical diagnostics", "taildep"};
    app.require_subcommand(1);
    std::map<std::string, Invocation> invocations;
    for (const auto& command : command_names()) {
        Invocation& inv = invocations[command];
        CLI::App* sub = app.add_subcommand(command, kDescriptions.at(command));
        sub->add_option("--config", inv.config_path, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out-dir", inv.out_dir, "directory for report files")->capture_default_str();
        sub->add_option("--name", inv.name, "report file prefix (default: command name)");
        sub->add_flag("--quiet", inv.quiet, "do not print the human-readable tables");
        inv.flags = flags_for(command);
        inv.values.resize(inv.flags.size());
        inv.switches.resize(inv.flags.size());
        for (std::size_t k = 0; k < inv.flags.size(); ++k) {
            const auto& f = inv.flags[k];
            if (f.kind == Kind::boolean) {
                inv.options.push_back(sub->add_flag(f.flag, [&inv, k](std::int64_t) { inv.switches[k] = true; }, f.help));
            } else {
                inv.options.push_back(sub->add_option(f.flag, inv.values[k], f.help));
            }
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Invocation& inv = invocations[command];
    try {
        Json config = inv.config_path.empty() ? Json::object() : load_config(inv.config_path);
        for (std::size_t k = 0; k < inv.flags.size(); ++k)
            if (inv.options[k]->count() > 0) config[inv.flags[k].key] = flag_value(inv.flags[k], inv.values[k]);
        const Report report = run_command(command, config);
        report.write(inv.out_dir, inv.name.empty() ? command : inv.name);
        if (!inv.quiet) report.print_human(std::cout);
        return report.has_required_failure() ? 4 : 0;
    } catch (const Error& e) {
        std::cerr << "taildep " << command << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "taildep " << command << ": configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "taildep " << command << ": internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace taildep::cli
