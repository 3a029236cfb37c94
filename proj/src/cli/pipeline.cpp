#include "taildep/cli/pipeline.hpp"

#include <algorithm>
#include <limits>

#include "taildep/memory_diag.hpp"
#include "taildep/numeric.hpp"

namespace taildep::cli {

namespace {

std::string join_locations(const std::vector<std::size_t>& locs) {
    std::string out = "(";
    for (std::size_t i = 0; i < locs.size(); ++i) out += (i ? "," : "") + std::to_string(locs[i]);
    return out + ")";
}

}  // namespace

std::vector<std::string> resolve_columns(const PriceTable& table, const std::vector<std::string>& wanted) {
    if (!wanted.empty()) {
        for (const auto& c : wanted) table.column(c);
        return wanted;
    }
    std::vector<std::string> all;
    for (const auto& c : table.columns) all.push_back(c.name);
    return all;
}

std::vector<QuantilePair> default_quantile_pairs() {
    std::vector<QuantilePair> out;
    for (double a : {0.75, 0.85, 0.95})
        for (double b : {0.75, 0.85, 0.95}) out.push_back({a, b});
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> column_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t gap = 1; gap < n; ++gap)
        for (std::size_t i = 0; i + gap < n; ++i) out.emplace_back(i, i + gap);
    return out;
}

PipelineConfig pipeline_from_json(const Json& c) {
    PipelineConfig p;
    try {
        if (c.contains("columns")) p.columns = c["columns"].get<std::vector<std::string>>();
        if (c.contains("dip_bootstrap")) p.dip_bootstrap = static_cast<std::size_t>(get_int(c, "dip_bootstrap"));
        if (c.contains("max_changepoints"))
            p.changepoints.max_changepoints = static_cast<std::size_t>(get_int(c, "max_changepoints"));
        if (c.contains("min_segment")) p.changepoints.min_segment = static_cast<std::size_t>(get_int(c, "min_segment"));
        if (c.contains("alpha")) p.changepoints.alpha = get_double(c, "alpha");
        if (c.contains("families")) {
            p.families.clear();
            for (const auto& f : c["families"].get<std::vector<std::string>>()) p.families.push_back(parse_family(f));
        }
        if (c.contains("bandwidth_exponent")) p.gph_bandwidth_exponent = get_double(c, "bandwidth_exponent");
        if (c.contains("lags")) p.lags = c["lags"].get<std::vector<std::size_t>>();
        if (c.contains("quantile_pairs")) {
            for (const auto& q : c["quantile_pairs"]) {
                const auto v = q.get<std::vector<double>>();
                if (v.size() != 2) throw ConfigurationError("quantile pairs must have two entries");
                p.quantile_pairs.push_back({v[0], v[1]});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError(std::string("pipeline configuration: ") + e.what());
    }
    if (p.quantile_pairs.empty()) p.quantile_pairs = default_quantile_pairs();
    if (p.dip_bootstrap < 1) throw ConfigurationError("dip_bootstrap must be positive");
    if (p.families.empty()) throw ConfigurationError("at least one family is needed");
    p.seed = get_seed(c);
    return p;
}

Json pipeline_to_json(const PipelineConfig& p) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["columns"] = p.columns;
    j["dip_bootstrap"] = p.dip_bootstrap;
    j["max_changepoints"] = p.changepoints.max_changepoints;
    j["min_segment"] = p.changepoints.min_segment;
    j["alpha"] = p.changepoints.alpha;
    Json fams = Json::array();
    for (auto f : p.families) fams.push_back(std::string(family_name(f)));
    j["families"] = fams;
    j["bandwidth_exponent"] = p.gph_bandwidth_exponent;
    j["lags"] = p.lags;
    Json qp = Json::array();
    for (const auto& q : p.quantile_pairs) qp.push_back(Json::array({q.qx, q.qy}));
    j["quantile_pairs"] = qp;
    j["seed"] = p.seed;
    return j;
}

void add_dip_section(Report& report, const PriceTable& table, const std::vector<std::string>& columns,
                     std::size_t n_bootstrap, std::uint64_t seed, bool required) {
    Table& t = report.add_table("dip", {"column", "statistic", "p_value", "n_bootstrap"});
    for (const auto& name : columns) {
        try {
            const auto r = dip_test(table.column(name).values, n_bootstrap, derive_seed(seed, "dip:" + name));
            t.add_row({name, r.statistic, r.p_value, static_cast<std::int64_t>(r.n_bootstrap)});
        } catch (const Error& e) {
            t.add_row({name, Cell{}, Cell{}, static_cast<std::int64_t>(n_bootstrap)});
            report.add_error("dip", name + ": " + e.what(), required && e.category() == Error::Category::numerical);
        }
    }
}

std::vector<std::optional<ChangePointResult>> add_changepoint_section(Report& report, const PriceTable& table,
                                                                      const std::vector<std::string>& columns,
                                                                      const ChangePointOptions& options,
                                                                      bool required) {
    std::vector<std::optional<ChangePointResult>> found;
    Table& summary = report.add_table("changepoints", {"column", "n_changepoints", "locations_discovery_order",
                                                       "locations_sorted", "n_segments"});
    Table& splits = report.add_table("changepoint_splits", {"column", "order", "location", "statistic", "p_value"});
    Table& segs = report.add_table("segments", {"column", "segment", "first", "last", "length"});
    for (const auto& name : columns) {
        try {
            const auto& values = table.column(name).values;
            const auto r = detect_changepoints(values, options);
            found.push_back(r);
            summary.add_row({name, static_cast<std::int64_t>(r.locations.size()), join_locations(r.discovery_order),
                             join_locations(r.locations), static_cast<std::int64_t>(r.n_segments)});
            for (std::size_t k = 0; k < r.discovery_order.size(); ++k)
                splits.add_row({name, static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(r.discovery_order[k]),
                                r.statistic_per_split[k], r.p_value_per_split[k]});
            const auto parts = r.segments(values.size());
            for (std::size_t k = 0; k < parts.size(); ++k)
                segs.add_row({name, static_cast<std::int64_t>(k + 1), static_cast<std::int64_t>(parts[k].first + 1),
                              static_cast<std::int64_t>(parts[k].second),
                              static_cast<std::int64_t>(parts[k].second - parts[k].first)});
        } catch (const Error& e) {
            found.emplace_back();
            summary.add_row({name, Cell{}, Cell{}, Cell{}, Cell{}});
            report.add_error("changepoints", name + ": " + e.what(), required && e.category() == Error::Category::numerical);
        }
    }
    return found;
}

void add_fit_section(Report& report, const PriceTable& table, const std::string& column,
                     const std::vector<std::pair<std::size_t, std::size_t>>& segments,
                     const std::vector<Family>& families) {
    std::vector<std::string> cols{"column", "segment", "n"};
    for (auto f : families) {
        cols.push_back(std::string(family_name(f)) + "_aic");
        cols.push_back(std::string(family_name(f)) + "_bic");
    }
    cols.insert(cols.end(), {"best_model", "best_fit"});
    Table* t = &report.table("fits", cols);
    const auto& values = table.column(column).values;
    for (const auto& [begin, end] : segments) {
        if (begin >= end || end > values.size()) throw ConfigurationError("segment outside the series");
        const std::span<const double> seg(values.data() + begin, end - begin);
        const std::string label = std::to_string(begin + 1) + "-" + std::to_string(end);
        std::vector<Cell> row{column, label, static_cast<std::int64_t>(seg.size())};
        std::optional<FitResult> best;
        for (auto f : families) {
            try {
                const FitResult r = fit_mle(seg, f);
                row.push_back(r.aic);
                row.push_back(r.bic);
                if (!best || r.aic < best->aic) best = r;
            } catch (const Error& e) {
                row.push_back(Cell{});
                row.push_back(Cell{});
                report.add_error("fits", column + " " + label + " " + std::string(family_name(f)) + ": " + e.what());
            }
        }
        row.push_back(best ? Cell{std::string(family_name(family_of(best->spec)))} : Cell{});
        row.push_back(best ? Cell{to_string(best->spec)} : Cell{});
        t->add_row(std::move(row));
    }
}

void add_memory_section(Report& report, const PriceTable& table, const std::vector<std::string>& columns,
                        double bandwidth_exponent, bool required) {
    Table& t = report.add_table("memory", {"column", "hurst", "gph_d", "gph_standard_error", "gph_bandwidth"});
    std::vector<std::optional<MemoryReport>> results(columns.size());
    std::vector<std::string> errors(columns.size());
    parallel_for(columns.size(), [&](std::size_t k) {
        try {
            results[k] = memory_report(table.column(columns[k]).values, {}, bandwidth_exponent);
        } catch (const Error& e) {
            errors[k] = e.what();
        }
    });
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (results[k]) {
            t.add_row({columns[k], results[k]->hurst, results[k]->gph_d, results[k]->gph_standard_error,
                       static_cast<std::int64_t>(results[k]->gph_bandwidth)});
        } else {
            t.add_row({columns[k], Cell{}, Cell{}, Cell{}, Cell{}});
            report.add_error("memory", columns[k] + ": " + errors[k], required);
        }
    }
}

void add_tailcc_section(Report& report, const PriceTable& table, const std::vector<std::string>& columns,
                        const std::vector<std::size_t>& lags, const std::vector<QuantilePair>& pairs,
                        bool required) {
    if (columns.size() < 2) {
        report.add_error("tailcc", "tail cross-correlation needs at least two columns", required);
        return;
    }
    Table& lng = report.add_table("tailcc", {"qx", "qy", "lag", "x_column", "y_column", "tau", "threshold_x",
                                             "threshold_y", "n_exceed_x", "n_exceed_y", "n_joint", "n_pairs"});
    const auto cp = column_pairs(columns.size());
    std::vector<std::string> wide_cols{"qx", "qy"};
    for (std::size_t lag : lags)
        for (const auto& [a, b] : cp)
            wide_cols.push_back("lag" + std::to_string(lag) + " (" + columns[a] + "," + columns[b] + ")");
    std::vector<TailCCTable> profiles;
    for (const auto& [a, b] : cp)
        profiles.push_back(tail_cc_profile(table.column(columns[a]).values, table.column(columns[b]).values, lags, pairs));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (std::size_t l = 0; l < lags.size(); ++l) {
            for (std::size_t k = 0; k < cp.size(); ++k) {
                const TailCCCell& cell = profiles[k].at(p, l);
                std::vector<Cell> row{pairs[p].qx, pairs[p].qy, static_cast<std::int64_t>(lags[l]), columns[cp[k].first],
                                      columns[cp[k].second]};
                if (cell.estimate) {
                    const auto& e = *cell.estimate;
                    row.insert(row.end(), {e.tau, e.threshold_x, e.threshold_y, static_cast<std::int64_t>(e.n_exceed_x),
                                           static_cast<std::int64_t>(e.n_exceed_y), static_cast<std::int64_t>(e.n_joint),
                                           static_cast<std::int64_t>(e.n_pairs)});
                } else {
                    row.resize(lng.columns.size());
                    report.add_error("tailcc", columns[cp[k].first] + "," + columns[cp[k].second] + " lag " +
                                                   std::to_string(lags[l]) + ": " + cell.error);
                }
                lng.add_row(std::move(row));
            }
        }
    }
    Table& wide = report.add_table("tailcc_table", wide_cols);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::vector<Cell> row{pairs[p].qx, pairs[p].qy};
        for (std::size_t l = 0; l < lags.size(); ++l)
            for (std::size_t k = 0; k < cp.size(); ++k) {
                const auto& e = profiles[k].at(p, l).estimate;
                row.push_back(e ? Cell{e->tau} : Cell{});
            }
        wide.add_row(std::move(row));
    }
}

Report run_empirical_pipeline(const PriceTable& table, const PipelineConfig& config, Json resolved_config) {
    const auto columns = resolve_columns(table, config.columns);
    if (table.rows() < 500) throw InsufficientDataError("the empirical pipeline needs at least 500 rows");
    Report report("pipeline", std::move(resolved_config));
    report.results()["rows"] = table.rows();
    report.results()["columns"] = columns;

    add_dip_section(report, table, columns, config.dip_bootstrap, config.seed);
    const auto found = add_changepoint_section(report, table, columns, config.changepoints);
    for (std::size_t k = 0; k < columns.size(); ++k) {
        // Without change points the whole series is one segment.
        const std::size_t n = table.column(columns[k]).values.size();
        const auto segments = found[k] ? found[k]->segments(n) : std::vector<std::pair<std::size_t, std::size_t>>{{0, n}};
        add_fit_section(report, table, columns[k], segments, config.families);
    }
    add_memory_section(report, table, columns, config.gph_bandwidth_exponent);
    const auto pairs = config.quantile_pairs.empty() ? default_quantile_pairs() : config.quantile_pairs;
    add_tailcc_section(report, table, columns, config.lags, pairs);
    return report;
}

}  // namespace taildep::cli
