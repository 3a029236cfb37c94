#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "taildep/cli/price_table.hpp"
#include "taildep/cli/report.hpp"
#include "taildep/distributions.hpp"
#include "taildep/structure_tests.hpp"
#include "taildep/tail_cc.hpp"

namespace taildep::cli {

struct PipelineConfig {
    std::vector<std::string> columns;  // empty: all
    std::size_t dip_bootstrap = 2000;
    ChangePointOptions changepoints{5, 100, 0.05};
    std::vector<Family> families{Family::pareto, Family::cauchy, Family::weibull};
    double gph_bandwidth_exponent = 0.5;
    std::vector<std::size_t> lags{1, 3, 5, 7, 30, 100};
    std::vector<QuantilePair> quantile_pairs;  // empty: the 3x3 grid over {0.75, 0.85, 0.95}
    std::uint64_t seed = 0;
};

PipelineConfig pipeline_from_json(const Json& config);
Json pipeline_to_json(const PipelineConfig& config);

// Column pairs in the order (c0,c1), (c1,c2), ..., then (c0,c2), ...: grouped by gap.
std::vector<std::pair<std::size_t, std::size_t>> column_pairs(std::size_t n_columns);

std::vector<QuantilePair> default_quantile_pairs();

std::vector<std::string> resolve_columns(const PriceTable& table, const std::vector<std::string>& wanted);

// Section builders shared with the single-purpose subcommands. With `required`
// set, a numerical failure marks the report as failed.
void add_dip_section(Report& report, const PriceTable& table, const std::vector<std::string>& columns,
                     std::size_t n_bootstrap, std::uint64_t seed, bool required = false);
std::vector<std::optional<ChangePointResult>> add_changepoint_section(Report& report, const PriceTable& table,
                                                                      const std::vector<std::string>& columns,
                                                                      const ChangePointOptions& options,
                                                                      bool required = false);
void add_fit_section(Report& report, const PriceTable& table, const std::string& column,
                     const std::vector<std::pair<std::size_t, std::size_t>>& segments,
                     const std::vector<Family>& families);
void add_memory_section(Report& report, const PriceTable& table, const std::vector<std::string>& columns,
                        double bandwidth_exponent, bool required = false);
void add_tailcc_section(Report& report, const PriceTable& table, const std::vector<std::string>& columns,
                        const std::vector<std::size_t>& lags, const std::vector<QuantilePair>& pairs,
                        bool required = false);

Report run_empirical_pipeline(const PriceTable& table, const PipelineConfig& config, Json resolved_config);

}  // namespace taildep::cli
