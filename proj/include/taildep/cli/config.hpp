#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "taildep/distributions.hpp"
#include "taildep/linear_process.hpp"

namespace taildep::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Reads a configuration file; rejects files whose schema_version differs.
Json load_config(const std::filesystem::path& path);

// Typed accessors that raise ConfigurationError naming the offending key.
double get_double(const Json& obj, const std::string& key);
std::int64_t get_int(const Json& obj, const std::string& key);
std::uint64_t get_seed(const Json& obj, const std::string& key = "seed");
std::string get_string(const Json& obj, const std::string& key);

// "exponential(0.5)", "power_law(2)", "explicit(1,0.4,0.2)".
CoefficientScheme parse_scheme(const std::string& text);

// "pareto(3,1)" for IID, "schedule:pareto" / "schedule:cauchy" for the
// five-index non-identical schedules, "per_index:[a;b;...]" for explicit lists.
InnovationPlan parse_plan(const std::string& text);

}  // namespace taildep::cli
