#include "taildep/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

namespace taildep::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_numbers(std::string_view body, const std::string& context) {
    std::vector<double> out;
    while (true) {
        const auto comma = body.find(',');
        const auto tok = trim(body.substr(0, comma));
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ConfigurationError("bad number in '" + context + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

const Json& require(const Json& obj, const std::string& key) {
    if (!obj.is_object() || !obj.contains(key)) throw ConfigurationError("missing configuration key '" + key + "'");
    return obj.at(key);
}

}  // namespace

Json load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open configuration file " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigurationError("configuration file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigurationError("configuration file must hold a JSON object");
    if (doc.contains("schema_version") && doc["schema_version"] != kSchemaVersion)
        throw ConfigurationError("unsupported configuration schema_version");
    return doc;
}

double get_double(const Json& obj, const std::string& key) {
    const Json& v = require(obj, key);
    if (!v.is_number()) throw ConfigurationError("configuration key '" + key + "' must be a number");
    return v.get<double>();
}

std::int64_t get_int(const Json& obj, const std::string& key) {
    const Json& v = require(obj, key);
    if (!v.is_number_integer()) throw ConfigurationError("configuration key '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::uint64_t get_seed(const Json& obj, const std::string& key) {
    const Json& v = require(obj, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ConfigurationError("configuration key '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const Json& obj, const std::string& key) {
    const Json& v = require(obj, key);
    if (!v.is_string()) throw ConfigurationError("configuration key '" + key + "' must be a string");
    return v.get<std::string>();
}

CoefficientScheme parse_scheme(const std::string& text) {
    const auto t = trim(text);
    const auto open = t.find('(');
    if (open == std::string_view::npos || t.back() != ')')
        throw ConfigurationError("coefficient scheme must look like kind(values): '" + text + "'");
    const std::string kind(trim(t.substr(0, open)));
    const auto values = parse_numbers(t.substr(open + 1, t.size() - open - 2), text);
    CoefficientScheme scheme;
    if (kind == "exponential" && values.size() == 1) {
        scheme = Exponential{values[0]};
    } else if ((kind == "power_law" || kind == "powerlaw") && values.size() == 1) {
        scheme = PowerLaw{values[0]};
    } else if (kind == "explicit") {
        scheme = Explicit{values};
    } else {
        throw ConfigurationError("unknown coefficient scheme '" + text + "'");
    }
    validate(scheme);
    return scheme;
}

InnovationPlan parse_plan(const std::string& text) {
    const auto t = trim(text);
    if (t == "schedule:pareto") return pareto_schedule();
    if (t == "schedule:cauchy") return cauchy_schedule();
    constexpr std::string_view prefix = "per_index:[";
    if (t.substr(0, prefix.size()) == prefix) {
        if (t.back() != ']') throw ConfigurationError("unterminated per-index list in '" + text + "'");
        std::string_view body = t.substr(prefix.size(), t.size() - prefix.size() - 1);
        PerIndexPlan plan;
        while (true) {
            const auto semi = body.find(';');
            plan.specs.push_back(parse_spec(body.substr(0, semi)));
            if (semi == std::string_view::npos) break;
            body.remove_prefix(semi + 1);
        }
        return plan;
    }
    return IidPlan{parse_spec(t)};
}

}  // namespace taildep::cli
