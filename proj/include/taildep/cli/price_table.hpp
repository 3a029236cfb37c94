#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace taildep::cli {

struct PriceColumn {
    std::string name;
    std::vector<double> values;
};

struct PriceTable {
    std::string timestamp_name;
    std::vector<std::string> timestamps;     // as written in the file
    std::vector<std::int64_t> time_keys;     // epoch value, or epoch milliseconds for ISO-8601
    std::vector<PriceColumn> columns;

    std::size_t rows() const { return timestamps.size(); }
    const PriceColumn& column(const std::string& name) const;
};

struct ColumnSpec {
    std::optional<std::string> timestamp_column;  // default: first header field
    std::vector<std::string> value_columns;       // default: every other column
};

// Integer epoch or ISO-8601 date / date-time (optional fraction, optional Z).
std::optional<std::int64_t> parse_timestamp(const std::string& text);

PriceTable read_csv(std::istream& in, const ColumnSpec& spec, const std::string& source = "<input>");
PriceTable ingest_csv(const std::filesystem::path& path, const ColumnSpec& spec = {});

}  // namespace taildep::cli
