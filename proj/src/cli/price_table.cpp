#include "taildep/cli/price_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "taildep/errors.hpp"

namespace taildep::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Comma-separated fields with optional double-quoted fields ("" escapes a quote).
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_int(std::string_view s, std::int64_t& v) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Days since 1970-01-01 of a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

const PriceColumn& PriceTable::column(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return c;
    throw DataError("price table has no column '" + name + "'");
}

std::optional<std::int64_t> parse_timestamp(const std::string& text) {
    const std::string s = trim(text);
    std::int64_t v = 0;
    if (parse_int(s, v)) return v;
    // YYYY-MM-DD[(T| )HH:MM[:SS[.fff]]][Z]
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    std::int64_t year = 0, month = 0, day = 0;
    if (!parse_int(std::string_view(s).substr(0, 4), year) || !parse_int(std::string_view(s).substr(5, 2), month) ||
        !parse_int(std::string_view(s).substr(8, 2), day))
        return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
    std::int64_t ms = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400000LL;
    std::string_view rest = std::string_view(s).substr(10);
    if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
    if (rest.empty()) return ms;
    if (rest[0] != 'T' && rest[0] != ' ') return std::nullopt;
    rest.remove_prefix(1);
    std::int64_t hh = 0, mm = 0, ss = 0, frac_ms = 0;
    if (rest.size() < 5 || rest[2] != ':' || !parse_int(rest.substr(0, 2), hh) || !parse_int(rest.substr(3, 2), mm))
        return std::nullopt;
    rest.remove_prefix(5);
    if (!rest.empty()) {
        if (rest[0] != ':' || rest.size() < 3 || !parse_int(rest.substr(1, 2), ss)) return std::nullopt;
        rest.remove_prefix(3);
        if (!rest.empty()) {
            if (rest[0] != '.' || rest.size() < 2) return std::nullopt;
            std::string digits(rest.substr(1));
            if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
                return std::nullopt;
            digits.resize(3, '0');
            parse_int(digits, frac_ms);
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    return ms + ((hh * 60 + mm) * 60 + ss) * 1000 + frac_ms;
}

PriceTable read_csv(std::istream& in, const ColumnSpec& spec, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (!trim(line).empty()) {
            header = split_fields(line);
            break;
        }
    }
    if (header.empty()) throw DataError(source + ": missing header row");

    auto index_of = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DataError(source + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ts_idx = spec.timestamp_column ? index_of(*spec.timestamp_column) : 0;
    std::vector<std::size_t> value_idx;
    if (spec.value_columns.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (i != ts_idx) value_idx.push_back(i);
    } else {
        for (const auto& name : spec.value_columns) value_idx.push_back(index_of(name));
    }
    if (value_idx.empty()) throw DataError(source + ": no value columns");

    PriceTable table;
    table.timestamp_name = header[ts_idx];
    for (std::size_t i : value_idx) table.columns.push_back({header[i], {}});

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        const std::string where = source + " line " + std::to_string(line_no);
        if (fields.size() != header.size())
            throw DataError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
        const auto key = parse_timestamp(fields[ts_idx]);
        if (!key) throw DataError(where + ": cannot parse timestamp '" + fields[ts_idx] + "'");
        if (!table.time_keys.empty() && *key <= table.time_keys.back())
            throw DataError(where + ": timestamps are not strictly increasing");
        table.timestamps.push_back(fields[ts_idx]);
        table.time_keys.push_back(*key);
        for (std::size_t c = 0; c < value_idx.size(); ++c) {
            const std::string& cell = fields[value_idx[c]];
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v))
                throw DataError(where + ": column '" + table.columns[c].name + "': cannot parse '" + cell +
                                "' as a number");
            table.columns[c].values.push_back(v);
        }
    }
    if (table.rows() == 0) throw DataError(source + ": no data rows");
    return table;
}

PriceTable ingest_csv(const std::filesystem::path& path, const ColumnSpec& spec) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file " + path.string());
    return read_csv(in, spec, path.string());
}

}  // namespace taildep::cli
