#include "taildep/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "taildep/errors.hpp"

namespace taildep::cli {

namespace {

Json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_csv(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_double(v) : "";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return csv_escape(v);
            }
        },
        c);
}

std::string cell_human(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "-";
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return "-";
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.3f", v);
                return buf;
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        c);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw NumericalError("table '" + name + "' row width mismatch");
    rows.push_back(std::move(row));
}

Report::Report(std::string command, Json config) : command_(std::move(command)), config_(std::move(config)) {}

Table& Report::add_table(std::string name, std::vector<std::string> columns) {
    tables_.push_back(Table{std::move(name), std::move(columns), {}});
    return tables_.back();
}

const Table* Report::find_table(const std::string& name) const {
    for (const auto& t : tables_)
        if (t.name == name) return &t;
    return nullptr;
}

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
    for (auto& t : tables_)
        if (t.name == name) return t;
    return add_table(name, std::move(columns));
}

void Report::add_error(const std::string& section, const std::string& message, bool required) {
    errors_.push_back(Json{{"section", section}, {"message", message}, {"required", required}});
    required_failure_ = required_failure_ || required;
}

Json Report::to_json() const {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command_;
    doc["config"] = config_;
    doc["results"] = results_;
    Json tables = Json::object();
    for (const auto& t : tables_) {
        Json rows = Json::array();
        for (const auto& r : t.rows) {
            Json row = Json::array();
            for (const auto& c : r) row.push_back(cell_json(c));
            rows.push_back(std::move(row));
        }
        tables[t.name] = Json{{"columns", t.columns}, {"rows", std::move(rows)}};
    }
    doc["tables"] = std::move(tables);
    doc["errors"] = errors_;
    return doc;
}

std::string Report::json_text() const { return to_json().dump(2) + "\n"; }

std::string Report::csv_text(const Table& table) const {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + csv_escape(table.columns[i]);
    out += "\n";
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell_csv(r[i]);
        out += "\n";
    }
    return out;
}

std::vector<std::filesystem::path> Report::write(const std::filesystem::path& dir, const std::string& name) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigurationError("cannot create output directory " + dir.string());
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw ConfigurationError("cannot write " + p.string());
        out << text;
        written.push_back(p);
    };
    put(dir / (name + ".report.json"), json_text());
    for (const auto& t : tables_) put(dir / (name + "." + t.name + ".csv"), csv_text(t));
    return written;
}

void Report::print_human(std::ostream& out) const {
    for (const auto& [key, value] : results_.items()) {
        if (value.is_number_float()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", value.get<double>());
            out << key << ": " << buf << "\n";
        } else if (!value.is_structured()) {
            out << key << ": " << value.dump() << "\n";
        }
    }
    for (const auto& t : tables_) {
        out << "\n[" << t.name << "]\n";
        std::vector<std::vector<std::string>> text;
        std::vector<std::size_t> width(t.columns.size());
        for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
        for (const auto& r : t.rows) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line.push_back(cell_human(r[i]));
                width[i] = std::max(width[i], line.back().size());
            }
            text.push_back(std::move(line));
        }
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << t.columns[i];
        out << "\n";
        for (const auto& line : text) {
            for (std::size_t i = 0; i < line.size(); ++i)
                out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
            out << "\n";
        }
    }
    for (const auto& e : errors_) out << "error [" << e["section"].get<std::string>() << "]: " << e["message"].get<std::string>() << "\n";
}

}  // namespace taildep::cli
