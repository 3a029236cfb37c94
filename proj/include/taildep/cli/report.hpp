#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "taildep/cli/config.hpp"

namespace taildep::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// Shortest text that reads back to the same double (at most 17 significant digits).
std::string format_double(double v);

// Assembles one command's output: resolved configuration, scalar results,
// tables and per-section errors. Nothing time- or host-dependent is recorded,
// so identical invocations give identical bytes.
class Report {
public:
    Report(std::string command, Json config);

    Json& results() { return results_; }
    const Json& results() const { return results_; }
    Table& add_table(std::string name, std::vector<std::string> columns);
    const std::deque<Table>& tables() const { return tables_; }
    const Table* find_table(const std::string& name) const;
    // Existing table of that name, or a new one with the given columns.
    Table& table(const std::string& name, std::vector<std::string> columns);

    void add_error(const std::string& section, const std::string& message, bool required = false);
    bool has_required_failure() const { return required_failure_; }
    const Json& errors() const { return errors_; }

    Json to_json() const;
    std::string json_text() const;
    std::string csv_text(const Table& table) const;

    // Writes <name>.report.json and <name>.<table>.csv into dir.
    std::vector<std::filesystem::path> write(const std::filesystem::path& dir, const std::string& name) const;

    // 3-decimal rendering for terminals.
    void print_human(std::ostream& out) const;

private:
    std::string command_;
    Json config_;
    Json results_ = Json::object();
    Json errors_ = Json::array();
    std::deque<Table> tables_;  // stable references across add_table
    bool required_failure_ = false;
};

}  // namespace taildep::cli
