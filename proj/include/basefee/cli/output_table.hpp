#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace basefee::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// A CSV table with a `# key=value` metadata preamble.
///
/// Numbers are written with 12 significant digits and '.' as the decimal
/// separator; strings are quoted per RFC 4180 when needed.
class OutputTable
{
public:
    OutputTable(std::string schema, std::vector<std::string> columns);

    std::string const& schema() const { return schema_; }
    std::vector<std::string> const& columns() const { return columns_; }
    std::vector<std::vector<Cell>> const& rows() const { return rows_; }
    std::vector<std::pair<std::string, std::string>> const& metadata() const { return metadata_; }

    /// Throws std::invalid_argument on arity mismatch.
    void add_row(std::vector<Cell> row);

    /// Appends, or replaces the value of an existing key.
    void set_meta(std::string key, std::string value);
    void set_meta(std::string key, double value);

    std::string const* meta(std::string const& key) const;
    std::size_t column_index(std::string const& name) const;

    void write_csv(std::ostream& os) const;
    std::string to_csv() const;

private:
    std::string schema_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

std::string format_number(double value);
std::string format_cell(Cell const& cell);

}  // namespace basefee::cli
