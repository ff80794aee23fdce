#include "basefee/cli/output_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace basefee::cli {

namespace {

std::string quote_if_needed(std::string const& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (value == 0.0)
        return "0";  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string format_cell(Cell const& cell)
{
    if (auto const* d = std::get_if<double>(&cell))
        return format_number(*d);
    if (auto const* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    return quote_if_needed(std::get<std::string>(cell));
}

OutputTable::OutputTable(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns))
{
    if (columns_.empty())
        throw std::invalid_argument("table needs at least one column");
}

void OutputTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns_.size())
        throw std::invalid_argument("row arity does not match schema '" + schema_ + "'");
    rows_.push_back(std::move(row));
}

void OutputTable::set_meta(std::string key, std::string value)
{
    if (key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos)
        throw std::invalid_argument("metadata keys may not contain '=' or newlines");
    for (auto& [k, v] : metadata_)
    {
        if (k == key)
        {
            v = std::move(value);
            return;
        }
    }
    metadata_.emplace_back(std::move(key), std::move(value));
}

void OutputTable::set_meta(std::string key, double value)
{
    set_meta(std::move(key), format_number(value));
}

std::string const* OutputTable::meta(std::string const& key) const
{
    for (auto const& [k, v] : metadata_)
    {
        if (k == key)
            return &v;
    }
    return nullptr;
}

std::size_t OutputTable::column_index(std::string const& name) const
{
    auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end())
        throw std::out_of_range("no column '" + name + "'");
    return static_cast<std::size_t>(it - columns_.begin());
}

void OutputTable::write_csv(std::ostream& os) const
{
    os << "# schema=" << schema_ << '\n';
    for (auto const& [k, v] : metadata_)
        os << "# " << k << '=' << v << '\n';

    for (std::size_t i = 0; i < columns_.size(); ++i)
        os << (i ? "," : "") << quote_if_needed(columns_[i]);
    os << '\n';
    for (auto const& row : rows_)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

std::string OutputTable::to_csv() const
{
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

}  // namespace basefee::cli
