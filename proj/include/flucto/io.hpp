#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flucto {

/// Unwritable or unreadable output target; callers treat this as a usage
/// error rather than a numerical one.
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Column-oriented numeric table with provenance metadata.  CSV output is
/// byte-stable: '#'-prefixed key=value lines, one plain header row, values
/// at 17 significant digits.
struct ColumnTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
    void add_column(const std::string& name, std::vector<double> values);
};

std::string format_g17(double v);

std::string to_csv(const ColumnTable& t);
std::string to_json(const ColumnTable& t);

/// Writes content to path, creating parent directories.  Throws
/// std::runtime_error with an actionable message on unwritable paths.
void write_file(const std::string& path, const std::string& content);

}  // namespace flucto
