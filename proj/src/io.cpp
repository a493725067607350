#include "flucto/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace flucto {

void ColumnTable::add_meta(const std::string& key, const std::string& value) {
    meta.emplace_back(key, value);
}

void ColumnTable::add_meta(const std::string& key, double value) {
    meta.emplace_back(key, format_g17(value));
}

void ColumnTable::add_column(const std::string& name, std::vector<double> values) {
    if (!columns.empty() && values.size() != columns.front().size())
        throw std::invalid_argument("column '" + name + "' has mismatched length");
    names.push_back(name);
    columns.push_back(std::move(values));
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const ColumnTable& t) {
    std::ostringstream out;
    for (const auto& [k, v] : t.meta) out << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < t.names.size(); ++c)
        out << (c ? "," : "") << t.names[c];
    out << "\n";
    const std::size_t rows = t.columns.empty() ? 0 : t.columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            out << (c ? "," : "") << format_g17(t.columns[c][r]);
        out << "\n";
    }
    return out.str();
}

std::string to_json(const ColumnTable& t) {
    nlohmann::json j;
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    for (std::size_t c = 0; c < t.names.size(); ++c)
        j["columns"][t.names[c]] = t.columns[c];
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FileError("cannot open '" + path +
                        "' for writing (check the directory exists and is "
                        "writable)");
    out << content;
    if (!out) throw FileError("write to '" + path + "' failed");
}

}  // namespace flucto
