#include "nws/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nws/errors.hpp"

namespace nws::io {

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DomainError("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw DomainError("failed writing '" + path.string() + "'");
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string field_csv(const Field& field, const std::string& value_column) {
    static const char* axis_names[3] = {"x", "y", "z"};
    std::string out;
    for (int a = 0; a < field.grid.dim; ++a) {
        out += axis_names[a];
        out += ',';
    }
    out += value_column;
    out += '\n';
    const std::int64_t total = field.grid.total_points();
    for (std::int64_t i = 0; i < total; ++i) {
        const Coord p = field.grid.point(i);
        for (int a = 0; a < field.grid.dim; ++a) {
            out += csv_number(p[a]);
            out += ',';
        }
        out += csv_number(field.values[static_cast<std::size_t>(i)]);
        out += '\n';
    }
    return out;
}

} // namespace nws::io
