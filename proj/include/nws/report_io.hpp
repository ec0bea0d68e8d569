#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "nws/field.hpp"

namespace nws::io {

/// Full-precision CSV cell: %.17g, '.' separator, locale-independent.
std::string csv_number(double v);

/// Writes bytes exactly as given (binary mode, unix newlines).
void write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Field as CSV: one header row naming every column (x[,y[,z]],value), one
/// row per grid point in row-major order.
std::string field_csv(const Field& field, const std::string& value_column);

} // namespace nws::io
