#pragma once

#include <string>

namespace nws {

/// Shortest decimal form that parses back to exactly the same double, capped
/// at 17 significant digits. Locale-independent ('.' separator, C format).
std::string format_double(double v);

/// strtod with full-string validation; throws DomainError on trailing junk.
double parse_double(const std::string& text);

} // namespace nws
