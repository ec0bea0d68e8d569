#include "nws/format.hpp"

#include <cstdio>
#include <cstdlib>

#include "nws/errors.hpp"

namespace nws {

std::string format_double(double v) {
    char buf[64];
    // The shortest round-trip representation keeps descriptors and CSV cells
    // readable; %.17g is the fallback that always round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) {
            return buf;
        }
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& text) {
    if (text.empty()) {
        throw DomainError("parse_double: empty numeric field");
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
        throw DomainError("parse_double: invalid numeric value '" + text + "'");
    }
    return v;
}

} // namespace nws
