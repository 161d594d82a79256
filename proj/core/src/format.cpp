#include "sumnorm/format.hpp"

#include <cmath>
#include <cstdio>

namespace sumnorm {

std::string format_fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string out(buf);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
        out.erase(0, 1);
    }
    return out;
}

std::string format_statistic(double t) {
    if (t != 0.0 && std::fabs(t) < 1e-6) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", t);
        return buf;
    }
    return format_fixed(t, 3);
}

std::string format_p_value(double p) {
    if (p < 0.001) {
        return "<0.001";
    }
    return format_fixed(p, 3);
}

}  // namespace sumnorm
