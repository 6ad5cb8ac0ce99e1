#include "sle/params.hpp"

#include <cstdlib>

namespace sle {

double parse_kappa(const std::string& text) {
    const auto slash = text.find('/');
    char* end = nullptr;
    if (slash == std::string::npos) {
        const double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0')
            throw std::domain_error("parse_kappa: cannot parse '" + text + "'");
        return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double n = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0')
        throw std::domain_error("parse_kappa: cannot parse '" + text + "'");
    const double d = std::strtod(den.c_str(), &end);
    if (end == den.c_str() || *end != '\0' || d == 0.0)
        throw std::domain_error("parse_kappa: cannot parse '" + text + "'");
    return n / d;
}

} // namespace sle
