#pragma once

#include <stdexcept>
#include <string>

namespace sle {

// Loud regime failures: a silent 0 for the wrong regime would be
// mathematically true but masks caller confusion.
class regime_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

enum class Regime { Simple, Touching };

// kappa in (0,8) with the derived exponent a = 2/kappa.
// kappa <= 4 gives a simple curve, 4 < kappa < 8 a self-touching one.
struct SleParams {
    double kappa;
    double a;

    explicit SleParams(double kappa_) : kappa(kappa_), a(2.0 / kappa_) {
        if (!(kappa > 0.0) || !(kappa < 8.0))
            throw std::domain_error("SleParams: kappa must lie in (0,8), got " +
                                    std::to_string(kappa_));
    }

    Regime regime() const { return kappa <= 4.0 ? Regime::Simple : Regime::Touching; }
    bool simple() const { return regime() == Regime::Simple; }
    bool touching() const { return regime() == Regime::Touching; }

    void require_touching(const char* what) const {
        if (!touching())
            throw regime_error(std::string(what) +
                               ": requires 4 < kappa < 8 (self-touching regime), got kappa = " +
                               std::to_string(kappa));
    }
    void require_simple(const char* what) const {
        if (!simple())
            throw regime_error(std::string(what) +
                               ": requires kappa <= 4 (simple-curve regime), got kappa = " +
                               std::to_string(kappa));
    }
};

// Accepts plain decimals and fractions like "8/3" so special points are exact.
double parse_kappa(const std::string& text);

} // namespace sle
