#pragma once

namespace sle {

// ln Gamma(x) for x > 0, relative error below 1e-13 on [0.01, 50].
double log_gamma(double x);

// Regularized incomplete beta I_s(p, q) for s in [0,1], p, q > 0.
double regularized_incomplete_beta(double s, double p, double q);

// ln B(p, q) = ln Gamma(p) + ln Gamma(q) - ln Gamma(p+q).
double log_beta(double p, double q);

} // namespace sle
