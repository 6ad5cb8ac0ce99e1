#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace sle {

// Tolerances for the tanh-sinh rule. Defaults keep the exact oracles several
// orders of magnitude below Monte Carlo error.
struct Quadrature {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_refinement_level = 12;
};

class quadrature_error : public std::runtime_error {
  public:
    quadrature_error(const std::string& msg, std::complex<double> best)
        : std::runtime_error(msg), best_estimate(best) {}
    std::complex<double> best_estimate;
};

namespace detail {

// One tanh-sinh node: abscissa is reported through its distance to each
// endpoint so integrands with algebraic endpoint singularities (exponent
// > -1) can be evaluated without cancellation.
struct TsNode {
    double comp;   // 1 - |tanh((pi/2) sinh t)|, in (0,1]
    double weight; // (pi/2) cosh(t) sech^2((pi/2) sinh t)
};

inline TsNode ts_node(double t) {
    const double half_pi = 1.5707963267948966;
    const double u = half_pi * std::sinh(t);
    TsNode n;
    if (u > 350.0) {
        n.comp = 0.0;
        n.weight = 0.0;
        return n;
    }
    const double e = std::exp(-2.0 * u);
    n.comp = 2.0 * e / (1.0 + e);
    n.weight = half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    return n;
}

// Double-exponential quadrature of f over [lo, hi]; f may return double or
// std::complex<double>. Level l uses step h = 2^-l, reusing all prior nodes.
template <typename F>
auto tanh_sinh(F&& f, double lo, double hi, const Quadrature& quad)
    -> decltype(f(lo)) {
    using V = decltype(f(lo));
    const double d = 0.5 * (hi - lo);
    const double t_max = 6.12; // comp underflows past here
    const double comp_floor = 1e-280;

    auto eval_pair = [&](double t) -> V {
        const TsNode n = ts_node(t);
        if (n.comp < comp_floor || n.weight == 0.0)
            return V(0);
        // node on the hi side (t >= 0) and its mirror on the lo side
        const double x_hi = hi - d * n.comp;
        const double x_lo = lo + d * n.comp;
        if (t == 0.0)
            return n.weight * f(x_hi); // center node, counted once
        return n.weight * (f(x_hi) + f(x_lo));
    };

    double h = 1.0;
    V sum = eval_pair(0.0);
    for (int k = 1; k * h <= t_max; ++k)
        sum = sum + eval_pair(k * h);

    V best = d * h * sum;
    for (int level = 1; level <= quad.max_refinement_level; ++level) {
        h *= 0.5;
        // new nodes at odd multiples of h
        for (int k = 1; k * h <= t_max; k += 2)
            sum = sum + eval_pair(k * h);
        const V estimate = d * h * sum;
        const double delta = std::abs(estimate - best);
        best = estimate;
        if (level >= 3 &&
            delta <= std::max(quad.abs_tol, quad.rel_tol * std::abs(estimate)))
            return best;
    }
    throw quadrature_error("tanh-sinh did not converge after " +
                               std::to_string(quad.max_refinement_level) +
                               " refinement levels",
                           std::complex<double>(best));
}

} // namespace detail

// Integral of f over [lo, hi]. Endpoint singularities of exponent > -1 are
// absorbed by the double-exponential transformation.
template <typename F>
double integrate_segment(F&& f, double lo, double hi, const Quadrature& quad = {}) {
    if (!(lo < hi)) {
        if (lo == hi)
            return 0.0;
        throw std::domain_error("integrate_segment: requires lo <= hi");
    }
    return detail::tanh_sinh(f, lo, hi, quad);
}

// Complex line integral of g along the straight segment from 0 to endpoint,
// allowing an integrable singularity at 0.
template <typename G>
std::complex<double> integrate_ray(G&& g, std::complex<double> endpoint,
                                   const Quadrature& quad = {}) {
    if (endpoint == std::complex<double>(0.0, 0.0))
        return {0.0, 0.0};
    auto integrand = [&](double s) { return g(endpoint * s) * endpoint; };
    return detail::tanh_sinh(integrand, 0.0, 1.0, quad);
}

} // namespace sle
