#include "sle/formulas.hpp"

#include <cmath>

#include "sle/special_functions.hpp"

namespace sle {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.5707963267948966;

double c_tilde(double a) {
    return std::exp(log_gamma(2.0 * a) - log_gamma(1.0 - 2.0 * a) -
                    log_gamma(4.0 * a - 1.0));
}

// int_0^theta sin^p, folded onto [0, pi/2] so the singular endpoint always
// sits at 0 where both the abscissa and sin() are evaluated without
// cancellation (sin near pi loses relative accuracy and stalls tanh-sinh).
double sine_power_integral(double p, double theta, const Quadrature& quad) {
    auto integrand = [p](double alpha) { return std::pow(std::sin(alpha), p); };
    if (theta <= kHalfPi)
        return integrate_segment(integrand, 0.0, theta, quad);
    return integrate_segment(integrand, 0.0, kHalfPi, quad) +
           integrate_segment(integrand, kPi - theta, kHalfPi, quad);
}
} // namespace

double semicircle_hit_exact_83(double r) {
    if (!(r >= 0.0) || !(r < 1.0))
        throw std::domain_error("semicircle_hit_exact_83: requires 0 <= r < 1");
    if (r == 0.0)
        return 0.0;
    return -std::expm1(0.625 * std::log1p(-r * r));
}

double restriction_probability(double map_derivative_at_0) {
    if (!(map_derivative_at_0 > 0.0) || !(map_derivative_at_0 <= 1.0))
        throw std::domain_error("restriction_probability: requires argument in (0,1]");
    return std::pow(map_derivative_at_0, 0.625);
}

double interval_hit_probability(double r, const SleParams& params) {
    params.require_touching("interval_hit_probability");
    if (!(r > 0.0) || !(r < 1.0))
        throw std::domain_error("interval_hit_probability: requires 0 < r < 1");
    const double a = params.a;
    const double s = 2.0 * r / (1.0 + r);
    return regularized_incomplete_beta(s, 4.0 * a - 1.0, 1.0 - 2.0 * a);
}

double left_passage_probability(double theta, const SleParams& params,
                                const Quadrature& quad) {
    if (!(theta > 0.0) || !(theta < kPi))
        throw std::domain_error("left_passage_probability: requires theta in (0,pi)");
    const double p = 4.0 * params.a - 2.0; // > -1 for all kappa < 8
    const double num = sine_power_integral(p, theta, quad);
    const double den = 2.0 * sine_power_integral(p, kHalfPi, quad);
    return num / den;
}

double lower_bound_constant_simple(const SleParams& params, const Quadrature& quad) {
    params.require_simple("lower_bound_constant_simple");
    const double a = params.a;
    const double sine_integral =
        2.0 * sine_power_integral(4.0 * a - 2.0, kHalfPi, quad);
    return std::pow(kPi, 4.0 * a - 1.0) /
           (std::pow(4.0, 6.0 * a - 1.0) * (4.0 * a - 1.0) * sine_integral);
}

double beffara_kernel(cplx z, double eps, const SleParams& params) {
    const double y = z.imag();
    if (!(y > 0.0))
        throw std::domain_error("beffara_kernel: requires Im z > 0");
    if (!(eps > 0.0) || !(eps <= 0.5 * y))
        throw std::domain_error("beffara_kernel: requires 0 < eps <= Im(z)/2");
    const double a = params.a;
    return std::pow(eps / y, 1.0 - 1.0 / (4.0 * a)) *
           std::pow(y / std::abs(z), 4.0 * a - 1.0);
}

cplx sc_map_F(cplx w, const SleParams& params, const Quadrature& quad) {
    params.require_touching("sc_map_F");
    if (w.imag() < 0.0)
        throw std::domain_error("sc_map_F: requires Im w >= 0");
    if (w.imag() == 0.0 && w.real() > 1.0)
        throw std::domain_error("sc_map_F: real w > 1 lies on the branch cut");
    if (w == cplx(0.0, 0.0))
        return {0.0, 0.0};
    const double a = params.a;
    // real arguments in [0,1] reduce to the regularized incomplete beta of
    // the same parameters, which stays accurate at the w = 1 singularity
    if (w.imag() == 0.0 && w.real() > 0.0 && w.real() <= 1.0)
        return {regularized_incomplete_beta(w.real(), 1.0 - 2.0 * a,
                                            4.0 * a - 1.0),
                0.0};
    // principal branches; the ray from 0 stays inside the slit upper half plane
    auto integrand = [a](cplx zeta) {
        return std::pow(zeta, -2.0 * a) * std::pow(1.0 - zeta, 4.0 * a - 2.0);
    };
    return c_tilde(a) * integrate_ray(integrand, w, quad);
}

TriangleVertexData sc_vertex(const SleParams& params) {
    params.require_touching("sc_vertex");
    const double a = params.a;
    const double modulus =
        std::exp(log_gamma(2.0 * a) + log_gamma(1.0 - 2.0 * a) -
                 log_gamma(2.0 - 4.0 * a) - log_gamma(4.0 * a - 1.0));
    const double phi = (1.0 - 2.0 * a) * kPi;
    TriangleVertexData v;
    v.vertex = modulus * cplx(std::cos(phi), std::sin(phi));
    v.interior_angle_factor = phi;
    v.side_check = std::abs(v.vertex - cplx(1.0, 0.0));
    return v;
}

SwallowSplit swallow_split(cplx z, const SleParams& params, const Quadrature& quad) {
    params.require_touching("swallow_split");
    if (z == cplx(0.0, 0.0) || z == cplx(1.0, 0.0))
        throw std::domain_error("swallow_split: z must differ from 0 and 1");
    const cplx Fz = sc_map_F(z, params, quad);
    const TriangleVertexData vtx = sc_vertex(params);

    SwallowSplit s;
    s.p_after = Fz.imag() / vtx.vertex.imag();
    s.p_same = Fz.real() - vtx.vertex.real() * s.p_after;
    s.p_before = 1.0 - s.p_same - s.p_after;
    const double slack = 1e-6;
    for (double c : {s.p_before, s.p_same, s.p_after})
        if (c < -slack || c > 1.0 + slack)
            throw std::runtime_error(
                "swallow_split: barycentric component outside [0,1] beyond slack");
    auto clamp01 = [](double c) { return c < 0.0 ? 0.0 : (c > 1.0 ? 1.0 : c); };
    s.p_before = clamp01(s.p_before);
    s.p_same = clamp01(s.p_same);
    s.p_after = clamp01(s.p_after);
    return s;
}

SwallowConstants swallow_bound_constants(const SleParams& params) {
    params.require_touching("swallow_bound_constants");
    const double a = params.a;
    SwallowConstants c;
    c.c_tilde = c_tilde(a);
    c.c_dbl_prime = std::pow(2.0, 1.0 - 4.0 * a) * c.c_tilde / (4.0 * a - 1.0);
    return c;
}

double diameter_hit_exact_83(double R) {
    if (!(R >= 3.0))
        throw std::domain_error("diameter_hit_exact_83: requires R >= 3");
    return -std::expm1(0.625 * std::log1p(-1.0 / (R * R)));
}

} // namespace sle
