#pragma once

#include <complex>

#include "sle/params.hpp"
#include "sle/quadrature.hpp"

namespace sle {

using cplx = std::complex<double>;

// Third vertex F(infinity) of the image triangle of the Schwarz-Christoffel
// map, with the quantities the identities constrain.
struct TriangleVertexData {
    cplx vertex;
    double interior_angle_factor; // (1 - 2a) * pi
    double side_check;            // |vertex - 1|
};

// Barycentric split of the swallowing order of z against the point 1:
// P{T_z < T_1}, P{T_z = T_1}, P{T_z > T_1}.
struct SwallowSplit {
    double p_before;
    double p_same;
    double p_after;
};

struct SwallowConstants {
    double c_tilde;     // Gamma(2a) / (Gamma(1-2a) Gamma(4a-1))
    double c_dbl_prime; // 2^{1-4a} c_tilde / (4a-1)
};

// P{curve hits C(x; rx)} at kappa = 8/3: 1 - (1-r^2)^{5/8}.
double semicircle_hit_exact_83(double r);

// Restriction property at kappa = 8/3: avoidance probability is
// [Phi'(0)]^{5/8}.
double restriction_probability(double map_derivative_at_0);

// P{curve hits the interval [x-rx, x+rx]} for 4 < kappa < 8, as the
// regularized incomplete beta I_{2r/(1+r)}(4a-1, 1-2a).
double interval_hit_probability(double r, const SleParams& params);

// Schramm's left-passage probability f(theta) for a point at angle theta.
double left_passage_probability(double theta, const SleParams& params,
                                const Quadrature& quad = {});

// Explicit constant in the simple-regime lower bound c_a r^{4a-1}.
double lower_bound_constant_simple(const SleParams& params,
                                   const Quadrature& quad = {});

// Kernel of the two-sided ball estimate:
// (eps/Im z)^{1-1/(4a)} (Im z/|z|)^{4a-1}. Not a probability.
double beffara_kernel(cplx z, double eps, const SleParams& params);

// Schwarz-Christoffel map of H onto the isosceles triangle with vertices
// 0, 1, F(infinity), integrated along the straight ray from 0.
cplx sc_map_F(cplx w, const SleParams& params, const Quadrature& quad = {});

// F(infinity) from the Gamma-function closed form.
TriangleVertexData sc_vertex(const SleParams& params);

// Swallow-order probabilities of z relative to the point 1, solved from the
// barycentric identity F(z) = P{T_z = T_1} + F(infinity) P{T_z > T_1}.
SwallowSplit swallow_split(cplx z, const SleParams& params,
                           const Quadrature& quad = {});

SwallowConstants swallow_bound_constants(const SleParams& params);

// P{SLE_{8/3} from 0 to x hits C(0; Rx)} = 1 - (1 - R^{-2})^{5/8}, R >= 3.
double diameter_hit_exact_83(double R);

} // namespace sle
