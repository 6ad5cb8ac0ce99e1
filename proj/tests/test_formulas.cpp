#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "sle/formulas.hpp"
#include "sle/quadrature.hpp"
#include "sle/special_functions.hpp"

using namespace sle;

namespace {
constexpr double kPi = 3.14159265358979323846;
const SleParams kKappa2(2.0);
const SleParams kKappa83(8.0 / 3.0);
const SleParams kKappa6(6.0);
} // namespace

TEST_CASE("semicircle hit at kappa=8/3") {
    CHECK(semicircle_hit_exact_83(0.0) == 0.0);
    CHECK(semicircle_hit_exact_83(0.25) ==
          doctest::Approx(0.039533884821712980).epsilon(1e-13));
    // small-r asymptotics: p(r)/r^2 -> 5/8
    const double r = 1e-6;
    CHECK(semicircle_hit_exact_83(r) / (r * r) == doctest::Approx(0.625).epsilon(1e-9));
    // strictly increasing
    double prev = 0.0;
    for (double rr = 0.05; rr < 1.0; rr += 0.05) {
        const double v = semicircle_hit_exact_83(rr);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(semicircle_hit_exact_83(1.0), std::domain_error);
    CHECK_THROWS_AS(semicircle_hit_exact_83(-0.1), std::domain_error);
}

TEST_CASE("restriction probability and the complement identity") {
    CHECK(restriction_probability(1.0) == 1.0);
    CHECK(restriction_probability(0.5) ==
          doctest::Approx(0.64841977732550483).epsilon(1e-13));
    CHECK(restriction_probability(0.5) ==
          doctest::Approx(std::exp(0.625 * std::log(0.5))).epsilon(1e-14));
    for (double r = 0.02; r <= 1.0 / 3.0; r += 0.02)
        CHECK(1.0 - restriction_probability(1.0 - r * r) ==
              doctest::Approx(semicircle_hit_exact_83(r)).epsilon(1e-12));
    CHECK_THROWS_AS(restriction_probability(0.0), std::domain_error);
    CHECK_THROWS_AS(restriction_probability(1.5), std::domain_error);
}

TEST_CASE("interval hit probability: beta identity and quadrature cross-check") {
    const SleParams params(20.0 / 3.0); // a = 0.3
    const double r = 0.2;
    CHECK(interval_hit_probability(r, params) ==
          doctest::Approx(regularized_incomplete_beta(1.0 / 3.0, 0.2, 0.4))
              .epsilon(1e-12));
    // independent route: c_tilde * int_0^{2r/(1+r)} t^{4a-2} (1-t)^{-2a} dt
    const double a = params.a;
    const double s = 2.0 * r / (1.0 + r);
    const double integral = integrate_segment(
        [a](double t) {
            return std::pow(t, 4.0 * a - 2.0) * std::pow(1.0 - t, -2.0 * a);
        },
        0.0, s);
    const double ctilde = std::exp(log_gamma(2.0 * a) - log_gamma(1.0 - 2.0 * a) -
                                   log_gamma(4.0 * a - 1.0));
    CHECK(interval_hit_probability(r, params) ==
          doctest::Approx(ctilde * integral).epsilon(1e-10));
    // frozen oracle for the flagship interval config (kappa=6, r=0.1)
    CHECK(interval_hit_probability(0.1, kKappa6) ==
          doctest::Approx(0.33134279307208514).epsilon(1e-10));

    // approaches full mass as r -> 1 (like a (1-s)^{1-2a} power), monotone in r
    CHECK(interval_hit_probability(1.0 - 1e-12, kKappa6) > 0.9999);
    const SleParams p35(2.0 / 0.35);
    CHECK(interval_hit_probability(0.1, p35) < interval_hit_probability(0.3, p35));

    CHECK_THROWS_AS(interval_hit_probability(0.2, kKappa2), regime_error);
}

TEST_CASE("left passage probability") {
    for (const SleParams* p : {&kKappa2, &kKappa83, &kKappa6})
        CHECK(left_passage_probability(kPi / 2.0, *p) ==
              doctest::Approx(0.5).epsilon(1e-11));
    // closed form at a = 3/4: f(theta) = (1 - cos theta)/2
    for (double theta = 0.2; theta < kPi; theta += 0.3)
        CHECK(left_passage_probability(theta, kKappa83) ==
              doctest::Approx(0.5 * (1.0 - std::cos(theta))).epsilon(1e-10));
    // symmetry and strict monotonicity
    for (const SleParams* p : {&kKappa2, &kKappa83, &kKappa6}) {
        double prev = 0.0;
        for (double theta = 0.3; theta < kPi - 0.3; theta += 0.25) {
            const double f = left_passage_probability(theta, *p);
            const double g = left_passage_probability(kPi - theta, *p);
            CHECK(f + g == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(f > prev);
            prev = f;
        }
    }
    CHECK_THROWS_AS(left_passage_probability(0.0, kKappa6), std::domain_error);
    CHECK_THROWS_AS(left_passage_probability(kPi, kKappa6), std::domain_error);
}

TEST_CASE("simple-regime lower bound constant") {
    // a = 3/4: sine integral is 2, so c_a = pi^2 / 512
    CHECK(lower_bound_constant_simple(kKappa83) ==
          doctest::Approx(kPi * kPi / 512.0).epsilon(1e-11));
    for (double a = 0.5; a <= 2.0; a += 0.125) {
        const SleParams p(2.0 / a);
        CHECK(lower_bound_constant_simple(p) > 0.0);
    }
    // the arctan chain: c_a r^{4a-1} <= f(arctan r)
    for (double a : {0.5, 0.75, 1.0, 1.5}) {
        const SleParams p(2.0 / a);
        const double ca = lower_bound_constant_simple(p);
        for (double r = 0.1; r <= 1.0; r += 0.15)
            CHECK(ca * std::pow(r, 4.0 * a - 1.0) <=
                  left_passage_probability(std::atan(r), p) + 1e-12);
    }
    CHECK_THROWS_AS(lower_bound_constant_simple(kKappa6), regime_error);
}

TEST_CASE("ball estimate kernel") {
    const cplx i(0.0, 1.0);
    for (const SleParams* p : {&kKappa2, &kKappa83, &kKappa6}) {
        const double a = p->a;
        CHECK(beffara_kernel(i, 0.5, *p) ==
              doctest::Approx(std::pow(0.5, 1.0 - 1.0 / (4.0 * a))).epsilon(1e-12));
        // power law in eps
        const cplx z(3.0, 2.0);
        CHECK(beffara_kernel(z, 0.5, *p) / beffara_kernel(z, 0.25, *p) ==
              doctest::Approx(std::pow(2.0, 1.0 - 1.0 / (4.0 * a))).epsilon(1e-12));
        // scale invariance
        CHECK(beffara_kernel({1.0, 1.0}, 0.3, *p) ==
              doctest::Approx(beffara_kernel({2.0, 2.0}, 0.6, *p)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(beffara_kernel({1.0, 1.0}, 0.6, kKappa6), std::domain_error);
}

TEST_CASE("Schwarz-Christoffel map boundary values") {
    CHECK(std::abs(sc_map_F({0.0, 0.0}, kKappa6)) == 0.0);
    CHECK(std::abs(sc_map_F({1.0, 0.0}, kKappa6) - cplx(1.0, 0.0)) < 1e-9);
    // real and strictly increasing on (0,1)
    double prev = 0.0;
    for (double x = 0.1; x < 1.0; x += 0.1) {
        const cplx F = sc_map_F({x, 0.0}, kKappa6);
        CHECK(std::fabs(F.imag()) < 1e-9);
        CHECK(F.real() > prev);
        prev = F.real();
    }
    // the beta route and the ray quadrature agree away from the singularity
    const double a = kKappa6.a;
    const cplx ray = std::exp(log_gamma(2.0 * a) - log_gamma(1.0 - 2.0 * a) -
                              log_gamma(4.0 * a - 1.0)) *
                     integrate_ray(
                         [a](cplx zeta) {
                             return std::pow(zeta, -2.0 * a) *
                                    std::pow(1.0 - zeta, 4.0 * a - 2.0);
                         },
                         cplx(0.5, 0.0));
    CHECK(std::abs(sc_map_F({0.5, 0.0}, kKappa6) - ray) < 1e-9);
    // continuity between the two routes across the real axis
    CHECK(std::abs(sc_map_F({0.5, 1e-9}, kKappa6) - sc_map_F({0.5, 0.0}, kKappa6)) <
          1e-6);
    CHECK_THROWS_AS(sc_map_F({2.0, 0.0}, kKappa6), std::domain_error);
    CHECK_THROWS_AS(sc_map_F({0.5, 0.0}, kKappa2), regime_error);
}

TEST_CASE("triangle vertex identities") {
    for (double a : {0.26, 0.3, 1.0 / 3.0, 0.4, 0.49}) {
        const SleParams p(2.0 / a);
        const TriangleVertexData v = sc_vertex(p);
        CHECK(std::abs(v.vertex) ==
              doctest::Approx(2.0 * std::cos((1.0 - 2.0 * a) * kPi)).epsilon(1e-12));
        CHECK(v.side_check == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(v.vertex.real() >= 0.0);
        CHECK(std::arg(v.vertex) ==
              doctest::Approx((1.0 - 2.0 * a) * kPi).epsilon(1e-12));
    }
    // flat-triangle limit a -> 1/2
    const SleParams near_half(2.0 / 0.499);
    CHECK(std::abs(sc_vertex(near_half).vertex) == doctest::Approx(2.0).epsilon(1e-4));

    // the vertex is also the limit of the map along a ray
    const TriangleVertexData v6 = sc_vertex(kKappa6);
    const cplx far = sc_map_F({0.0, 1e8}, kKappa6);
    CHECK(std::abs(far - v6.vertex) < 2e-3);
}

TEST_CASE("swallow split barycentrics") {
    // real z in (0,1): p_after = 0, p_same = F(z)
    for (double x = 0.2; x < 1.0; x += 0.2) {
        const SwallowSplit s = swallow_split({x, 0.0}, kKappa6);
        CHECK(s.p_after <= 1e-9);
        CHECK(s.p_same ==
              doctest::Approx(sc_map_F({x, 0.0}, kKappa6).real()).epsilon(1e-9));
        CHECK(s.p_before + s.p_same + s.p_after == doctest::Approx(1.0).epsilon(1e-9));
    }
    // frozen oracle at the acceptance configuration
    const SwallowSplit s0 = swallow_split({0.8, 0.1}, kKappa6);
    CHECK(s0.p_same == doctest::Approx(0.61382351579029763).epsilon(1e-9));
    CHECK(s0.p_after == doctest::Approx(0.071281479260176655).epsilon(1e-8));
    // near the vertex: p_after -> 1
    CHECK(swallow_split({0.0, 1e7}, kKappa6).p_after > 0.99);
    // grid: components in [0,1], sum 1
    for (double re = -1.5; re <= 2.5; re += 0.5)
        for (double im : {0.1, 0.5, 2.0}) {
            const SwallowSplit s = swallow_split({re, im}, kKappa6);
            CHECK(s.p_before >= 0.0);
            CHECK(s.p_same >= 0.0);
            CHECK(s.p_after >= 0.0);
            CHECK(s.p_before + s.p_same + s.p_after ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    // monotone along (0,1): closer to 1 means more likely swallowed together
    double prev = 0.0;
    for (double x = 0.1; x < 1.0; x += 0.1) {
        const double ps = swallow_split({x, 0.0}, kKappa6).p_same;
        CHECK(ps >= prev);
        prev = ps;
    }
    CHECK_THROWS_AS(swallow_split({0.0, 0.0}, kKappa6), std::domain_error);
    CHECK_THROWS_AS(swallow_split({1.0, 0.0}, kKappa6), std::domain_error);
}

TEST_CASE("swallow bound constants") {
    for (double a : {0.26, 0.3, 1.0 / 3.0, 0.4, 0.45}) {
        const SleParams p(2.0 / a);
        const SwallowConstants c = swallow_bound_constants(p);
        CHECK(c.c_tilde > 0.0);
        CHECK(c.c_dbl_prime > 0.0);
    }
    // independent libm route at a = 0.3
    const SwallowConstants c3 = swallow_bound_constants(SleParams(2.0 / 0.3));
    const double ct_ref =
        std::exp(std::lgamma(0.6) - std::lgamma(0.4) - std::lgamma(0.2));
    CHECK(c3.c_tilde == doctest::Approx(ct_ref).epsilon(1e-12));
    CHECK(c3.c_dbl_prime ==
          doctest::Approx(std::pow(2.0, -0.2) * ct_ref / 0.2).epsilon(1e-12));
    CHECK(c3.c_dbl_prime == doctest::Approx(0.63654554654198584).epsilon(1e-12));
    CHECK_THROWS_AS(swallow_bound_constants(kKappa2), regime_error);
}

TEST_CASE("swallow inequality chain on C_r") {
    // p_same <= Re F(z) <= |F(z)| <= 1 - c''_a r^{4a-1}, sampled on C_r
    for (double a : {0.3, 1.0 / 3.0, 0.45}) {
        const SleParams p(2.0 / a);
        const double cdp = swallow_bound_constants(p).c_dbl_prime;
        for (double r : {0.1, 1.0 / 3.0}) {
            for (int j = 0; j < 8; ++j) {
                const double theta = kPi * (j + 0.5) / 8.0;
                const cplx z(1.0 - r + 0.5 * r * std::cos(theta),
                             0.5 * r * std::sin(theta));
                const cplx F = sc_map_F(z, p);
                const double ps = swallow_split(z, p).p_same;
                CHECK(ps <= F.real() + 1e-9);
                CHECK(F.real() <= std::abs(F) + 1e-12);
                CHECK(std::abs(F) <= 1.0 - cdp * std::pow(r, 4.0 * a - 1.0) + 1e-9);
            }
        }
    }
}

TEST_CASE("diameter variant at kappa=8/3") {
    CHECK(diameter_hit_exact_83(4.0) ==
          doctest::Approx(semicircle_hit_exact_83(0.25)).epsilon(1e-13));
    CHECK(diameter_hit_exact_83(3.0) ==
          doctest::Approx(semicircle_hit_exact_83(1.0 / 3.0)).epsilon(1e-13));
    CHECK(diameter_hit_exact_83(1e6) < 1e-9);
    CHECK_THROWS_AS(diameter_hit_exact_83(2.9), std::domain_error);
}
