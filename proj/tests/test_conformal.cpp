#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "sle/conformal.hpp"

using namespace sle;

namespace {
constexpr double kPi = 3.14159265358979323846;

// complex-step differentiation: machine-precision derivatives of analytic
// maps without subtraction cancellation
template <typename F>
double complex_step_derivative_at_real(F&& f, double x0) {
    const double h = 1e-20;
    return f(cplx(x0, h)).imag() / h;
}

double cross_ratio(double a, double b, double c, double d) {
    return ((a - c) * (b - d)) / ((a - d) * (b - c));
}

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) {
    return ((a - c) * (b - d)) / ((a - d) * (b - c));
}
} // namespace

TEST_CASE("restriction map basics") {
    const HalfDisk probe(1.0, 0.25);
    CHECK(std::abs(restriction_map_phi({0.0, 0.0}, probe)) < 1e-15);
    // Phi(z) - z -> r^2 x at infinity
    const cplx far = restriction_map_phi({1e9, 1e9}, probe);
    CHECK(std::abs(far - cplx(1e9, 1e9) - cplx(0.0625, 0.0)) < 1e-6);
    CHECK_THROWS_AS(restriction_map_phi({1.0, 0.1}, probe), std::domain_error);
}

TEST_CASE("restriction map derivative at 0") {
    for (double r : {0.05, 1.0 / 3.0, 0.2}) {
        const HalfDisk probe(2.0, 2.0 * r);
        CHECK(restriction_map_phi_derivative_at_0(probe) ==
              doctest::Approx(1.0 - r * r).epsilon(1e-14));
        const double cs = complex_step_derivative_at_real(
            [&](cplx z) { return restriction_map_phi(z, probe); }, 0.0);
        CHECK(cs == doctest::Approx(1.0 - r * r).epsilon(1e-10));
    }
    CHECK(restriction_map_phi_derivative_at_0(HalfDisk(3.0, 1.0)) ==
          doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK_THROWS_AS(HalfDisk(1.0, 1.5), std::domain_error); // radius >= center
}

TEST_CASE("restriction map sends the probe boundary to the real axis") {
    const HalfDisk probe(1.5, 0.5);
    for (int j = 1; j < 32; ++j) {
        const double theta = kPi * j / 32.0;
        const cplx z = cplx(1.5, 0.0) + 0.5 * cplx(std::cos(theta), std::sin(theta));
        // evaluate just outside to satisfy the domain guard
        const cplx zq = cplx(1.5, 0.0) + (0.5 + 1e-9) * cplx(std::cos(theta), std::sin(theta));
        (void)z;
        CHECK(std::fabs(restriction_map_phi(zq, probe).imag()) < 1e-7);
    }
}

TEST_CASE("restriction map one-to-one on a sampled grid") {
    const HalfDisk probe(1.0, 0.3);
    std::vector<cplx> images;
    for (double re = -2.0; re <= 3.0; re += 0.5)
        for (double im = 0.4; im <= 2.0; im += 0.4)
            images.push_back(restriction_map_phi({re, im}, probe));
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            CHECK(std::abs(images[i] - images[j]) > 1e-12);
}

TEST_CASE("Mobius map h sends C(0;Rx) onto C(-1;1/R)") {
    for (double R : {3.0, 4.0, 10.0}) {
        for (double x : {0.5, 1.0, 2.0}) {
            for (int j = 0; j <= 16; ++j) {
                const double theta = kPi * j / 16.0;
                const cplx z = R * x * cplx(std::cos(theta), std::sin(theta));
                CHECK(std::abs(mobius_h(z, x, R) - cplx(-1.0, 0.0)) ==
                      doctest::Approx(1.0 / R).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("Mobius map fixes 0, preserves H and cross-ratios") {
    const double x = 1.0, R = 4.0;
    CHECK(std::abs(mobius_h({0.0, 0.0}, x, R)) < 1e-15);
    for (double re = -2.0; re <= 2.0; re += 0.5)
        for (double im : {0.1, 1.0, 5.0})
            CHECK(mobius_h({re, im}, x, R).imag() > 0.0);
    const double a = -2.0, b = -0.5, c = 0.3, d = 2.0;
    const cplx cr_img = cross_ratio(mobius_h({a, 0.0}, x, R), mobius_h({b, 0.0}, x, R),
                                    mobius_h({c, 0.0}, x, R), mobius_h({d, 0.0}, x, R));
    CHECK(std::abs(cr_img - cplx(cross_ratio(a, b, c, d), 0.0)) < 1e-10);
    CHECK_THROWS_AS(mobius_h({1.0, 0.0}, x, R), pole_error);
    CHECK_THROWS_AS(mobius_h({0.5, 0.5}, 1.0, 2.0), std::domain_error); // R < 3
}

TEST_CASE("Mobius map inverse round trip") {
    const double x = 2.0, R = 5.0;
    for (double re = -3.0; re <= 3.0; re += 0.7)
        for (double im : {0.2, 1.3}) {
            const cplx z(re, im);
            CHECK(std::abs(mobius_h_inverse(mobius_h(z, x, R), x, R) - z) < 1e-10);
        }
}

TEST_CASE("vertical slit map inversion and tip") {
    const double dcap = 0.01;
    for (double re = -1.93; re <= 2.0; re += 0.4)
        for (double im : {0.05, 0.4, 2.0}) {
            const cplx z(re, im);
            const cplx w = vertical_slit_map(z, dcap);
            CHECK(w.imag() >= 0.0);
            CHECK(std::abs(vertical_slit_map_inverse(w, dcap) - z) < 1e-10);
        }
    // tip maps to the driving point (sqrt doubles the ulp error scale)
    const cplx tip(0.0, 2.0 * std::sqrt(dcap));
    CHECK(std::abs(vertical_slit_map(tip, dcap)) < 1e-8);
    // strictly inside the slit is rejected
    CHECK_THROWS_AS(vertical_slit_map({0.0, 0.05}, dcap), std::domain_error);
}

TEST_CASE("slit map capacity additivity") {
    const double c1 = 0.013, c2 = 0.021;
    for (double re = -1.47; re <= 1.5; re += 0.3)
        for (double im : {0.3, 1.1}) {
            const cplx z(re, im);
            const cplx two_steps = vertical_slit_map(vertical_slit_map(z, c1), c2);
            const cplx one_step = vertical_slit_map(z, c1 + c2);
            CHECK(std::abs(two_steps - one_step) < 1e-10);
        }
}

TEST_CASE("inverse slit map picks the upper branch") {
    const double dcap = 0.04;
    for (double re = -1.0; re <= 1.0; re += 0.13) {
        const cplx z = vertical_slit_map_inverse({re, 0.0}, dcap);
        CHECK(z.imag() >= -1e-12);
    }
    // the stretch |w| < 2 sqrt(dcap) folds back onto the slit
    const cplx folded = vertical_slit_map_inverse({0.1, 0.0}, dcap);
    CHECK(std::fabs(folded.real()) < 1e-12);
    CHECK(folded.imag() > 0.0);
}
