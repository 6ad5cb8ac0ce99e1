#include "sle/conformal.hpp"

#include <cmath>

namespace sle {

cplx restriction_map_phi(cplx z, const HalfDisk& probe) {
    const double x = probe.center;
    const double r = probe.r_ratio();
    if (z.imag() < -1e-12)
        throw std::domain_error("restriction_map_phi: z below the real axis");
    if (std::abs(z - x) < probe.radius + 1e-12)
        throw std::domain_error("restriction_map_phi: z inside the closed half disk");
    return z + r * r * x * x / (z - x) + r * r * x;
}

double restriction_map_phi_derivative_at_0(const HalfDisk& probe) {
    const double r = probe.r_ratio();
    return 1.0 - r * r;
}

cplx mobius_h(cplx z, double x, double R) {
    if (!(x > 0.0))
        throw std::domain_error("mobius_h: requires x > 0");
    if (!(R >= 3.0))
        throw std::domain_error("mobius_h: requires R >= 3");
    if (std::abs(z - x) < 1e-12 * x)
        throw pole_error("mobius_h: z at the pole x");
    const double c = (R * R - 1.0) / (R * R);
    return c * z / (x - z);
}

cplx mobius_h_inverse(cplx w, double x, double R) {
    if (!(x > 0.0))
        throw std::domain_error("mobius_h_inverse: requires x > 0");
    if (!(R >= 3.0))
        throw std::domain_error("mobius_h_inverse: requires R >= 3");
    const double c = (R * R - 1.0) / (R * R);
    if (std::abs(w + c) < 1e-12)
        throw pole_error("mobius_h_inverse: w at the pole -c");
    return x * w / (w + c);
}

// For Im z > 0 the sign of Im(z^2 + const) equals the sign of Re z, so the
// Im >= 0 square root automatically lands on the correct horizontal side.
cplx vertical_slit_map(cplx z, double dcap) {
    if (!(dcap > 0.0))
        throw std::domain_error("vertical_slit_map: requires dcap > 0");
    const double tip = 2.0 * std::sqrt(dcap);
    if (std::fabs(z.real()) < 1e-12 && z.imag() < tip - 1e-12)
        throw std::domain_error("vertical_slit_map: z strictly inside the slit");
    if (z.imag() <= 0.0) {
        const double m = std::sqrt(z.real() * z.real() + 4.0 * dcap);
        return cplx(z.real() >= 0.0 ? m : -m, 0.0);
    }
    const cplx w = detail::sqrt_upper(z * z + 4.0 * dcap);
    if (w.imag() < -1e-12)
        throw std::runtime_error("vertical_slit_map: branch failure");
    return w;
}

cplx vertical_slit_map_inverse(cplx w, double dcap) {
    if (!(dcap > 0.0))
        throw std::domain_error("vertical_slit_map_inverse: requires dcap > 0");
    if (w.imag() < -1e-12)
        throw std::domain_error("vertical_slit_map_inverse: w below the real axis");
    if (w.imag() <= 0.0) {
        const double s = w.real() * w.real() - 4.0 * dcap;
        if (s <= 0.0)
            return cplx(0.0, std::sqrt(-s)); // this stretch folds onto the slit
        const double m = std::sqrt(s);
        return cplx(w.real() >= 0.0 ? m : -m, 0.0);
    }
    const cplx z = detail::sqrt_upper(w * w - 4.0 * dcap);
    if (z.imag() < -1e-12)
        throw std::runtime_error("vertical_slit_map_inverse: branch failure");
    return z;
}

} // namespace sle
