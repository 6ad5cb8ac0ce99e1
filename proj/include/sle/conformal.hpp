#pragma once

#include <complex>
#include <stdexcept>

namespace sle {

using cplx = std::complex<double>;

class pole_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Half disk D(x; eps) = B(x; eps) intersected with H, centered on the
// positive real axis. The probe never contains the origin.
struct HalfDisk {
    double center;
    double radius;

    HalfDisk(double center_, double radius_) : center(center_), radius(radius_) {
        if (!(center > 0.0) || !(radius > 0.0) || !(radius < center))
            throw std::domain_error("HalfDisk: requires 0 < radius < center");
    }
    double r_ratio() const { return radius / center; }
};

// Semicircle C(x; eps) = {x + eps e^{i theta}, 0 < theta < pi}.
struct Semicircle {
    double center;
    double radius;

    Semicircle(double center_, double radius_) : center(center_), radius(radius_) {
        if (!(radius > 0.0))
            throw std::domain_error("Semicircle: requires radius > 0");
    }
};

// Uniformizing map of H minus the half disk D(x; rx):
//   Phi(z) = z + r^2 x^2 / (z - x) + r^2 x,
// normalized by Phi(0) = 0 and Phi(z) ~ z at infinity.
cplx restriction_map_phi(cplx z, const HalfDisk& probe);

// Phi'(0) = 1 - (radius/center)^2 in closed form.
double restriction_map_phi_derivative_at_0(const HalfDisk& probe);

// Mobius self-map of H with h(0) = 0, h(x) = infinity, chosen so that
// h(C(0; Rx)) = C(-1; 1/R).
cplx mobius_h(cplx z, double x, double R);
cplx mobius_h_inverse(cplx w, double x, double R);

// Discrete Loewner building block: the map removing the vertical slit of
// capacity-time dcap at the origin (half-plane capacity 2*dcap, so the slit
// is [0, 2i sqrt(dcap)]), and its inverse. Both fix H and pick the branch
// with Im >= 0.
cplx vertical_slit_map(cplx z, double dcap);
cplx vertical_slit_map_inverse(cplx w, double dcap);

namespace detail {
// Square root with Im >= 0 (the branch mapping onto the closed upper half
// plane). For negative reals returns +i sqrt(|s|).
inline cplx sqrt_upper(cplx s) {
    cplx w = std::sqrt(s);
    if (w.imag() < 0.0)
        w = -w;
    return w;
}
} // namespace detail

} // namespace sle
