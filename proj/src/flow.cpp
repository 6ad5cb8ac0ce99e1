#include "sle/flow.hpp"

#include <stdexcept>

namespace sle {

FlowState flow_point(cplx z0, const DriverPath& driver, double swallow_eps) {
    if (!(swallow_eps > 0.0))
        throw std::domain_error("flow_point: requires swallow_eps > 0");
    if (z0.imag() < 0.0)
        throw std::domain_error("flow_point: z0 below the real axis");
    if (z0 == cplx(0.0, 0.0))
        throw std::domain_error("flow_point: z0 must differ from the root 0");

    double wr = z0.real();
    double wi = z0.imag();
    double xi = 0.0;
    const double dt = driver.dt;
    const double eps2 = swallow_eps * swallow_eps;

    FlowState state;
    for (std::size_t k = 0; k < driver.increments.size(); ++k) {
        const double ur = wr - xi;
        if (ur * ur + wi * wi < eps2) {
            state.z_current = cplx(wr, wi);
            state.swallowed = true;
            state.swallow_time = dt * static_cast<double>(k + 1);
            return state;
        }
        flow_detail::slit_step(wr, wi, xi, dt);
        xi += driver.increments[k];
        if (!std::isfinite(wr) || !std::isfinite(wi))
            throw std::runtime_error("flow_point: flow blew up without swallow "
                                     "detection (tolerance misconfiguration)");
    }
    state.z_current = cplx(wr, wi);
    return state;
}

} // namespace sle
