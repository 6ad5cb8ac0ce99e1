#include "sle/trace.hpp"

#include <algorithm>
#include <cmath>

namespace sle {

namespace {

// Inverse incremental map xi + sqrt((w - xi)^2 - 4 dt), Im >= 0 branch,
// inlined against std::complex to keep the O(N^2) reconstruction tight.
inline void inverse_slit_step(double& wr, double& wi, double xi, double four_dt) {
    const double ur = wr - xi;
    const double ui = wi;
    const double sr = ur * ur - ui * ui - four_dt;
    const double si = 2.0 * ur * ui;
    const double m = std::sqrt(sr * sr + si * si);
    double rr = std::sqrt(0.5 * (m + sr));
    const double ri = std::sqrt(0.5 * std::max(m - sr, 0.0));
    if (si < 0.0 || (si == 0.0 && ur < 0.0))
        rr = -rr; // upper branch, keeping the horizontal side of u
    wr = xi + rr;
    wi = ri;
}

} // namespace

Trace compute_trace(const DriverPath& driver) {
    const std::size_t n = driver.steps();
    const double dt = driver.dt;
    const double four_dt = 4.0 * dt;

    // driving values at step starts: xi[k] = W_{t_k}
    std::vector<double> xi(n + 1);
    xi[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        xi[k + 1] = xi[k] + driver.increments[k];

    Trace trace;
    trace.resolution = dt;
    trace.times.resize(n + 1);
    trace.points.resize(n + 1);
    trace.times[0] = 0.0;
    trace.points[0] = {0.0, 0.0};

    for (std::size_t k = 1; k <= n; ++k) {
        double wr = xi[k];
        double wi = 0.0;
        for (std::size_t j = k; j-- > 0;)
            inverse_slit_step(wr, wi, xi[j], four_dt);
        if (!std::isfinite(wr) || !std::isfinite(wi))
            throw std::runtime_error("compute_trace: branch failure at step " +
                                     std::to_string(k));
        trace.times[k] = dt * static_cast<double>(k);
        trace.points[k] = {wr, wi < 0.0 ? 0.0 : wi};
    }
    return trace;
}

Trace map_trace_from_zero_to_x(const Trace& standard, double x, double R,
                               double clip_eps) {
    const double c = (R * R - 1.0) / (R * R);
    Trace image;
    image.resolution = standard.resolution;
    image.times.reserve(standard.times.size());
    image.points.reserve(standard.points.size());
    for (std::size_t k = 0; k < standard.points.size(); ++k) {
        const cplx w = standard.points[k];
        if (std::abs(w + c) < clip_eps) {
            ++image.clipped;
            continue;
        }
        image.times.push_back(standard.times[k]);
        image.points.push_back(x * w / (w + c));
    }
    return image;
}

Trace trace_from_zero_to_x(const DriverPath& driver, double x, double R,
                           double clip_eps) {
    return map_trace_from_zero_to_x(compute_trace(driver), x, R, clip_eps);
}

double trace_hit_tolerance(const Trace& trace, const Semicircle& probe) {
    const cplx center(probe.center, 0.0);
    const double near = 4.0 * probe.radius;
    std::vector<double> steps;
    for (std::size_t k = 1; k < trace.points.size(); ++k) {
        if (std::abs(trace.points[k] - center) < near ||
            std::abs(trace.points[k - 1] - center) < near)
            steps.push_back(std::abs(trace.points[k] - trace.points[k - 1]));
    }
    if (steps.empty())
        return 0.0;
    const auto mid = steps.begin() + steps.size() / 2;
    std::nth_element(steps.begin(), mid, steps.end());
    return 3.0 * *mid;
}

TrialOutcome hit_semicircle(const Trace& trace, const Semicircle& probe, double tol) {
    const cplx center(probe.center, 0.0);
    const double reach = probe.radius + tol;
    TrialOutcome out;
    out.dt = trace.resolution;
    out.horizon = trace.times.empty() ? 0.0 : trace.times.back();
    for (std::size_t k = 0; k < trace.points.size(); ++k) {
        if (std::abs(trace.points[k] - center) <= reach) {
            out.event_hit = true;
            out.first_hit_time = trace.times[k];
            return out;
        }
    }
    return out;
}

} // namespace sle
