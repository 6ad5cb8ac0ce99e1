#pragma once

#include <optional>
#include <vector>

#include "sle/conformal.hpp"
#include "sle/driver.hpp"

namespace sle {

// Time-ordered sampled curve with per-sample capacity times.
struct Trace {
    std::vector<double> times;
    std::vector<cplx> points;
    double resolution = 0.0;
    std::size_t clipped = 0; // points dropped near a map pole (image traces)
};

struct TrialOutcome {
    bool event_hit = false;
    std::optional<double> first_hit_time;
    double dt = 0.0;
    double horizon = 0.0;
};

// Curve point at each step by reverse composition of the inverse slit maps:
// O(n) work per point, O(N^2) for the whole trace.
Trace compute_trace(const DriverPath& driver);

// Image of the standard trace under the inverse of the Mobius map h(.; x, R),
// i.e. a path from 0 toward x. Points landing within clip_eps of the pole of
// h^{-1} are dropped and counted.
Trace trace_from_zero_to_x(const DriverPath& driver, double x, double R,
                           double clip_eps = 1e-6);
Trace map_trace_from_zero_to_x(const Trace& standard, double x, double R,
                               double clip_eps = 1e-6);

// Closed-disk entry rule: hit iff some trace sample lies within
// radius + tol of the probe center.
TrialOutcome hit_semicircle(const Trace& trace, const Semicircle& probe, double tol);

// Default tolerance policy: 3x the median trace-step length near the probe.
double trace_hit_tolerance(const Trace& trace, const Semicircle& probe);

} // namespace sle
