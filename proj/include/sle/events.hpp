#pragma once

#include <span>

#include "sle/driver.hpp"
#include "sle/flow.hpp"
#include "sle/trace.hpp"

namespace sle {

// Decision of the curve-hits-semicircle event from the forward flow alone,
// without trace reconstruction. M points sampled on the probe are advanced
// through the flow; the event is declared from
//   - proximity: some sample image comes within swallow_eps of the driver
//     (for 4 < kappa < 8 this also fires on pure encirclement, so a touch is
//     confirmed by reconstructing the curve tip at the trigger step), and
//   - sidedness: for kappa <= 4, samples ending on both sides of the curve
//     witness a crossing even when no sample was approached closely.
struct SemicircleEventConfig {
    Semicircle probe{1.0, 0.25};
    int n_samples = 64;
    double eps_factor = 1.0;  // trigger window = eps_factor * 2 sqrt(2 dt)
    double touch_tol = 0.0;   // 0 -> 2*arc gap + 4 sqrt(dt)
    bool early_stop = true;   // simple regime: stop once the remaining
    double early_stop_min_time = 6.0;   // hit mass is provably negligible
    double early_stop_tol = 1e-4;
    int check_stride = 2048;
};

struct EventOutcome {
    bool hit = false;
    bool discarded = false;
    std::optional<double> first_hit_time;
};

EventOutcome detect_semicircle_hit(const SleParams& params,
                                   const SemicircleEventConfig& config, double dt,
                                   std::span<const double> increments);
EventOutcome detect_semicircle_hit(const SleParams& params,
                                   const SemicircleEventConfig& config,
                                   const DriverPath& driver);

// Interval-hit decision and its two recorded sub-conditions:
//   A: some sampled point of [x_lo, x_hi] is swallowed by the horizon,
//   B: the trace comes within tol of the real segment.
// The event is the conjunction; the gap freq(B and not A) is the reported
// diagnostic for the finite-dt proxy.
struct IntervalOutcome {
    TrialOutcome outcome;
    bool sample_swallowed = false; // A
    bool trace_near = false;       // B
    int samples_swallowed = 0;
};

IntervalOutcome hit_interval(const DriverPath& driver, double x_lo, double x_hi,
                             double swallow_eps, int n_samples = 17);

struct LeftPassageOutcome {
    bool left = false;
    bool undecided = false;
};

// Side of z relative to the completed curve: sign of Re(g_T(z) - W_T) at the
// horizon, or at the last step before explosion for swallowed points.
LeftPassageOutcome left_passage_indicator(const SleParams& params, cplx z,
                                          double dt,
                                          std::span<const double> increments,
                                          double swallow_eps);
LeftPassageOutcome left_passage_indicator(const SleParams& params,
                                          const DriverPath& driver, cplx z,
                                          double swallow_eps);

struct SwallowTogetherOutcome {
    bool together = false;
    bool discarded = false; // horizon reached before the point 1 was swallowed
};

// Samples n points on C_r = C(1-r; r/2) and reports whether none of them is
// swallowed strictly before the point 1, within one dt of slack.
SwallowTogetherOutcome swallow_together(const SleParams& params, double r,
                                        int n_samples, double dt,
                                        std::span<const double> increments,
                                        double swallow_eps);
SwallowTogetherOutcome swallow_together(const SleParams& params,
                                        const DriverPath& driver, double r,
                                        int n_samples, double swallow_eps);

// Curve point at capacity time k*dt from the driving values xi[0..k] at step
// starts (xi[j] = W at time j*dt): O(k) reverse composition.
cplx trace_tip(std::span<const double> xi, std::size_t k, double dt);

} // namespace sle
