#include "sle/events.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sle {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline void inverse_slit_step(double& wr, double& wi, double xi, double four_dt) {
    const double ur = wr - xi;
    const double ui = wi;
    const double sr = ur * ur - ui * ui - four_dt;
    const double si = 2.0 * ur * ui;
    const double m = std::sqrt(sr * sr + si * si);
    double rr = std::sqrt(0.5 * (m + sr));
    const double ri = std::sqrt(0.5 * std::max(m - sr, 0.0));
    if (si < 0.0 || (si == 0.0 && ur < 0.0))
        rr = -rr;
    wr = xi + rr;
    wi = ri;
}

} // namespace

cplx trace_tip(std::span<const double> xi, std::size_t k, double dt) {
    double wr = xi[k];
    double wi = 0.0;
    const double four_dt = 4.0 * dt;
    for (std::size_t j = k; j-- > 0;)
        inverse_slit_step(wr, wi, xi[j], four_dt);
    return {wr, wi};
}

EventOutcome detect_semicircle_hit(const SleParams& params,
                                   const SemicircleEventConfig& config, double dt,
                                   std::span<const double> increments) {
    const int m = config.n_samples;
    const double rho = config.probe.radius;
    const double xc = config.probe.center;
    const double gap = kPi * rho / m;
    const double eps = config.eps_factor * default_swallow_eps(dt);
    const double eps2 = eps * eps;
    const double exact_thresh = flow_detail::kFarFieldFactor * dt;
    const double touch_tol =
        config.touch_tol > 0.0 ? config.touch_tol : 2.0 * gap + 4.0 * std::sqrt(dt);
    const bool touching = params.touching();
    const std::size_t n = increments.size();

    EventOutcome out;

    // double-buffered SoA so the fused far-field pass stays branch-free and
    // the rare near-field fixup can reread the pre-step state
    std::vector<double> buf(4 * static_cast<std::size_t>(m));
    double* wr = buf.data();
    double* wi = buf.data() + m;
    double* nwr = buf.data() + 2 * m;
    double* nwi = buf.data() + 3 * m;
    for (int j = 0; j < m; ++j) {
        const double theta = kPi * (j + 0.5) / m;
        wr[j] = xc + rho * std::cos(theta);
        wi[j] = rho * std::sin(theta);
    }
    int alive = m;

    // tip reconstruction needs the driving values seen so far
    std::vector<double> xi_hist;
    if (touching)
        xi_hist.reserve(n + 1);
    double xi = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        if (touching)
            xi_hist.push_back(xi);

        int near = 0;
        for (int j = 0; j < alive; ++j) {
            const double ur = wr[j] - xi;
            const double ui = wi[j];
            const double n2 = ur * ur + ui * ui;
            const double inv = 1.0 / n2;
            const double cr = ur * inv;
            const double ci = -ui * inv;
            const double tr = 2.0 * dt * cr;
            const double ti = 2.0 * dt * ci;
            const double t2r = tr * tr - ti * ti;
            const double t2i = 2.0 * tr * ti;
            nwr[j] = wr[j] + tr - 0.5 * (t2r * cr - t2i * ci);
            nwi[j] = wi[j] + ti - 0.5 * (t2r * ci + t2i * cr);
            near += (n2 < exact_thresh);
        }

        if (near != 0) {
            for (int j = 0; j < alive;) {
                const double ur = wr[j] - xi;
                const double n2 = ur * ur + wi[j] * wi[j];
                if (n2 >= exact_thresh) {
                    ++j;
                    continue;
                }
                // in the self-touching regime a sample dipping toward the
                // driver marks a moment worth inspecting: the curve is either
                // touching the probe here or absorbing it from a pinch far
                // away. The reconstructed tip decides which.
                if (touching && n2 < eps2) {
                    const cplx tip = trace_tip(xi_hist, k, dt);
                    if (std::abs(tip - cplx(xc, 0.0)) <= rho + touch_tol) {
                        out.hit = true;
                        out.first_hit_time = dt * static_cast<double>(k + 1);
                        return out;
                    }
                    --alive; // swallowed without touching: retire the sample
                    wr[j] = wr[alive];
                    wi[j] = wi[alive];
                    nwr[j] = nwr[alive];
                    nwi[j] = nwi[alive];
                    continue;
                }
                nwr[j] = wr[j];
                nwi[j] = wi[j];
                flow_detail::slit_step(nwr[j], nwi[j], xi, dt);
                ++j;
            }
            if (alive == 0)
                return out; // probe fully absorbed without a touch
        }
        std::swap(wr, nwr);
        std::swap(wi, nwi);
        xi += increments[k];

        if (config.early_stop && !touching && (k % config.check_stride) == 0 &&
            dt * static_cast<double>(k) >= config.early_stop_min_time) {
            // stop once every sample has settled onto one side and the
            // remaining-hit bound for the flowed probe, ~3 (rho'/d)^{4a-1},
            // is negligible; a settled split decides the trial immediately
            bool all_settled = true;
            bool has_left = false, has_right = false;
            for (int j = 0; j < m; ++j) {
                const double ur = wr[j] - xi;
                if (wi[j] > 0.2 * std::fabs(ur)) {
                    all_settled = false;
                    break;
                }
                (ur < 0.0 ? has_left : has_right) = true;
            }
            if (all_settled && has_left && has_right) {
                out.hit = true;
                return out;
            }
            if (all_settled) {
                double cr = 0.0, ci = 0.0;
                for (int j = 0; j < m; ++j) {
                    cr += wr[j];
                    ci += wi[j];
                }
                cr /= m;
                ci /= m;
                double rad = 0.0;
                for (int j = 0; j < m; ++j)
                    rad = std::max(rad, std::hypot(wr[j] - cr, wi[j] - ci));
                const double d = std::hypot(cr - xi, ci);
                if (d > 2.0 * rad) {
                    const double ratio = rad / (d - rad);
                    if (3.0 * std::pow(ratio, 4.0 * params.a - 1.0) <
                        config.early_stop_tol)
                        break;
                }
            }
        }
    }

    if (!touching) {
        // crossing witnessed by samples settled on opposite sides of the
        // curve; Re(g - W) signs carry side information only once the image
        // has flattened toward the axis
        bool has_left = false, has_right = false;
        for (int j = 0; j < m; ++j) {
            const double ur = wr[j] - xi;
            if (wi[j] > 0.2 * std::fabs(ur))
                continue; // side not settled
            (ur < 0.0 ? has_left : has_right) = true;
        }
        out.hit = has_left && has_right;
    }
    return out;
}

EventOutcome detect_semicircle_hit(const SleParams& params,
                                   const SemicircleEventConfig& config,
                                   const DriverPath& driver) {
    return detect_semicircle_hit(params, config, driver.dt, driver.increments);
}

IntervalOutcome hit_interval(const DriverPath& driver, double x_lo, double x_hi,
                             double swallow_eps, int n_samples) {
    if (!(0.0 < x_lo) || !(x_lo < x_hi))
        throw std::domain_error("hit_interval: requires 0 < x_lo < x_hi");
    if (n_samples < 2)
        throw std::domain_error("hit_interval: requires n_samples >= 2");
    const double dt = driver.dt;
    const std::size_t n = driver.steps();

    IntervalOutcome res;
    res.outcome.dt = dt;
    res.outcome.horizon = driver.horizon();

    std::vector<double> x(n_samples);
    std::vector<bool> dead(n_samples, false);
    for (int j = 0; j < n_samples; ++j)
        x[j] = x_lo + (x_hi - x_lo) * j / (n_samples - 1);

    double xi = 0.0;
    int alive = n_samples;
    std::size_t last_swallow_step = 0;
    for (std::size_t k = 0; k < n && alive > 0; ++k) {
        for (int j = 0; j < n_samples; ++j) {
            if (dead[j])
                continue;
            if (std::fabs(x[j] - xi) < swallow_eps) {
                dead[j] = true;
                --alive;
                ++res.samples_swallowed;
                last_swallow_step = k;
                continue;
            }
            x[j] = flow_detail::slit_step_real(x[j], xi, dt);
        }
        xi += driver.increments[k];
    }
    res.sample_swallowed = res.samples_swallowed > 0;

    // condition B scans the trace; skip the O(N^2) reconstruction when A
    // already fails (the event is a conjunction)
    if (res.sample_swallowed) {
        const std::size_t stop_step =
            alive == 0 ? std::min(n, last_swallow_step +
                                         static_cast<std::size_t>(0.5 / dt) + 1)
                       : n;
        DriverPath head;
        head.dt = dt;
        head.seed = driver.seed;
        head.trial_id = driver.trial_id;
        head.increments.assign(driver.increments.begin(),
                               driver.increments.begin() + stop_step);
        const Trace trace = compute_trace(head);
        const double mid = 0.5 * (x_lo + x_hi);
        const double tol =
            trace_hit_tolerance(trace, Semicircle(mid, 0.5 * (x_hi - x_lo)));
        for (std::size_t k = 0; k < trace.points.size(); ++k) {
            const double px = trace.points[k].real();
            const double py = trace.points[k].imag();
            const double dx = std::max({x_lo - px, 0.0, px - x_hi});
            if (std::hypot(dx, py) <= tol) {
                res.trace_near = true;
                res.outcome.first_hit_time = trace.times[k];
                break;
            }
        }
    }
    res.outcome.event_hit = res.sample_swallowed && res.trace_near;
    return res;
}

LeftPassageOutcome left_passage_indicator(const SleParams& params, cplx z,
                                          double dt,
                                          std::span<const double> increments,
                                          double swallow_eps) {
    if (!(z.imag() > 0.0))
        throw std::domain_error("left_passage_indicator: requires Im z > 0");
    (void)params;
    const double eps2 = swallow_eps * swallow_eps;
    double wr = z.real();
    double wi = z.imag();
    double xi = 0.0;
    double last_re = wr; // side of the pinch just before an explosion
    LeftPassageOutcome out;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        const double ur = wr - xi;
        const double v = ur * ur + wi * wi;
        if (v < eps2) {
            out.left = last_re < 0.0;
            return out;
        }
        last_re = ur;
        if (v >= flow_detail::kFarFieldFactor * dt)
            flow_detail::slit_step_far(wr, wi, xi, dt, 1.0 / v);
        else
            flow_detail::slit_step(wr, wi, xi, dt);
        xi += increments[k];
    }
    const double ur = wr - xi;
    const double norm = std::hypot(ur, wi);
    if (std::fabs(ur) < 0.01 * norm) {
        out.undecided = true;
        return out;
    }
    out.left = ur < 0.0;
    return out;
}

LeftPassageOutcome left_passage_indicator(const SleParams& params,
                                          const DriverPath& driver, cplx z,
                                          double swallow_eps) {
    return left_passage_indicator(params, z, driver.dt, driver.increments,
                                  swallow_eps);
}

SwallowTogetherOutcome swallow_together(const SleParams& params, double r,
                                        int n_samples, double dt,
                                        std::span<const double> increments,
                                        double swallow_eps) {
    params.require_touching("swallow_together");
    if (!(r > 0.0) || !(r <= 1.0 / 3.0))
        throw std::domain_error("swallow_together: requires 0 < r <= 1/3");
    if (n_samples < 1)
        throw std::domain_error("swallow_together: requires n_samples >= 1");

    const double eps2 = swallow_eps * swallow_eps;
    std::vector<double> wr(n_samples), wi(n_samples);
    std::vector<std::size_t> swallow_step(n_samples, 0);
    std::vector<bool> dead(n_samples, false);
    for (int j = 0; j < n_samples; ++j) {
        const double theta = kPi * (j + 0.5) / n_samples;
        wr[j] = (1.0 - r) + 0.5 * r * std::cos(theta);
        wi[j] = 0.5 * r * std::sin(theta);
    }
    double one = 1.0; // image of the reference boundary point
    double xi = 0.0;
    std::size_t min_sample_step = SIZE_MAX;

    SwallowTogetherOutcome out;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        if (std::fabs(one - xi) < swallow_eps) {
            // decision freezes the moment 1 goes: anything swallowed more
            // than one dt earlier breaks togetherness
            out.together = min_sample_step == SIZE_MAX || min_sample_step + 1 >= k;
            return out;
        }
        one = flow_detail::slit_step_real(one, xi, dt);
        for (int j = 0; j < n_samples; ++j) {
            if (dead[j])
                continue;
            const double ur = wr[j] - xi;
            const double v = ur * ur + wi[j] * wi[j];
            if (v < eps2) {
                dead[j] = true;
                min_sample_step = std::min(min_sample_step, k);
                continue;
            }
            if (v >= flow_detail::kFarFieldFactor * dt)
                flow_detail::slit_step_far(wr[j], wi[j], xi, dt, 1.0 / v);
            else
                flow_detail::slit_step(wr[j], wi[j], xi, dt);
        }
        xi += increments[k];
    }
    out.discarded = true;
    return out;
}

SwallowTogetherOutcome swallow_together(const SleParams& params,
                                        const DriverPath& driver, double r,
                                        int n_samples, double swallow_eps) {
    return swallow_together(params, r, n_samples, driver.dt, driver.increments,
                            swallow_eps);
}

} // namespace sle
