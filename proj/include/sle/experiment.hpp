#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sle/events.hpp"
#include "sle/params.hpp"

namespace sle {

enum class ExperimentKind {
    Semicircle,  // curve hits C(x; r x)
    Interval,    // curve hits [x - r x, x + r x]
    LeftPassage, // point at angle theta ends left of the curve
    SwallowRing, // all of C(1-r; r/2) swallowed with the point 1
    Diameter,    // path from 0 to x leaves C(0; R x); coupled via the Mobius map
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Semicircle;
    double kappa = 8.0 / 3.0;
    double x = 1.0;      // probe anchor on the real axis
    double r = 0.25;     // probe size ratio (semicircle, interval, swallow ring)
    double theta = 1.5707963267948966; // left passage angle
    double R = 4.0;      // diameter circle ratio
    long n_trials = 1000;
    double dt = 1e-3;
    double horizon = 0.0; // 0 -> 25 * max(probe reach, 1)^2
    std::uint64_t seed = 1;
    int n_ring_samples = 64;
    double confidence = 0.99;
    double eps_factor = 1.0;
    bool use_trace_detector = false; // semicircle decision from the trace
    int n_interval_samples = 17;

    void validate() const;
    double resolved_horizon() const;
    std::string probe_description() const;
};

// Monte Carlo tally with a Wilson score interval at the configured level.
struct HitEstimate {
    long hits = 0;
    long trials = 0;    // decided trials (denominator)
    long discarded = 0; // undecided / horizon-starved trials, reported apart
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

HitEstimate wilson_estimate(long hits, long decided, long discarded,
                            double confidence);

struct ExperimentResult {
    ExperimentConfig config;
    HitEstimate estimate;
    // interval sub-conditions
    double sub_a_freq = -1.0; // some sample swallowed
    double sub_b_freq = -1.0; // trace near segment
    double sub_gap = -1.0;    // freq(B and not A)
    // diameter coupling
    double coupling_agreement = -1.0;
    HitEstimate standard_estimate; // the C(-1; 1/R) side of the coupling
};

// Runs exactly n_trials independent streams derived from (seed, trial_id).
// Deterministic for a fixed config under any thread count or schedule.
ExperimentResult run_experiment(const ExperimentConfig& config);
// Serial reference path, kept for testing the parallel kernels against.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

struct ExponentFit {
    std::vector<double> r_values;
    std::vector<double> p_values;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

// Weighted least squares of ln p on ln r; weights from CI half-widths. The
// unknown two-sided constants land in the intercept.
ExponentFit fit_exponent(const std::vector<std::pair<double, HitEstimate>>& estimates);

struct OracleRow {
    std::string name;
    double kappa = 0.0;
    std::string probe;
    double r = 0.0;
    long n_trials = 0;
    long hits = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double oracle = 0.0;
    double z_score = 0.0;
    bool covered = false;
};

OracleRow make_oracle_row(const std::string& name, const ExperimentResult& result,
                          double oracle);

// Regime-appropriate battery of experiments paired with their exact oracles.
std::vector<OracleRow> run_oracle_suite(double kappa, long n_trials, double dt,
                                        std::uint64_t seed);

std::string oracle_rows_csv(const std::vector<OracleRow>& rows);
std::string results_csv(const std::vector<std::pair<std::string, ExperimentResult>>& rows,
                        const std::vector<double>& oracles);
std::string result_json(const ExperimentResult& result, double oracle);

// Writes via a temp file and renames, so failures leave no partial output.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace sle
