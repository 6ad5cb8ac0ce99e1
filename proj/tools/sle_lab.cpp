// sle_lab: exact evaluation, single-trace simulation, and Monte Carlo
// experiment suites for chordal SLE in the upper half plane.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "sle/driver.hpp"
#include "sle/events.hpp"
#include "sle/experiment.hpp"
#include "sle/formulas.hpp"
#include "sle/params.hpp"
#include "sle/trace.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SLE_LAB_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 1;
}

void print_value(const char* label, double v) {
    std::printf("%s %.12g\n", label, v);
}

std::string trace_csv(const sle::Trace& trace, std::uint64_t trial_id) {
    std::string out = "trial_id,step,capacity_time,re,im\n";
    char line[160];
    for (std::size_t k = 0; k < trace.points.size(); ++k) {
        std::snprintf(line, sizeof line, "%llu,%zu,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(trial_id), k, trace.times[k],
                      trace.points[k].real(), trace.points[k].imag());
        out += line;
    }
    return out;
}

std::string driver_csv(const sle::DriverPath& driver) {
    std::string out = "trial_id,step,increment\n";
    char line[96];
    for (std::size_t k = 0; k < driver.increments.size(); ++k) {
        std::snprintf(line, sizeof line, "%llu,%zu,%.17g\n",
                      static_cast<unsigned long long>(driver.trial_id), k,
                      driver.increments[k]);
        out += line;
    }
    return out;
}

struct ExperimentCli {
    std::string kind;
    std::string kappa_text = "8/3";
    double x = 1.0;
    double r = 0.25;
    double theta = kPi / 2.0;
    double R = 4.0;
    long n_trials = 1000;
    double dt = 1e-3;
    double horizon = 0.0;
    std::uint64_t seed = default_seed();
    int ring_samples = 64;
    double confidence = 0.99;
    double eps_factor = 1.0;
    bool trace_detector = false;
    std::vector<double> r_grid = {1.0 / 3.0, 0.23, 0.16, 0.11};
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
};

void apply_config_file(ExperimentCli& cli, const CLI::App* cmd) {
    std::ifstream in(cli.config_path);
    if (!in)
        throw std::domain_error("cannot open config file " + cli.config_path);
    nlohmann::json j = nlohmann::json::parse(in); // throws on malformed input
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw std::domain_error("config file: missing or unsupported schema_version");

    // flags given on the command line override file values
    auto overridden = [&](const std::string& flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    if (j.contains("kind") && !overridden("--kind"))
        cli.kind = j["kind"].get<std::string>();
    if (j.contains("kappa") && !overridden("--kappa")) {
        if (j["kappa"].is_string())
            cli.kappa_text = j["kappa"].get<std::string>();
        else
            cli.kappa_text = std::to_string(j["kappa"].get<double>());
    }
    if (j.contains("x") && !overridden("--x"))
        cli.x = j["x"].get<double>();
    if (j.contains("r") && !overridden("--r"))
        cli.r = j["r"].get<double>();
    if (j.contains("theta") && !overridden("--theta"))
        cli.theta = j["theta"].get<double>();
    if (j.contains("R") && !overridden("--R"))
        cli.R = j["R"].get<double>();
    if (j.contains("n_trials") && !overridden("--n"))
        cli.n_trials = j["n_trials"].get<long>();
    if (j.contains("dt") && !overridden("--dt"))
        cli.dt = j["dt"].get<double>();
    if (j.contains("horizon") && !overridden("--horizon"))
        cli.horizon = j["horizon"].get<double>();
    if (j.contains("seed") && !overridden("--seed"))
        cli.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n_ring_samples") && !overridden("--ring-samples"))
        cli.ring_samples = j["n_ring_samples"].get<int>();
    if (j.contains("confidence") && !overridden("--confidence"))
        cli.confidence = j["confidence"].get<double>();
    if (j.contains("eps_factor") && !overridden("--eps-factor"))
        cli.eps_factor = j["eps_factor"].get<double>();
    if (j.contains("use_trace_detector") && !overridden("--trace-detector"))
        cli.trace_detector = j["use_trace_detector"].get<bool>();
    if (j.contains("r_grid") && !overridden("--r-grid"))
        cli.r_grid = j["r_grid"].get<std::vector<double>>();
}

sle::ExperimentConfig to_config(const ExperimentCli& cli, sle::ExperimentKind kind) {
    sle::ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.kappa = sle::parse_kappa(cli.kappa_text);
    cfg.x = cli.x;
    cfg.r = cli.r;
    cfg.theta = cli.theta;
    cfg.R = cli.R;
    cfg.n_trials = cli.n_trials;
    cfg.dt = cli.dt;
    cfg.horizon = cli.horizon;
    cfg.seed = cli.seed;
    cfg.n_ring_samples = cli.ring_samples;
    cfg.confidence = cli.confidence;
    cfg.eps_factor = cli.eps_factor;
    cfg.use_trace_detector = cli.trace_detector;
    return cfg;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        sle::write_text_atomic(out_path, content);
}

double experiment_oracle(const sle::ExperimentConfig& cfg) {
    const sle::SleParams params(cfg.kappa);
    switch (cfg.kind) {
    case sle::ExperimentKind::Semicircle:
        if (std::fabs(cfg.kappa - 8.0 / 3.0) < 1e-9)
            return sle::semicircle_hit_exact_83(cfg.r);
        return std::nan("");
    case sle::ExperimentKind::Interval:
        return params.touching() ? sle::interval_hit_probability(cfg.r, params)
                                 : std::nan("");
    case sle::ExperimentKind::LeftPassage:
        return sle::left_passage_probability(cfg.theta, params);
    case sle::ExperimentKind::SwallowRing:
        if (params.touching() && cfg.n_ring_samples == 1)
            return sle::swallow_split({1.0 - cfg.r, 0.5 * cfg.r}, params).p_same;
        return std::nan("");
    case sle::ExperimentKind::Diameter:
        if (std::fabs(cfg.kappa - 8.0 / 3.0) < 1e-9)
            return sle::diameter_hit_exact_83(cfg.R);
        return std::nan("");
    }
    return std::nan("");
}

int run_single_experiment(const ExperimentCli& cli, sle::ExperimentKind kind) {
    const sle::ExperimentConfig cfg = to_config(cli, kind);
    const sle::ExperimentResult result = sle::run_experiment(cfg);
    const double oracle = experiment_oracle(cfg);
    if (cli.format == "json")
        emit(cli.out_path, sle::result_json(result, oracle));
    else
        emit(cli.out_path, sle::results_csv({{cli.kind, result}}, {oracle}));
    std::fprintf(stderr, "p_hat=%.6g ci=[%.6g,%.6g] hits=%ld/%ld discarded=%ld\n",
                 result.estimate.p_hat, result.estimate.ci_low,
                 result.estimate.ci_high, result.estimate.hits,
                 result.estimate.trials, result.estimate.discarded);
    if (result.sub_a_freq >= 0.0)
        std::fprintf(stderr, "sub-conditions: swallowed=%.4g trace_near=%.4g gap=%.4g\n",
                     result.sub_a_freq, result.sub_b_freq, result.sub_gap);
    if (result.coupling_agreement >= 0.0)
        std::fprintf(stderr, "coupling agreement=%.4g standard p_hat=%.6g\n",
                     result.coupling_agreement, result.standard_estimate.p_hat);
    return 0;
}

int run_exponent_fit(const ExperimentCli& cli) {
    std::vector<std::pair<double, sle::HitEstimate>> estimates;
    std::vector<std::pair<std::string, sle::ExperimentResult>> rows;
    std::vector<double> oracles;
    for (std::size_t i = 0; i < cli.r_grid.size(); ++i) {
        ExperimentCli point = cli;
        point.r = cli.r_grid[i];
        point.seed = cli.seed + i;
        const sle::ExperimentConfig cfg =
            to_config(point, sle::ExperimentKind::Semicircle);
        const sle::ExperimentResult res = sle::run_experiment(cfg);
        estimates.emplace_back(point.r, res.estimate);
        rows.emplace_back("exponent_r" + std::to_string(i), res);
        oracles.push_back(experiment_oracle(cfg));
        std::fprintf(stderr, "r=%.4g p_hat=%.6g ci=[%.6g,%.6g]\n", point.r,
                     res.estimate.p_hat, res.estimate.ci_low, res.estimate.ci_high);
    }
    const sle::ExponentFit fit = sle::fit_exponent(estimates);
    const double kappa = sle::parse_kappa(cli.kappa_text);
    const double expected = (8.0 - kappa) / kappa;
    std::printf("slope %.6f stderr %.6f expected %.6f\n", fit.slope,
                fit.slope_stderr, expected);
    if (cli.format == "json") {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["kappa"] = kappa;
        j["slope"] = fit.slope;
        j["slope_stderr"] = fit.slope_stderr;
        j["intercept"] = fit.intercept;
        j["expected_slope"] = expected;
        j["r_values"] = fit.r_values;
        j["p_values"] = fit.p_values;
        emit(cli.out_path, j.dump(2) + "\n");
    } else {
        emit(cli.out_path, sle::results_csv(rows, oracles));
    }
    return 0;
}

int run_oracle_suite_cmd(const ExperimentCli& cli) {
    const double kappa = sle::parse_kappa(cli.kappa_text);
    const auto rows = sle::run_oracle_suite(kappa, cli.n_trials, cli.dt, cli.seed);
    bool all_covered = true;
    for (const auto& row : rows) {
        all_covered = all_covered && row.covered;
        std::fprintf(stderr, "%-18s p_hat=%.6g oracle=%.6g z=%+.2f %s\n",
                     row.name.c_str(), row.p_hat, row.oracle, row.z_score,
                     row.covered ? "covered" : "NOT COVERED");
    }
    if (cli.format == "json") {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["kappa"] = kappa;
        j["n_trials"] = cli.n_trials;
        j["dt"] = cli.dt;
        j["seed"] = cli.seed;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows)
            arr.push_back({{"name", row.name},
                           {"probe", row.probe},
                           {"p_hat", row.p_hat},
                           {"ci_low", row.ci_low},
                           {"ci_high", row.ci_high},
                           {"oracle", row.oracle},
                           {"z_score", row.z_score},
                           {"covered", row.covered}});
        j["rows"] = arr;
        emit(cli.out_path, j.dump(2) + "\n");
    } else {
        emit(cli.out_path, sle::oracle_rows_csv(rows));
    }
    return all_covered ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sle_lab: chordal SLE laboratory (exact formulas, Loewner "
                 "traces, Monte Carlo hitting experiments).\n"
                 "kappa lies in (0,8): kappa <= 4 gives simple curves, "
                 "4 < kappa < 8 self-touching curves."};
    app.require_subcommand(1);

    // ---- exact -----------------------------------------------------------
    auto* exact = app.add_subcommand(
        "exact", "Evaluate closed-form probabilities and constants");
    exact->require_subcommand(1);
    std::string kappa_text = "8/3";
    double arg_r = 0.25, arg_theta = kPi / 2.0, arg_R = 4.0;
    double z_re = 0.8, z_im = 0.1;

    auto* hit83 = exact->add_subcommand(
        "hit83", "Semicircle hit probability 1-(1-r^2)^{5/8} at kappa=8/3 "
                 "(restriction property of SLE(8/3))");
    hit83->add_option("--r", arg_r, "probe ratio in (0,1)")->required();
    hit83->callback([&] { print_value("hit83", sle::semicircle_hit_exact_83(arg_r)); });

    auto* itv = exact->add_subcommand(
        "interval", "Interval hit probability as a regularized incomplete "
                    "beta, 4 < kappa < 8");
    itv->add_option("--kappa", kappa_text, "kappa (fractions accepted)");
    itv->add_option("--r", arg_r, "interval half-length ratio")->required();
    itv->callback([&] {
        const sle::SleParams p(sle::parse_kappa(kappa_text));
        print_value("interval_hit", sle::interval_hit_probability(arg_r, p));
    });

    auto* lp = exact->add_subcommand(
        "leftpass", "Schramm's left-passage probability f(theta)");
    lp->add_option("--kappa", kappa_text, "kappa (fractions accepted)");
    lp->add_option("--theta", arg_theta, "angle in (0,pi)")->required();
    lp->callback([&] {
        const sle::SleParams p(sle::parse_kappa(kappa_text));
        print_value("leftpass", sle::left_passage_probability(arg_theta, p));
    });

    auto* split = exact->add_subcommand(
        "swallow-split", "Swallow-order probabilities of z against the point "
                         "1 from the triangle map barycentrics");
    split->add_option("--kappa", kappa_text, "kappa in (4,8)");
    split->add_option("--re", z_re, "Re z")->required();
    split->add_option("--im", z_im, "Im z")->required();
    split->callback([&] {
        const sle::SleParams p(sle::parse_kappa(kappa_text));
        const auto s = sle::swallow_split({z_re, z_im}, p);
        print_value("p_before", s.p_before);
        print_value("p_same", s.p_same);
        print_value("p_after", s.p_after);
    });

    auto* scmap = exact->add_subcommand(
        "sc-map", "Schwarz-Christoffel triangle map F(z), 4 < kappa < 8");
    scmap->add_option("--kappa", kappa_text, "kappa in (4,8)");
    scmap->add_option("--re", z_re, "Re z")->required();
    scmap->add_option("--im", z_im, "Im z")->required();
    scmap->callback([&] {
        const sle::SleParams p(sle::parse_kappa(kappa_text));
        const sle::cplx F = sle::sc_map_F({z_re, z_im}, p);
        print_value("F_re", F.real());
        print_value("F_im", F.imag());
    });

    auto* consts = exact->add_subcommand(
        "constants", "Normalization and bound constants plus the triangle "
                     "vertex F(infinity), 4 < kappa < 8");
    consts->add_option("--kappa", kappa_text, "kappa in (4,8)");
    consts->callback([&] {
        const sle::SleParams p(sle::parse_kappa(kappa_text));
        const auto c = sle::swallow_bound_constants(p);
        const auto v = sle::sc_vertex(p);
        print_value("c_tilde", c.c_tilde);
        print_value("c_dbl_prime", c.c_dbl_prime);
        print_value("F_inf_re", v.vertex.real());
        print_value("F_inf_im", v.vertex.imag());
        print_value("F_inf_modulus", std::abs(v.vertex));
        print_value("side_check", v.side_check);
    });

    auto* dia = exact->add_subcommand(
        "diameter83", "Diameter-style circle hit 1-(1-R^{-2})^{5/8} for the "
                      "path from 0 to x at kappa=8/3");
    dia->add_option("--R", arg_R, "circle ratio >= 3")->required();
    dia->callback([&] { print_value("diameter83", sle::diameter_hit_exact_83(arg_R)); });

    // ---- trace -----------------------------------------------------------
    auto* trace_cmd = app.add_subcommand(
        "trace", "Simulate one discrete Loewner trace and export it as CSV");
    std::string trace_kappa = "8/3";
    double trace_dt = 1e-3, trace_horizon = 1.0;
    std::uint64_t trace_seed = default_seed(), trace_trial = 0;
    std::string trace_out = "trace.csv", driver_out;
    bool zero_noise = false;
    trace_cmd->add_option("--kappa", trace_kappa, "kappa (fractions accepted)");
    trace_cmd->add_option("--dt", trace_dt, "capacity-time step");
    trace_cmd->add_option("--horizon", trace_horizon, "capacity horizon");
    trace_cmd->add_option("--seed", trace_seed, "RNG seed");
    trace_cmd->add_option("--trial-id", trace_trial, "trial stream id");
    trace_cmd->add_option("--out", trace_out, "output CSV path");
    trace_cmd->add_option("--export-driver", driver_out,
                          "also export the driver increments CSV");
    trace_cmd->add_flag("--zero-noise", zero_noise,
                        "debug: zero driver (vertical slit trace)");
    trace_cmd->callback([&] {
        const sle::SleParams p(sle::parse_kappa(trace_kappa));
        sle::DriverPath driver =
            sle::sample_driver(p, trace_dt, trace_horizon, trace_seed, trace_trial);
        if (zero_noise)
            std::fill(driver.increments.begin(), driver.increments.end(), 0.0);
        const auto t0 = std::chrono::steady_clock::now();
        const sle::Trace trace = sle::compute_trace(driver);
        const auto t1 = std::chrono::steady_clock::now();
        double max_abs = 0.0;
        for (const auto& pt : trace.points)
            max_abs = std::max(max_abs, std::abs(pt));
        sle::write_text_atomic(trace_out, trace_csv(trace, trace_trial));
        if (!driver_out.empty())
            sle::write_text_atomic(driver_out, driver_csv(driver));
        std::printf("points %zu max_abs %.6g runtime_s %.3f\n", trace.points.size(),
                    max_abs,
                    std::chrono::duration<double>(t1 - t0).count());
    });

    // ---- experiment ------------------------------------------------------
    auto* exp_cmd = app.add_subcommand(
        "experiment", "Monte Carlo experiment suites with exact-formula oracles");
    ExperimentCli ecli;
    exp_cmd
        ->add_option("--kind", ecli.kind,
                     "semicircle | interval | leftpass | swallow-ring | "
                     "diameter | exponent-fit | oracle-suite")
        ->required();
    exp_cmd->add_option("--kappa", ecli.kappa_text, "kappa (fractions accepted)");
    exp_cmd->add_option("--x", ecli.x, "probe anchor x > 0");
    exp_cmd->add_option("--r", ecli.r, "probe ratio");
    exp_cmd->add_option("--theta", ecli.theta, "left-passage angle");
    exp_cmd->add_option("--R", ecli.R, "diameter circle ratio");
    exp_cmd->add_option("--n", ecli.n_trials, "number of trials");
    exp_cmd->add_option("--dt", ecli.dt, "capacity-time step");
    exp_cmd->add_option("--horizon", ecli.horizon, "capacity horizon (0 = default)");
    exp_cmd->add_option("--seed", ecli.seed, "base seed (env SLE_LAB_SEED fallback)");
    exp_cmd->add_option("--ring-samples", ecli.ring_samples,
                        "probe boundary samples per trial");
    exp_cmd->add_option("--confidence", ecli.confidence, "0.90, 0.95 or 0.99");
    exp_cmd->add_option("--eps-factor", ecli.eps_factor,
                        "swallow window scale factor");
    exp_cmd->add_flag("--trace-detector", ecli.trace_detector,
                      "decide semicircle hits from the reconstructed trace");
    exp_cmd->add_option("--r-grid", ecli.r_grid, "r values for exponent-fit");
    exp_cmd->add_option("--config", ecli.config_path,
                        "JSON config file (flags override file values)");
    exp_cmd->add_option("--out", ecli.out_path, "output path (default stdout)");
    exp_cmd->add_option("--format", ecli.format, "csv | json");
    int threads = 0;
    exp_cmd->add_option("--threads", threads,
                        "worker count (results are identical for any count)");

    try {
        app.parse(argc, argv);
        if (exp_cmd->parsed()) {
#ifdef _OPENMP
            if (threads > 0)
                omp_set_num_threads(threads);
#endif
            if (!ecli.config_path.empty())
                apply_config_file(ecli, exp_cmd);
            if (ecli.kind == "semicircle")
                return run_single_experiment(ecli, sle::ExperimentKind::Semicircle);
            if (ecli.kind == "interval")
                return run_single_experiment(ecli, sle::ExperimentKind::Interval);
            if (ecli.kind == "leftpass")
                return run_single_experiment(ecli, sle::ExperimentKind::LeftPassage);
            if (ecli.kind == "swallow-ring")
                return run_single_experiment(ecli, sle::ExperimentKind::SwallowRing);
            if (ecli.kind == "diameter")
                return run_single_experiment(ecli, sle::ExperimentKind::Diameter);
            if (ecli.kind == "exponent-fit")
                return run_exponent_fit(ecli);
            if (ecli.kind == "oracle-suite")
                return run_oracle_suite_cmd(ecli);
            throw std::domain_error("unknown experiment kind '" + ecli.kind + "'");
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: config file: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
