#pragma once

#include <cstdint>
#include <vector>

#include "sle/params.hpp"

namespace sle {

// Sampled driving function of the Loewner flow, internal normalization
// dg = 2 dt / (g - W) with W_t = sqrt(kappa) B_t. Increments have variance
// kappa * dt; the whole path is a pure function of (seed, trial_id).
struct DriverPath {
    double dt = 0.0;
    std::vector<double> increments;
    std::uint64_t seed = 0;
    std::uint64_t trial_id = 0;

    std::size_t steps() const { return increments.size(); }
    double horizon() const { return dt * static_cast<double>(increments.size()); }
};

DriverPath sample_driver(const SleParams& params, double dt, double horizon,
                         std::uint64_t seed, std::uint64_t trial_id);

} // namespace sle
