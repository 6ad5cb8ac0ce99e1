#include "sle/driver.hpp"

#include <cmath>

#include "sle/rng.hpp"

namespace sle {

DriverPath sample_driver(const SleParams& params, double dt, double horizon,
                         std::uint64_t seed, std::uint64_t trial_id) {
    if (!(dt > 0.0) || !(horizon >= dt))
        throw std::domain_error("sample_driver: requires dt > 0 and horizon >= dt");
    const auto n = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
    DriverPath path;
    path.dt = dt;
    path.seed = seed;
    path.trial_id = trial_id;
    path.increments.resize(n);
    CounterRng rng(seed, trial_id);
    const double scale = std::sqrt(params.kappa * dt);
    for (std::size_t k = 0; k < n; ++k)
        path.increments[k] = scale * rng.next_gaussian();
    return path;
}

} // namespace sle
