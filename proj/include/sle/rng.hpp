#pragma once

#include <cmath>
#include <cstdint>

namespace sle {

// Counter-based stream: trial k draws from a generator whose state is a pure
// function of (seed, k). No sequential dependence between trials, so results
// are identical under any parallel schedule.
//
// The core is the splitmix64 output permutation applied to a Weyl sequence,
// which is the standard way to fan a single 64-bit seed out into independent
// streams.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t trial_id) {
        state_ = mix(seed + 0x9e3779b97f4a7c15ULL * (trial_id + 1));
        state_ = mix(state_ ^ 0xbf58476d1ce4e5b9ULL);
        have_spare_ = false;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in (0,1]; never returns 0 so log() below is safe.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; both values of each pair are used.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_;
};

} // namespace sle
