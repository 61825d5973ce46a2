#ifndef MLBC_RNG_HPP
#define MLBC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mlbc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based per-sample random stream: stream(seed, index) yields an
/// independent, reproducible sequence regardless of how samples are
/// scheduled across workers.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t index) {
        state_ = seed ^ 0x6a09e667f3bcc909ULL;
        (void)splitmix64(state_);
        state_ ^= index * 0x9e3779b97f4a7c15ULL + 0x3c6ef372fe94f82bULL;
        (void)splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform on (0,1), never returning exactly 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (fully specified, portable).
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mlbc

#endif
