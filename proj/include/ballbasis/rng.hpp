#pragma once

#include <cmath>
#include <cstdint>

namespace ballbasis {

/// Counter-derived deterministic random stream.
///
/// Stream `k` of master seed `s` starts from splitmix64 state
/// s ^ (0x9E3779B97F4A7C15 * (k + 1)) and draws splitmix64 outputs from
/// there.  The derivation is fixed so that independently written tools can
/// reproduce any sample from (seed, stream index) alone.  Gaussians come
/// from the trigonometric Box-Muller transform (no platform-dependent
/// distribution code).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream)
      : state_(master_seed ^ (0x9E3779B97F4A7C15ull * (stream + 1))) {
    next_u64();  // decorrelate nearby seeds
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_unit();  // (0, 1]
    const double u2 = next_unit();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

  /// Uniform integer in [lo, hi] inclusive.
  int next_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  double next_sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ballbasis
