#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace evoapsp {

// Seeded, splittable random stream. The generator is xoshiro256**,
// state-initialized with splitmix64 over (master_seed, stream_id), so a
// stream's entire output is a pure function of that pair. Distinct stream
// ids from one master seed give independent streams.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id) {
    std::uint64_t x = splitmix(master_seed);
    x = splitmix(x ^ (stream_id * 0xda942042e4dd58b5ULL));
    for (auto& s : state_) {
      x = splitmix(x);
      s = x;
    }
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, k); Lemire multiply-shift with rejection.
  std::uint64_t uniform_index(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("uniform_index: k must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * k;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < k) {
      const std::uint64_t threshold = (0 - k) % k;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * k;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli: p outside [0,1]");
    return next_double() < p;
  }

  // Poisson by inversion with sequential search; exact for small lambda.
  // The algorithm only ever uses lambda = 1.
  int poisson(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 30.0))
      throw std::invalid_argument("poisson: lambda outside [0, 30]");
    if (lambda == 0.0) return 0;
    const double u = next_double();
    double p = std::exp(-lambda);
    double cum = p;
    int k = 0;
    while (u >= cum) {
      ++k;
      p *= lambda / k;
      cum += p;
    }
    return k;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace evoapsp
