#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace tc {

// Mixes two 64-bit values into a well-distributed seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// FNV-1a over the bytes of a string; stable across platforms and runs.
std::uint64_t hash_string(std::string_view s);

// Seeded random stream used by every stochastic component.
//
// The engine sequence is fixed by the standard; the distribution helpers are
// implemented here so that results do not depend on the standard library
// vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform();

  // Uniform integer in [lo, hi]. Requires lo <= hi.
  int uniform_int(int lo, int hi);

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  const T& pick(std::span<const T> items) {
    return items[static_cast<std::size_t>(uniform_int(0, static_cast<int>(items.size()) - 1))];
  }

  template <typename Container>
  void shuffle(Container& c) {
    for (int i = static_cast<int>(c.size()) - 1; i > 0; --i) {
      const int j = uniform_int(0, i);
      using std::swap;
      swap(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tc
