#pragma once

// Single deterministic random stream shared by all seeded suites.  The
// generator is splitmix64; the algorithm name is quoted in reports so runs
// can be reproduced independently of the standard library.

#include <cstdint>

#include "vakm/scalar.hpp"

namespace vakm {

class Rng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64";

  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t below(uint64_t n) { return next() % n; }

  // inclusive bounds
  long range(long lo, long hi) { return lo + long(below(uint64_t(hi - lo + 1))); }

  Rat rat(long num_bound = 5, long den_bound = 3) {
    Rat r(range(-num_bound, num_bound), range(1, den_bound));
    r.canonicalize();
    return r;
  }

  Rat nonzero_rat(long num_bound = 5, long den_bound = 3) {
    while (true) {
      Rat r = rat(num_bound, den_bound);
      if (r != 0) return r;
    }
  }

 private:
  uint64_t state_;
};

}  // namespace vakm
