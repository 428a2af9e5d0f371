#pragma once

// Seeded RNG with hand-rolled integer draws so results are identical across
// standard libraries (std::uniform_int_distribution is not portable).

#include <cstdint>
#include <random>

#include "wca/expr.hpp"

namespace wca {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform integer in [lo, hi], inclusive.
  Int uniform(Int lo, Int hi) {
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<Int>(eng_());  // full 64-bit span
    std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
      draw = eng_();
    } while (draw >= reject_above);
    return lo + static_cast<Int>(draw % range);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<Int>(n) - 1)); }

  bool coin() { return (eng_() >> 63) != 0; }

  double unit() { return static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0); }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace wca
