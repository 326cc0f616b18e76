#pragma once

#include <cstdint>
#include <random>

namespace qmeta {

// Source of uniform draws in [0, 1). Virtual so tests can substitute
// scripted sources for the graph generator.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual double uniform() = 0;
};

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; every conversion below is defined
// here (not delegated to std distributions, which are implementation
// specific) so the draw sequence reproduces across toolchains:
//
//   next64()           one engine output
//   uniform()          (next64() >> 11) * 2^-53, in [0, 1)     [1 draw]
//   uniform_int(lo,hi) lo + floor(uniform() * (hi - lo + 1)),  [1 draw]
//                      clamped to hi
//   normal()           sqrt(-2 ln(1 - u1)) * cos(2 pi u2)      [2 draws]
class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next64() { return engine_(); }

  double uniform() override {
    return static_cast<double>(next64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  int uniform_int(int lo, int hi);

  // Standard normal deviate; consumes exactly two uniform draws.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qmeta
