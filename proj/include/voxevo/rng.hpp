#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace voxevo {

// Deterministic random source. The engine is std::mt19937_64 (its output
// sequence and textual state format are pinned by the standard), but all
// distributions are implemented here: the std:: distributions carry hidden,
// implementation-defined state that would break bit-identical checkpoint
// resume.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller without the cached spare value, so the draw count per call is
  // fixed and the state is exactly the engine state.
  double normal(double mean, double stddev);

  // Uniform index in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  bool chance(double p) { return uniform() < p; }

  std::string save_state() const;
  void load_state(const std::string& text);

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace voxevo
