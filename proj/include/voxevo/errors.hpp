#pragma once

#include <stdexcept>
#include <string>

namespace voxevo {

// Error taxonomy. Every failure mode callers are expected to handle gets its
// own type so the CLI can map them to diagnostics without string matching.

struct CycleDetected : std::runtime_error {
  explicit CycleDetected(const std::string& what) : std::runtime_error(what) {}
};

struct ArityMismatch : std::runtime_error {
  explicit ArityMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyMorphology : std::runtime_error {
  explicit EmptyMorphology(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalBlowup : std::runtime_error {
  explicit NumericalBlowup(const std::string& what) : std::runtime_error(what) {}
};

struct WeightArityMismatch : std::runtime_error {
  explicit WeightArityMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DomainMismatch : std::runtime_error {
  explicit DomainMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct CorruptCheckpoint : std::runtime_error {
  explicit CorruptCheckpoint(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace voxevo
