#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace voxevo {

// The 23-entry activation dictionary available to network nodes. sq_abs and
// neg_sq_abs coincide numerically with square/neg_square but are kept as
// distinct tags so genomes referencing them round-trip unchanged.
enum class Activation : std::uint8_t {
  kSine,
  kNegSine,
  kAbs,
  kNegAbs,
  kSquare,
  kNegSquare,
  kSqAbs,
  kNegSqAbs,
  kSigmoid,
  kClamped,
  kCube,
  kExp,
  kGauss,
  kHat,
  kIdentity,
  kInverse,
  kLog,
  kRelu,
  kSelu,
  kLelu,
  kElu,
  kSoftplus,
  kTanh,
};

inline constexpr int kActivationCount = 23;

// All kinds in enum order; handy for uniform draws and exhaustive tests.
const std::array<Activation, kActivationCount>& all_activations();

// Total on all finite inputs: results that would overflow are clamped to
// +/-DBL_MAX rather than returning inf.
double evaluate_activation(Activation kind, double x);

std::string_view activation_name(Activation kind);
Activation activation_from_name(std::string_view name);

}  // namespace voxevo
