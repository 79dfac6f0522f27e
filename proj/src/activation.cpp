#include "voxevo/activation.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <string>

namespace voxevo {

namespace {

constexpr double kSeluAlpha = 1.6733;
constexpr double kSeluScale = 1.0507;

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Keeps the dictionary total: finite in, finite out.
double sanitize(double y) {
  if (std::isnan(y)) return 0.0;
  if (y > DBL_MAX) return DBL_MAX;
  if (y < -DBL_MAX) return -DBL_MAX;
  return y;
}

}  // namespace

const std::array<Activation, kActivationCount>& all_activations() {
  static const std::array<Activation, kActivationCount> kAll = [] {
    std::array<Activation, kActivationCount> a{};
    for (int i = 0; i < kActivationCount; ++i) a[i] = static_cast<Activation>(i);
    return a;
  }();
  return kAll;
}

double evaluate_activation(Activation kind, double x) {
  x = sanitize(x);
  double y = 0.0;
  switch (kind) {
    case Activation::kSine:
      y = std::sin(x);
      break;
    case Activation::kNegSine:
      y = -std::sin(x);
      break;
    case Activation::kAbs:
      y = std::fabs(x);
      break;
    case Activation::kNegAbs:
      y = -std::fabs(x);
      break;
    case Activation::kSquare:
      y = x * x;
      break;
    case Activation::kNegSquare:
      y = -(x * x);
      break;
    case Activation::kSqAbs:
      y = x * x;
      break;
    case Activation::kNegSqAbs:
      y = -(x * x);
      break;
    case Activation::kSigmoid:
      y = 1.0 / (1.0 + std::exp(-clamp(x, -60.0, 60.0)));
      break;
    case Activation::kClamped:
      y = clamp(x, -1.0, 1.0);
      break;
    case Activation::kCube:
      y = x * x * x;
      break;
    case Activation::kExp:
      y = std::exp(clamp(x, -60.0, 60.0));
      break;
    case Activation::kGauss: {
      double z = clamp(x, -3.4, 3.4);
      y = std::exp(-5.0 * z * z);
      break;
    }
    case Activation::kHat:
      y = std::max(0.0, 1.0 - std::fabs(x));
      break;
    case Activation::kIdentity:
      y = x;
      break;
    case Activation::kInverse:
      y = std::fabs(x) < 1e-7 ? 0.0 : 1.0 / x;
      break;
    case Activation::kLog:
      y = std::log(std::max(x, 1e-7));
      break;
    case Activation::kRelu:
      y = std::max(0.0, x);
      break;
    case Activation::kSelu:
      y = x > 0.0 ? kSeluScale * x : kSeluScale * kSeluAlpha * (std::exp(std::min(x, 0.0)) - 1.0);
      break;
    case Activation::kLelu:
      y = x > 0.0 ? x : 0.005 * x;
      break;
    case Activation::kElu:
      y = x > 0.0 ? x : std::exp(std::min(x, 0.0)) - 1.0;
      break;
    case Activation::kSoftplus:
      y = 0.2 * std::log(1.0 + std::exp(clamp(5.0 * x, -60.0, 60.0)));
      break;
    case Activation::kTanh:
      y = std::tanh(x);
      break;
  }
  return sanitize(y);
}

std::string_view activation_name(Activation kind) {
  switch (kind) {
    case Activation::kSine: return "sine";
    case Activation::kNegSine: return "neg_sine";
    case Activation::kAbs: return "abs";
    case Activation::kNegAbs: return "neg_abs";
    case Activation::kSquare: return "square";
    case Activation::kNegSquare: return "neg_square";
    case Activation::kSqAbs: return "sq_abs";
    case Activation::kNegSqAbs: return "neg_sq_abs";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kClamped: return "clamped";
    case Activation::kCube: return "cube";
    case Activation::kExp: return "exp";
    case Activation::kGauss: return "gauss";
    case Activation::kHat: return "hat";
    case Activation::kIdentity: return "identity";
    case Activation::kInverse: return "inverse";
    case Activation::kLog: return "log";
    case Activation::kRelu: return "relu";
    case Activation::kSelu: return "selu";
    case Activation::kLelu: return "lelu";
    case Activation::kElu: return "elu";
    case Activation::kSoftplus: return "softplus";
    case Activation::kTanh: return "tanh";
  }
  throw std::invalid_argument("activation_name: unknown kind");
}

Activation activation_from_name(std::string_view name) {
  for (Activation kind : all_activations()) {
    if (activation_name(kind) == name) return kind;
  }
  throw std::invalid_argument("activation_from_name: unknown activation '" + std::string(name) + "'");
}

}  // namespace voxevo
