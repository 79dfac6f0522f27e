#include "voxevo/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "voxevo/errors.hpp"

namespace voxevo {

namespace {

constexpr double kHarmonicGuard = 1e-12;

void require_valid(const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("aggregate: empty displacement list");
  for (double d : deltas) {
    if (!std::isfinite(d) || d < 0.0) {
      throw std::invalid_argument("aggregate: displacements must be finite and non-negative");
    }
  }
}

}  // namespace

std::string_view aggregation_name(Aggregation kind) {
  switch (kind) {
    case Aggregation::kAm: return "AM";
    case Aggregation::kWm: return "WM";
    case Aggregation::kGm: return "GM";
    case Aggregation::kHm: return "HM";
  }
  throw std::invalid_argument("aggregation_name: unknown kind");
}

Aggregation aggregation_from_name(std::string_view name) {
  if (name == "AM") return Aggregation::kAm;
  if (name == "WM") return Aggregation::kWm;
  if (name == "GM") return Aggregation::kGm;
  if (name == "HM") return Aggregation::kHm;
  throw std::invalid_argument("aggregation_from_name: unknown aggregation '" + std::string(name) +
                              "'");
}

const std::vector<double>& wm_weights(int n) {
  static const std::map<int, std::vector<double>> kTable = {
      {2, {0.6, 0.4}},
      {3, {0.5, 0.3, 0.2}},
      {5, {0.4, 0.3, 0.15, 0.1, 0.05}},
      {7, {0.35, 0.25, 0.15, 0.12, 0.07, 0.04, 0.02}},
      {10, {0.3, 0.2, 0.15, 0.12, 0.08, 0.05, 0.04, 0.03, 0.02, 0.01}},
  };
  auto it = kTable.find(n);
  if (it == kTable.end()) {
    throw WeightArityMismatch("wm_weights: no weight row for team size " + std::to_string(n));
  }
  return it->second;
}

bool wm_supports(int n) { return n == 2 || n == 3 || n == 5 || n == 7 || n == 10; }

double aggregate_am(const std::vector<double>& deltas) {
  require_valid(deltas);
  double sum = 0.0;
  for (double d : deltas) sum += d;
  return sum / static_cast<double>(deltas.size());
}

double aggregate_wm(const std::vector<double>& deltas) {
  require_valid(deltas);
  const std::vector<double>& w = wm_weights(static_cast<int>(deltas.size()));
  std::vector<double> sorted = deltas;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double sum = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) sum += w[i] * sorted[i];
  return sum;
}

double aggregate_gm(const std::vector<double>& deltas) {
  require_valid(deltas);
  double log_sum = 0.0;
  for (double d : deltas) {
    if (d == 0.0) return 0.0;
    log_sum += std::log(d);
  }
  return std::exp(log_sum / static_cast<double>(deltas.size()));
}

double aggregate_hm(const std::vector<double>& deltas) {
  require_valid(deltas);
  double inv_sum = 0.0;
  for (double d : deltas) {
    if (d <= kHarmonicGuard) return 0.0;
    inv_sum += 1.0 / d;
  }
  return static_cast<double>(deltas.size()) / inv_sum;
}

double aggregate(Aggregation kind, const std::vector<double>& deltas) {
  switch (kind) {
    case Aggregation::kAm: return aggregate_am(deltas);
    case Aggregation::kWm: return aggregate_wm(deltas);
    case Aggregation::kGm: return aggregate_gm(deltas);
    case Aggregation::kHm: return aggregate_hm(deltas);
  }
  throw std::invalid_argument("aggregate: unknown kind");
}

}  // namespace voxevo
