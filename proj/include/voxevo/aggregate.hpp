#pragma once

#include <string_view>
#include <vector>

namespace voxevo {

// How the per-collaborator displacements of one individual are folded into a
// single aptitude.
enum class Aggregation { kAm, kWm, kGm, kHm };

std::string_view aggregation_name(Aggregation kind);
Aggregation aggregation_from_name(std::string_view name);

// Fixed weight rows for the weighted mean, one row per supported team size;
// each row sums to 1 and weights the best (largest) displacement most.
// Throws WeightArityMismatch for unsupported sizes.
const std::vector<double>& wm_weights(int n);
bool wm_supports(int n);

// All aggregators require a non-empty list of finite, non-negative values and
// throw std::invalid_argument otherwise.
double aggregate_am(const std::vector<double>& deltas);
// Sorts descending internally, then dots with wm_weights(n).
double aggregate_wm(const std::vector<double>& deltas);
// Geometric mean in log space; any zero short-circuits to zero.
double aggregate_gm(const std::vector<double>& deltas);
// Harmonic mean; any value <= 1e-12 yields zero instead of dividing by ~0.
double aggregate_hm(const std::vector<double>& deltas);

double aggregate(Aggregation kind, const std::vector<double>& deltas);

}  // namespace voxevo
