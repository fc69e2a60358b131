#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bogrape/graph.hpp"

namespace bogrape {

/// Deterministic black-box objective, minimized by the BO loop.
struct ObjectiveOracle {
  std::string name;
  nlohmann::json params;
  std::function<double(const AttributedGraph&)> evaluate;

  double operator()(const AttributedGraph& g) const { return evaluate(g); }
};

/// D_s for s = 0..n-1.
std::vector<double> path_profile(const AttributedGraph& g);

/// f(G) = sum_s w_s (D_s(G) - T_s)^2 / n^4. Missing entries of T count as
/// zero, missing weights as one.
ObjectiveOracle path_profile_oracle(std::vector<double> target, std::vector<double> weights = {});

/// f(G) = sum_m c_m N_m(F) / (n M). Missing entries of c count as zero.
ObjectiveOracle feature_count_oracle(std::vector<double> c);

/// f(G) = -k_SSP(G, target).
ObjectiveOracle kernel_distance_oracle(AttributedGraph target);

/// Builds an oracle from a name and JSON parameters:
///   path_profile     {"target": [T_0, ...]} or {"target_graph": graph}, optional "weights"
///   feature_count    {"c": [c_0, ...]}
///   kernel_distance  {"target": graph}
/// Throws UnknownOracle for other names and InvalidArgument for bad params.
ObjectiveOracle synthetic_oracle(std::string_view name, const nlohmann::json& params);

}  // namespace bogrape
