#include "bogrape/bo/oracles.hpp"

#include "bogrape/error.hpp"
#include "bogrape/graph_io.hpp"
#include "bogrape/kernels.hpp"
#include "bogrape/shortest_paths.hpp"

namespace bogrape {

std::vector<double> path_profile(const AttributedGraph& g) {
  const ShortestPathSummary s = summarize(g);
  std::vector<double> out(s.n);
  for (int len = 0; len < s.n; ++len) out[len] = double(s.D(len));
  return out;
}

ObjectiveOracle path_profile_oracle(std::vector<double> target, std::vector<double> weights) {
  nlohmann::json params{{"target", target}, {"weights", weights}};
  auto f = [target = std::move(target), weights = std::move(weights)](const AttributedGraph& g) {
    const auto d = path_profile(g);
    const double n = g.num_nodes();
    const std::size_t len = std::max(d.size(), target.size());
    double sum = 0.0;
    for (std::size_t s = 0; s < len; ++s) {
      const double diff = (s < d.size() ? d[s] : 0.0) - (s < target.size() ? target[s] : 0.0);
      const double w = s < weights.size() ? weights[s] : 1.0;
      sum += w * diff * diff;
    }
    return sum / (n * n * n * n);
  };
  return {"path_profile", std::move(params), std::move(f)};
}

ObjectiveOracle feature_count_oracle(std::vector<double> c) {
  nlohmann::json params{{"c", c}};
  auto f = [c = std::move(c)](const AttributedGraph& g) {
    const int n = g.num_nodes(), M = g.num_features();
    double sum = 0.0;
    for (int m = 0; m < M && m < static_cast<int>(c.size()); ++m) {
      int count = 0;
      for (int v = 0; v < n; ++v) count += g.features()(v, m) ? 1 : 0;
      sum += c[m] * count;
    }
    return sum / (double(n) * M);
  };
  return {"feature_count", std::move(params), std::move(f)};
}

ObjectiveOracle kernel_distance_oracle(AttributedGraph target) {
  nlohmann::json params{{"target", graph_to_json(target)}};
  auto f = [t = summarize(target)](const AttributedGraph& g) { return -linear_graph_kernel(summarize(g), t, false); };
  return {"kernel_distance", std::move(params), std::move(f)};
}

ObjectiveOracle synthetic_oracle(std::string_view name, const nlohmann::json& params) {
  try {
    if (name == "path_profile") {
      std::vector<double> target;
      if (params.contains("target_graph")) {
        target = path_profile(graph_from_json(params.at("target_graph")));
      } else {
        target = params.at("target").get<std::vector<double>>();
      }
      std::vector<double> weights;
      if (params.contains("weights")) weights = params.at("weights").get<std::vector<double>>();
      return path_profile_oracle(std::move(target), std::move(weights));
    }
    if (name == "feature_count") return feature_count_oracle(params.at("c").get<std::vector<double>>());
    if (name == "kernel_distance") return kernel_distance_oracle(graph_from_json(params.at("target")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "bad parameters for oracle " + std::string(name) + ": " + e.what());
  }
  throw Error(ErrorCode::UnknownOracle, "unknown oracle '" + std::string(name) + "'");
}

}  // namespace bogrape
