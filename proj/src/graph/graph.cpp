#include "bogrape/graph.hpp"

#include <string>

#include "bogrape/error.hpp"
#include "bogrape/shortest_paths.hpp"

namespace bogrape {

int AttributedGraph::label(int v) const {
  for (int l = 0; l < num_labels_; ++l) {
    if (features_(v, l)) return l;
  }
  return -1;  // unreachable for validated graphs
}

int AttributedGraph::degree(int v) const {
  int deg = 0;
  for (int u = 0; u < num_nodes(); ++u) deg += adjacency_(u, v) ? 1 : 0;
  return deg;
}

AttributedGraph build_graph(AdjacencyMatrix adjacency, FeatureMatrix features, bool directed, int num_labels) {
  const int n = adjacency.size();
  if (n < 1) throw Error(ErrorCode::NonSquare, "graph needs at least one node");
  if (features.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "feature rows " + std::to_string(features.rows()) + " != node count " + std::to_string(n));
  }
  if (num_labels < 1 || num_labels > features.cols()) {
    throw Error(ErrorCode::BadOneHot, "num_labels must lie in [1, num_features]");
  }
  for (int v = 0; v < n; ++v) {
    if (adjacency(v, v)) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(v));
  }
  if (!directed) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adjacency(u, v) != adjacency(v, u))
          throw Error(ErrorCode::AsymmetricUndirected,
                      "edge " + std::to_string(u) + "-" + std::to_string(v) + " is one-sided");
  }
  for (int v = 0; v < n; ++v) {
    int ones = 0;
    for (int l = 0; l < num_labels; ++l) ones += features(v, l) ? 1 : 0;
    if (ones != 1) throw Error(ErrorCode::BadOneHot, "node " + std::to_string(v) + " label block is not one-hot");
  }
  if (!is_connected(adjacency, directed)) throw Error(ErrorCode::Disconnected, "graph is not connected");
  return AttributedGraph(std::move(adjacency), std::move(features), directed, num_labels);
}

AttributedGraph build_graph(const std::vector<std::vector<int>>& adjacency,
                            const std::vector<std::vector<int>>& features, bool directed, int num_labels) {
  const int n = static_cast<int>(adjacency.size());
  AdjacencyMatrix a(n);
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(adjacency[u].size()) != n) throw Error(ErrorCode::NonSquare, "adjacency is not square");
    for (int v = 0; v < n; ++v) {
      if (adjacency[u][v] != 0 && adjacency[u][v] != 1)
        throw Error(ErrorCode::NonSquare, "adjacency entries must be 0/1");
      a.set(u, v, adjacency[u][v] == 1);
    }
  }
  const int rows = static_cast<int>(features.size());
  const int cols = rows > 0 ? static_cast<int>(features[0].size()) : 0;
  FeatureMatrix f(rows, cols);
  for (int v = 0; v < rows; ++v) {
    if (static_cast<int>(features[v].size()) != cols)
      throw Error(ErrorCode::DimensionMismatch, "ragged feature matrix");
    for (int m = 0; m < cols; ++m) {
      if (features[v][m] != 0 && features[v][m] != 1)
        throw Error(ErrorCode::DimensionMismatch, "feature entries must be 0/1");
      f.set(v, m, features[v][m] == 1);
    }
  }
  return build_graph(std::move(a), std::move(f), directed, num_labels);
}

std::vector<std::pair<int, int>> adjacency_slots(int n, bool directed) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v)
      if (u != v) slots.emplace_back(u, v);
  return slots;
}

GraphKey graph_key(const AttributedGraph& g) {
  GraphKey key;
  key.num_nodes = g.num_nodes();
  for (auto [u, v] : adjacency_slots(g.num_nodes(), g.directed())) key.adjacency_bits.push_back(g.has_edge(u, v));
  for (int v = 0; v < g.num_nodes(); ++v) {
    key.labels.push_back(g.label(v));
    for (int m = g.num_labels(); m < g.num_features(); ++m) key.extra_bits.push_back(g.features()(v, m));
  }
  return key;
}

AttributedGraph permute_nodes(const AttributedGraph& g, const std::vector<int>& perm) {
  const int n = g.num_nodes();
  AdjacencyMatrix a(n);
  FeatureMatrix f(n, g.num_features());
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) a.set(u, v, g.has_edge(perm[u], perm[v]));
    for (int m = 0; m < g.num_features(); ++m) f.set(u, m, g.features()(perm[u], m));
  }
  return build_graph(std::move(a), std::move(f), g.directed(), g.num_labels());
}

}  // namespace bogrape
