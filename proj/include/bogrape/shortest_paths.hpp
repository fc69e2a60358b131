#pragma once

#include <cstdint>
#include <vector>

#include "bogrape/graph.hpp"

namespace bogrape {

inline constexpr int kUnreachable = -1;

/// All-pairs shortest distances plus the "w lies on some shortest u->v path"
/// tensor. Unreachable pairs hold kUnreachable and an all-zero on-path row.
struct ShortestPaths {
  int n = 0;
  std::vector<int> dist;              // n*n
  std::vector<std::uint8_t> on_path;  // n*n*n, index (u*n + v)*n + w

  int distance(int u, int v) const { return dist[static_cast<std::size_t>(u) * n + v]; }
  bool is_on_path(int u, int v, int w) const {
    return on_path[(static_cast<std::size_t>(u) * n + v) * n + w] != 0;
  }
};

ShortestPaths floyd_warshall(const AdjacencyMatrix& adjacency);
ShortestPaths floyd_warshall(const AttributedGraph& g);

/// Strong connectivity when directed. The empty matrix is not connected.
bool is_connected(const AdjacencyMatrix& adjacency, bool directed);
bool is_connected(const AttributedGraph& g);

/// Path statistics consumed by every kernel.
///
/// length_counts[s]      D_s, ordered pairs (u,v) with d(u,v) = s, s < n
/// labeled_counts        P_{s,l1,l2}, index (s*L + l1)*L + l2
/// feature_sums[m]       N_m, number of nodes with feature m set
struct ShortestPathSummary {
  int n = 0;
  int num_labels = 0;
  int num_features = 0;
  bool directed = false;
  ShortestPaths paths;
  std::vector<long> length_counts;
  std::vector<long> labeled_counts;
  std::vector<long> feature_sums;

  long D(int s) const { return s < n ? length_counts[s] : 0; }
  long P(int s, int l1, int l2) const {
    return s < n ? labeled_counts[(static_cast<std::size_t>(s) * num_labels + l1) * num_labels + l2] : 0;
  }
  long N(int m) const { return feature_sums[m]; }
};

ShortestPathSummary summarize(const AttributedGraph& g);

}  // namespace bogrape
