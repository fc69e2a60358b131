#include "bogrape/shortest_paths.hpp"

#include <limits>

namespace bogrape {

ShortestPaths floyd_warshall(const AdjacencyMatrix& adjacency) {
  const int n = adjacency.size();
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<int> d(static_cast<std::size_t>(n) * n, inf);
  auto at = [n](int u, int v) { return static_cast<std::size_t>(u) * n + v; };
  for (int u = 0; u < n; ++u) {
    d[at(u, u)] = 0;
    for (int v = 0; v < n; ++v)
      if (u != v && adjacency(u, v)) d[at(u, v)] = 1;
  }
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u) {
      const int duw = d[at(u, w)];
      if (duw == inf) continue;
      for (int v = 0; v < n; ++v) {
        const int through = duw + d[at(w, v)];
        if (through < d[at(u, v)]) d[at(u, v)] = through;
      }
    }

  ShortestPaths out;
  out.n = n;
  out.dist.resize(d.size());
  out.on_path.assign(static_cast<std::size_t>(n) * n * n, 0);
  for (std::size_t i = 0; i < d.size(); ++i) out.dist[i] = d[i] >= inf ? kUnreachable : d[i];
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const int duv = d[at(u, v)];
      if (duv >= inf) continue;
      for (int w = 0; w < n; ++w) {
        const int duw = d[at(u, w)], dwv = d[at(w, v)];
        if (duw < inf && dwv < inf && duw + dwv == duv) out.on_path[at(u, v) * n + w] = 1;
      }
    }
  return out;
}

ShortestPaths floyd_warshall(const AttributedGraph& g) { return floyd_warshall(g.adjacency()); }

namespace {

int reach_count(const AdjacencyMatrix& a, bool forward) {
  const int n = a.size();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      const bool arc = forward ? a(u, v) : a(v, u);
      if (arc && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count;
}

}  // namespace

bool is_connected(const AdjacencyMatrix& adjacency, bool directed) {
  const int n = adjacency.size();
  if (n == 0) return false;
  if (reach_count(adjacency, true) != n) return false;
  return !directed || reach_count(adjacency, false) == n;
}

bool is_connected(const AttributedGraph& g) { return is_connected(g.adjacency(), g.directed()); }

ShortestPathSummary summarize(const AttributedGraph& g) {
  ShortestPathSummary s;
  s.n = g.num_nodes();
  s.num_labels = g.num_labels();
  s.num_features = g.num_features();
  s.directed = g.directed();
  s.paths = floyd_warshall(g);
  const int n = s.n, L = s.num_labels;
  s.length_counts.assign(n, 0);
  s.labeled_counts.assign(static_cast<std::size_t>(n) * L * L, 0);
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = g.label(v);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const int d = s.paths.distance(u, v);
      if (d == kUnreachable) continue;
      ++s.length_counts[d];
      ++s.labeled_counts[(static_cast<std::size_t>(d) * L + labels[u]) * L + labels[v]];
    }
  s.feature_sums.assign(s.num_features, 0);
  for (int v = 0; v < n; ++v)
    for (int m = 0; m < s.num_features; ++m) s.feature_sums[m] += g.features()(v, m) ? 1 : 0;
  return s;
}

}  // namespace bogrape
