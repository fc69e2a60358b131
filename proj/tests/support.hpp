#pragma once

// Fixture graphs and independent reference computations shared by the test
// binaries. Nothing here calls into the shortest-path or kernel code under
// test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <sstream>
#include <string>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bogrape/graph.hpp"

namespace support {

using bogrape::AttributedGraph;

inline AttributedGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges, bool directed,
                                  const std::vector<int>& labels = {}, int L = 1, int M = 1,
                                  const std::vector<std::vector<int>>& extras = {}) {
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (auto [u, v] : edges) {
    adj[u][v] = 1;
    if (!directed) adj[v][u] = 1;
  }
  std::vector<std::vector<int>> f(n, std::vector<int>(M, 0));
  for (int v = 0; v < n; ++v) {
    f[v][labels.empty() ? 0 : labels[v]] = 1;
    if (!extras.empty())
      for (int k = 0; k < M - L; ++k) f[v][L + k] = extras[v][k];
  }
  return bogrape::build_graph(adj, f, directed, L);
}

inline AttributedGraph k2(std::vector<int> labels = {}, int L = 1, int M = 1) {
  return make_graph(2, {{0, 1}}, false, labels, L, M);
}
inline AttributedGraph path_graph(int n, int L = 1, int M = 1, std::vector<int> labels = {}) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return make_graph(n, e, false, labels, L, M);
}
inline AttributedGraph complete_graph(int n, int L = 1, int M = 1, std::vector<int> labels = {}) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return make_graph(n, e, false, labels, L, M);
}

/// Adjacency as nested vectors.
inline std::vector<std::vector<int>> adjacency(const AttributedGraph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) a[u][v] = g.has_edge(u, v) ? 1 : 0;
  return a;
}

/// Per-source breadth-first search; -1 for unreachable.
inline std::vector<std::vector<int>> bfs_oracle(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    d[s][s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (a[u][v] && d[s][v] < 0) {
          d[s][v] = d[s][u] + 1;
          q.push(v);
        }
    }
  }
  return d;
}

/// Transitive closure by repeated squaring of the boolean reachability matrix.
inline bool closure_connected(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return false;
  auto r = a;
  for (int v = 0; v < n; ++v) r[v][v] = 1;
  for (int round = 0; (1 << round) < n; ++round) {
    auto next = r;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (r[i][k])
          for (int j = 0; j < n; ++j)
            if (r[k][j]) next[i][j] = 1;
    r = next;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!r[i][j]) return false;
  return true;
}

/// Number of (strongly) connected graphs on n labeled nodes, by brute force.
inline long count_connected(int n, bool directed) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && (directed || u < v)) slots.emplace_back(u, v);
  long count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) {
        a[slots[i].first][slots[i].second] = 1;
        if (!directed) a[slots[i].second][slots[i].first] = 1;
      }
    count += closure_connected(a) ? 1 : 0;
  }
  return count;
}

/// Shortest-path kernels by enumerating every pair of node pairs.
inline double pair_kernel(const AttributedGraph& g1, const AttributedGraph& g2, bool labeled) {
  const auto d1 = bfs_oracle(adjacency(g1)), d2 = bfs_oracle(adjacency(g2));
  const int n1 = g1.num_nodes(), n2 = g2.num_nodes();
  double matches = 0.0;
  for (int u = 0; u < n1; ++u)
    for (int v = 0; v < n1; ++v)
      for (int x = 0; x < n2; ++x)
        for (int y = 0; y < n2; ++y) {
          if (d1[u][v] != d2[x][y]) continue;
          if (labeled && (g1.label(u) != g2.label(x) || g1.label(v) != g2.label(y))) continue;
          matches += 1.0;
        }
  return matches / (double(n1) * n1 * double(n2) * n2);
}

/// Feature kernel by enumerating node pairs.
inline double pair_feature_kernel(const bogrape::FeatureMatrix& f1, const bogrape::FeatureMatrix& f2) {
  double s = 0.0;
  for (int v = 0; v < f1.rows(); ++v)
    for (int w = 0; w < f2.rows(); ++w)
      for (int m = 0; m < f1.cols(); ++m) s += (f1(v, m) && f2(w, m)) ? 1.0 : 0.0;
  return s / (double(f1.rows()) * f2.rows() * f1.cols());
}

/// Random connected graph: spanning tree (or Hamiltonian cycle when
/// directed, then shuffled labels) plus random extra edges.
inline AttributedGraph random_connected(std::mt19937_64& rng, int n, bool directed, int L = 1, int M = 1,
                                        double extra_p = 0.3) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (directed) {
    for (int i = 0; i < n && n > 1; ++i) a[order[i]][order[(i + 1) % n]] = 1;
  } else {
    for (int i = 1; i < n; ++i) {
      const int parent = order[std::uniform_int_distribution<int>(0, i - 1)(rng)];
      a[order[i]][parent] = a[parent][order[i]] = 1;
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && (directed || u < v) && unif(rng) < extra_p) {
        a[u][v] = 1;
        if (!directed) a[v][u] = 1;
      }
  std::vector<std::vector<int>> f(n, std::vector<int>(M, 0));
  for (int v = 0; v < n; ++v) {
    f[v][std::uniform_int_distribution<int>(0, L - 1)(rng)] = 1;
    for (int m = L; m < M; ++m) f[v][m] = unif(rng) < 0.5 ? 1 : 0;
  }
  return bogrape::build_graph(a, f, directed, L);
}

/// Posterior by explicit inversion of K + noise*I, in extended precision so
/// the reference stays accurate on ill-conditioned kernels.
inline std::pair<double, double> dense_posterior(const Eigen::MatrixXd& K, const Eigen::VectorXd& kx, double kxx,
                                                 const Eigen::VectorXd& y, double noise) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Mat inv = (K.cast<long double>() + static_cast<long double>(noise) * Mat::Identity(K.rows(), K.cols())).inverse();
  const Vec k = kx.cast<long double>();
  const long double mu = k.dot(inv * y.cast<long double>());
  const long double var = static_cast<long double>(kxx) - k.dot(inv * k);
  return {static_cast<double>(mu), std::max(0.0, static_cast<double>(var))};
}

/// CSV text with one column removed; used to drop wall-clock timings
/// before comparing runs.
inline std::string drop_csv_column(const std::string& text, std::size_t column) {
  std::string out, line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    std::size_t start = 0;
    for (std::size_t k = 0; k < column && start != std::string::npos; ++k) {
      start = line.find(',', start);
      if (start != std::string::npos) ++start;
    }
    if (start != std::string::npos) {
      const std::size_t end = line.find(',', start);
      line.erase(start, end == std::string::npos ? std::string::npos : end - start + 1);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace support
