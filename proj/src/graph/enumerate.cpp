#include "bogrape/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "bogrape/error.hpp"
#include "bogrape/shortest_paths.hpp"

namespace bogrape {

namespace {

// Visits label/feature assignments for one connected adjacency. Returns
// false once the visitor asked to stop.
bool visit_features(const DomainSpec& domain, const AdjacencyMatrix& adjacency,
                    const std::function<bool(const AttributedGraph&)>& visit) {
  const int n = adjacency.size();
  const int L = domain.num_labels, M = domain.num_features;
  const int extra_per_node = M - L;
  const int extra_bits = n * extra_per_node;

  std::vector<int> in_degree(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) in_degree[v] += adjacency(u, v) ? 1 : 0;

  std::vector<int> labels(n, 0);
  while (true) {
    bool caps_ok = true;
    for (int v = 0; v < n && caps_ok; ++v)
      if (auto cap = domain.cap_for(labels[v]); cap && in_degree[v] > *cap) caps_ok = false;

    if (caps_ok) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << extra_bits); ++mask) {
        FeatureMatrix f(n, M);
        for (int v = 0; v < n; ++v) {
          f.set(v, labels[v]);
          for (int k = 0; k < extra_per_node; ++k) {
            const int bit = v * extra_per_node + k;
            if ((mask >> (extra_bits - 1 - bit)) & 1U) f.set(v, L + k);
          }
        }
        AttributedGraph g = build_graph(adjacency, std::move(f), domain.directed, L);
        if (satisfies(domain, g) && !visit(g)) return false;
      }
    }

    // Next label vector, node 0 most significant.
    int pos = n - 1;
    while (pos >= 0 && labels[pos] == L - 1) labels[pos--] = 0;
    if (pos < 0) break;
    ++labels[pos];
  }
  return true;
}

}  // namespace

void for_each_graph(const DomainSpec& domain, const std::function<bool(const AttributedGraph&)>& visit,
                    double max_bits) {
  domain.validate();
  if (search_space_bits(domain) > max_bits)
    throw Error(ErrorCode::DomainTooLarge, "domain has 2^" + std::to_string(search_space_bits(domain)) +
                                               " structural assignments, cap is 2^" + std::to_string(max_bits));
  for (int n = domain.size.min_nodes; n <= domain.size.max_nodes; ++n) {
    const auto slots = adjacency_slots(n, domain.directed);
    const int k = static_cast<int>(slots.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      AdjacencyMatrix a(n);
      for (int i = 0; i < k; ++i) {
        if ((mask >> (k - 1 - i)) & 1U) {
          a.set(slots[i].first, slots[i].second);
          if (!domain.directed) a.set(slots[i].second, slots[i].first);
        }
      }
      if (!is_connected(a, domain.directed)) continue;
      if (!visit_features(domain, a, visit)) return;
    }
  }
}

std::vector<AttributedGraph> enumerate_domain(const DomainSpec& domain, double max_bits) {
  std::vector<AttributedGraph> out;
  for_each_graph(
      domain,
      [&](const AttributedGraph& g) {
        out.push_back(g);
        return true;
      },
      max_bits);
  return out;
}

std::size_t count_domain(const DomainSpec& domain, double max_bits) {
  std::size_t count = 0;
  for_each_graph(
      domain,
      [&](const AttributedGraph&) {
        ++count;
        return true;
      },
      max_bits);
  return count;
}

namespace {

// Independent Bernoulli(1/2) arcs; uniform over connected labeled graphs
// after rejection.
AdjacencyMatrix draw_dense(int n, bool directed, std::mt19937_64& rng) {
  AdjacencyMatrix a(n);
  std::bernoulli_distribution coin(0.5);
  for (auto [u, v] : adjacency_slots(n, directed)) {
    if (coin(rng)) {
      a.set(u, v);
      if (!directed) a.set(v, u);
    }
  }
  return a;
}

// Random spanning tree (plus a return cycle when directed) with sparse extra
// arcs, respecting per-node capacities where possible. Used once dense draws
// keep failing, e.g. under tight degree caps.
AdjacencyMatrix draw_sparse(int n, bool directed, const std::vector<int>& capacity, std::mt19937_64& rng) {
  AdjacencyMatrix a(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> deg(n, 0);
  auto add = [&](int u, int v) {
    if (u == v || a(u, v)) return;
    a.set(u, v);
    ++deg[v];
    if (!directed) {
      a.set(v, u);
      ++deg[u];
    }
  };
  if (directed) {
    for (int i = 0; i < n; ++i) add(order[i], order[(i + 1) % n]);
  } else {
    for (int i = 1; i < n; ++i) {
      std::vector<int> open;
      for (int j = 0; j < i; ++j)
        if (deg[order[j]] < capacity[order[j]]) open.push_back(order[j]);
      if (open.empty())
        for (int j = 0; j < i; ++j) open.push_back(order[j]);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(open.size()) - 1);
      add(open[pick(rng)], order[i]);
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = unit(rng) * 0.5;
  for (auto [u, v] : adjacency_slots(n, directed)) {
    if (!a(u, v) && unit(rng) < p && deg[v] < capacity[v] && (directed || deg[u] < capacity[u])) add(u, v);
  }
  return a;
}

}  // namespace

AttributedGraph sample_feasible(const DomainSpec& domain, std::uint64_t seed, int max_attempts) {
  domain.validate();
  std::mt19937_64 rng(seed);
  const int L = domain.num_labels, M = domain.num_features;
  std::uniform_int_distribution<int> size_dist(domain.size.min_nodes, domain.size.max_nodes);
  std::uniform_int_distribution<int> label_dist(0, L - 1);
  std::bernoulli_distribution coin(0.5);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int n = size_dist(rng);
    std::vector<int> labels(n);
    for (int& l : labels) l = label_dist(rng);

    AdjacencyMatrix a;
    if (attempt < max_attempts / 2) {
      a = draw_dense(n, domain.directed, rng);
    } else {
      std::vector<int> capacity(n, n);
      for (int v = 0; v < n; ++v)
        if (auto cap = domain.cap_for(labels[v])) capacity[v] = *cap;
      a = draw_sparse(n, domain.directed, capacity, rng);
    }
    if (!is_connected(a, domain.directed)) continue;

    FeatureMatrix f(n, M);
    for (int v = 0; v < n; ++v) {
      f.set(v, labels[v]);
      for (int m = L; m < M; ++m) f.set(v, m, coin(rng));
    }
    AttributedGraph g = build_graph(std::move(a), std::move(f), domain.directed, L);
    if (satisfies(domain, g)) return g;
  }
  throw Error(ErrorCode::SamplingExhausted,
              "no feasible graph after " + std::to_string(max_attempts) + " attempts");
}

}  // namespace bogrape
