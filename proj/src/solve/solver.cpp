#include "bogrape/solve/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "bogrape/error.hpp"
#include "bogrape/shortest_paths.hpp"

namespace bogrape {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// BFS distances on a dense 0/1 matrix; kUnreachable when no path.
std::vector<int> bfs_distances(const std::vector<std::int8_t>& adj, int n) {
  std::vector<int> dist(static_cast<std::size_t>(n) * n, kUnreachable);
  std::vector<int> queue(n);
  for (int s = 0; s < n; ++s) {
    int* row = &dist[static_cast<std::size_t>(s) * n];
    row[s] = 0;
    int head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const int u = queue[head++];
      for (int v = 0; v < n; ++v)
        if (adj[static_cast<std::size_t>(u) * n + v] == 1 && row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          queue[tail++] = v;
        }
    }
  }
  return dist;
}

struct SizeTables {
  std::vector<double> phi;                // linear variants, per path cell
  std::vector<std::vector<double>> coef;  // exponential variants, per training point and cell
  std::vector<double> exp_weight;         // w_i * alpha / sigma_k^2
  std::vector<double> psi;                // per feature column
  std::vector<std::pair<int, int>> slots;
};

class Evaluator {
 public:
  Evaluator(const GpModel& gp, const DomainSpec& domain, double beta_sqrt)
      : gp_(gp), domain_(domain), beta_sqrt_(beta_sqrt) {
    const int L = domain.num_labels, M = domain.num_features;
    labeled_ = is_labeled(gp.variant());
    expo_ = is_exponential(gp.variant());
    const auto& h = gp.hyper();
    const double alpha = h.alpha, beta = h.beta;
    graph_self_weight_ = expo_ ? alpha / *h.sigma_k_sq : alpha;
    feature_weight_ = beta;
    const auto& w = gp.weights();
    for (int n = domain.size.min_nodes; n <= domain.size.max_nodes; ++n) {
      SizeTables t;
      const int cells = labeled_ ? n * L * L : n;
      t.phi.assign(cells, 0.0);
      t.psi.assign(M, 0.0);
      for (std::size_t i = 0; i < gp.size(); ++i) {
        const ShortestPathSummary& s = gp.points()[i].summary;
        const double wi = w[static_cast<Eigen::Index>(i)];
        const double norm = double(n) * n * double(s.n) * s.n;
        std::vector<double> c(cells, 0.0);
        for (int len = 0; len < n; ++len) {
          if (labeled_) {
            for (int l1 = 0; l1 < L; ++l1)
              for (int l2 = 0; l2 < L; ++l2) c[(len * L + l1) * L + l2] = double(s.P(len, l1, l2)) / norm;
          } else {
            c[len] = double(s.D(len)) / norm;
          }
        }
        if (expo_) {
          t.coef.push_back(std::move(c));
          t.exp_weight.push_back(wi * graph_self_weight_);
        } else {
          for (int k = 0; k < cells; ++k) t.phi[k] += alpha * wi * c[k];
        }
        for (int m = 0; m < M; ++m) t.psi[m] += beta * wi * double(s.N(m)) / (double(n) * s.n * M);
      }
      t.slots = adjacency_slots(n, domain.directed);
      tables_.push_back(std::move(t));
    }
  }

  const DomainSpec& domain() const { return domain_; }
  const SizeTables& tables(int n) const { return tables_[n - domain_.size.min_nodes]; }

  std::optional<double> leaf(const AdjacencyMatrix& a, const FeatureMatrix& f) const {
    if (!domain_.size.contains(a.size()) || f.rows() != a.size() || f.cols() != domain_.num_features)
      return std::nullopt;
    if (!is_connected(a, domain_.directed)) return std::nullopt;
    try {
      AttributedGraph g = build_graph(a, f, domain_.directed, domain_.num_labels);
      if (!satisfies(domain_, g)) return std::nullopt;
      return lcb(gp_, g, beta_sqrt_);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  static AdjacencyMatrix adjacency_of(const PartialAssignment& p) {
    const int n = *p.num_nodes;
    AdjacencyMatrix a(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (p.edge(u, v) == 1) a.set(u, v);
    return a;
  }

  FeatureMatrix features_of(const PartialAssignment& p) const {
    const int n = *p.num_nodes, L = domain_.num_labels, E = domain_.num_features - L;
    FeatureMatrix f(n, domain_.num_features);
    for (int v = 0; v < n; ++v) {
      if (p.labels[v] >= 0) f.set(v, p.labels[v]);
      for (int k = 0; k < E; ++k)
        if (p.extras[static_cast<std::size_t>(v) * E + k] == 1) f.set(v, L + k);
    }
    return f;
  }

  double bound(const PartialAssignment& p) const {
    if (!p.num_nodes) {
      double best = kInfinity;
      for (int n = domain_.size.max_nodes; n >= domain_.size.min_nodes; --n)
        best = std::min(best, sized_bound(PartialAssignment::sized(n, domain_.num_labels, domain_.num_features)));
      return best;
    }
    return sized_bound(p);
  }

 private:
  // Labels each node may still take, after degree caps.
  std::optional<std::vector<std::vector<int>>> label_options(const PartialAssignment& p) const {
    const int n = *p.num_nodes, L = domain_.num_labels;
    std::vector<std::vector<int>> opts(n);
    for (int v = 0; v < n; ++v) {
      int indeg = 0;
      for (int u = 0; u < n; ++u) indeg += p.edge(u, v) == 1 ? 1 : 0;
      auto fits = [&](int l) {
        const auto cap = domain_.cap_for(l);
        return !cap || indeg <= *cap;
      };
      if (p.labels[v] >= 0) {
        if (fits(p.labels[v])) opts[v].push_back(p.labels[v]);
      } else {
        for (int l = 0; l < L; ++l)
          if (fits(l)) opts[v].push_back(l);
      }
      if (opts[v].empty()) return std::nullopt;
    }
    for (std::size_t l = 0; l < domain_.label_counts.size(); ++l) {
      int fixed = 0, possible = 0;
      for (int v = 0; v < n; ++v) {
        fixed += opts[v].size() == 1 && opts[v][0] == static_cast<int>(l) ? 1 : 0;
        possible += std::find(opts[v].begin(), opts[v].end(), static_cast<int>(l)) != opts[v].end() ? 1 : 0;
      }
      if (fixed > domain_.label_counts[l].max || possible < domain_.label_counts[l].min) return std::nullopt;
    }
    return opts;
  }

  bool rows_possible(const PartialAssignment& p) const {
    const int n = *p.num_nodes, L = domain_.num_labels, E = domain_.num_features - L;
    for (const auto& row : domain_.rows) {
      double lo = 0.0, hi = 0.0;
      for (const auto& t : row.terms) {
        double a = 0.0, b = 0.0;  // value range of the structural variable
        switch (t.kind) {
          case StructuralVar::NodeExists:
            a = b = t.i < n ? 1.0 : 0.0;
            break;
          case StructuralVar::Edge:
            if (t.i < n && t.j < n && t.i != t.j) {
              const auto e = p.edge(t.i, t.j);
              a = e == 1 ? 1.0 : 0.0;
              b = e == 0 ? 0.0 : 1.0;
            }
            break;
          case StructuralVar::Feature:
            if (t.i < n) {
              if (t.j < L) {
                const int l = p.labels[t.i];
                a = l == t.j ? 1.0 : 0.0;
                b = l < 0 || l == t.j ? 1.0 : 0.0;
              } else {
                const auto e = p.extras[static_cast<std::size_t>(t.i) * E + (t.j - L)];
                a = e == 1 ? 1.0 : 0.0;
                b = e == 0 ? 0.0 : 1.0;
              }
            }
            break;
        }
        lo += std::min(t.coef * a, t.coef * b);
        hi += std::max(t.coef * a, t.coef * b);
      }
      const double tol = 1e-9;
      if (row.sense == Sense::LessEqual && lo > row.rhs + tol) return false;
      if (row.sense == Sense::GreaterEqual && hi < row.rhs - tol) return false;
      if (row.sense == Sense::Equal && (lo > row.rhs + tol || hi < row.rhs - tol)) return false;
    }
    return true;
  }

  double sized_bound(const PartialAssignment& p) const {
    const int n = *p.num_nodes;
    if (!domain_.size.contains(n)) return kInfinity;
    const int L = domain_.num_labels, M = domain_.num_features, E = M - L;
    const auto opts = label_options(p);
    if (!opts || !rows_possible(p)) return kInfinity;

    std::vector<std::int8_t> max_adj(p.edges), min_adj(p.edges);
    for (auto& e : max_adj) e = e == 0 ? 0 : 1;
    for (auto& e : min_adj) e = e == 1 ? 1 : 0;
    for (int v = 0; v < n; ++v) max_adj[static_cast<std::size_t>(v) * n + v] = 0;
    const auto lo = bfs_distances(max_adj, n);
    if (std::find(lo.begin(), lo.end(), kUnreachable) != lo.end()) return kInfinity;

    if (p.complete()) return leaf(adjacency_of(p), features_of(p)).value_or(kInfinity);

    auto hi = bfs_distances(min_adj, n);
    for (auto& d : hi) d = d == kUnreachable ? n - 1 : std::min(d, n - 1);

    const SizeTables& t = tables(n);
    auto cell = [&](int s, int l1, int l2) { return labeled_ ? (s * L + l1) * L + l2 : s; };

    // Walks every (pair, length, label pair) cell a completion could use.
    auto for_pair_cells = [&](int u, int v, auto&& fn) {
      const std::size_t k = static_cast<std::size_t>(u) * n + v;
      if (!labeled_) {
        for (int s = lo[k]; s <= hi[k]; ++s) fn(cell(s, 0, 0));
        return;
      }
      for (int s = lo[k]; s <= hi[k]; ++s)
        for (int l1 : (*opts)[u])
          for (int l2 : (*opts)[v])
            if (u != v || l1 == l2) fn(cell(s, l1, l2));
    };

    double mu_lo = 0.0;
    if (!expo_) {
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          double best = kInfinity;
          for_pair_cells(u, v, [&](int c) { best = std::min(best, t.phi[c]); });
          mu_lo += best;
        }
    } else {
      for (std::size_t i = 0; i < t.coef.size(); ++i) {
        double klo = 0.0, khi = 0.0;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            double a = kInfinity, b = -kInfinity;
            for_pair_cells(u, v, [&](int c) {
              a = std::min(a, t.coef[i][c]);
              b = std::max(b, t.coef[i][c]);
            });
            klo += a;
            khi += b;
          }
        mu_lo += t.exp_weight[i] * std::exp(t.exp_weight[i] >= 0 ? klo : khi);
      }
    }
    for (int v = 0; v < n; ++v) {
      double best = kInfinity;
      for (int l : (*opts)[v]) best = std::min(best, t.psi[l]);
      mu_lo += best;
      for (int k = 0; k < E; ++k) {
        const auto e = p.extras[static_cast<std::size_t>(v) * E + k];
        const double psi = t.psi[L + k];
        mu_lo += e == 1 ? psi : e == 0 ? 0.0 : std::min(0.0, psi);
      }
    }

    // k(x,x) from above: path-count cells are nonnegative, sum to n^2 and
    // each is at most the number of pairs that can reach it.
    std::vector<double> reach(labeled_ ? n * L * L : n, 0.0);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) for_pair_cells(u, v, [&](int c) { reach[c] += 1.0; });
    double sum_sq = 0.0, peak = 0.0;
    for (double r : reach) {
      sum_sq += r * r;
      peak = std::max(peak, r);
    }
    const double n2 = double(n) * n;
    const double lin = std::min(sum_sq, peak * n2) / (n2 * n2);
    double kxx_hi = expo_ ? graph_self_weight_ * std::exp(lin) : graph_self_weight_ * lin;
    double feat_sq = 0.0;
    for (int m = 0; m < M; ++m) {
      double count = 0.0;
      for (int v = 0; v < n; ++v) {
        if (m < L) {
          count += std::find((*opts)[v].begin(), (*opts)[v].end(), m) != (*opts)[v].end() ? 1.0 : 0.0;
        } else {
          count += p.extras[static_cast<std::size_t>(v) * E + (m - L)] != 0 ? 1.0 : 0.0;
        }
      }
      feat_sq += count * count;
    }
    kxx_hi += feature_weight_ * feat_sq / (n2 * M);
    return mu_lo - beta_sqrt_ * std::sqrt(std::max(0.0, kxx_hi));
  }

  const GpModel& gp_;
  const DomainSpec& domain_;
  double beta_sqrt_;
  bool labeled_ = false;
  bool expo_ = false;
  double graph_self_weight_ = 1.0;
  double feature_weight_ = 1.0;
  std::vector<SizeTables> tables_;
};

struct Decision {
  enum class Kind { Size, Edge, Label, Extra } kind = Kind::Size;
  int a = 0, b = 0;
  std::vector<int> values;
};

std::optional<Decision> next_decision(const PartialAssignment& p, const Evaluator& ev) {
  const DomainSpec& d = ev.domain();
  if (!p.num_nodes) {
    Decision dec{Decision::Kind::Size, 0, 0, {}};
    for (int n = d.size.max_nodes; n >= d.size.min_nodes; --n) dec.values.push_back(n);
    return dec;
  }
  const int n = *p.num_nodes;
  for (auto [u, v] : ev.tables(n).slots)
    if (p.edge(u, v) < 0) return Decision{Decision::Kind::Edge, u, v, {1, 0}};
  for (int v = 0; v < n; ++v)
    if (p.labels[v] < 0) {
      Decision dec{Decision::Kind::Label, v, 0, {}};
      for (int l = 0; l < d.num_labels; ++l) dec.values.push_back(l);
      return dec;
    }
  for (std::size_t k = 0; k < p.extras.size(); ++k)
    if (p.extras[k] < 0) return Decision{Decision::Kind::Extra, static_cast<int>(k), 0, {1, 0}};
  return std::nullopt;
}

PartialAssignment apply(const PartialAssignment& p, const Decision& dec, int value, const DomainSpec& d) {
  if (dec.kind == Decision::Kind::Size) return PartialAssignment::sized(value, d.num_labels, d.num_features);
  PartialAssignment child = p;
  const int n = *p.num_nodes;
  switch (dec.kind) {
    case Decision::Kind::Edge:
      child.edges[static_cast<std::size_t>(dec.a) * n + dec.b] = static_cast<std::int8_t>(value);
      if (!d.directed) child.edges[static_cast<std::size_t>(dec.b) * n + dec.a] = static_cast<std::int8_t>(value);
      break;
    case Decision::Kind::Label:
      child.labels[dec.a] = value;
      break;
    case Decision::Kind::Extra:
      child.extras[dec.a] = static_cast<std::int8_t>(value);
      break;
    case Decision::Kind::Size:
      break;
  }
  return child;
}

struct SearchState {
  const Evaluator& ev;
  const SolveOptions& opt;
  Clock::time_point start;

  std::mutex mu;
  std::atomic<double> incumbent{kInfinity};
  std::optional<AttributedGraph> best;
  GraphKey best_key;
  double open_min = kInfinity;  // bounds of regions left unexplored

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};

  SearchState(const Evaluator& e, const SolveOptions& o) : ev(e), opt(o), start(Clock::now()) {}

  void offer(double value, const AttributedGraph& g) {
    std::lock_guard lock(mu);
    const double cur = incumbent.load();
    if (value < cur || (value == cur && best && graph_key(g) < best_key)) {
      incumbent.store(value);
      best = g;
      best_key = graph_key(g);
    }
  }

  void note_open(double b) {
    std::lock_guard lock(mu);
    open_min = std::min(open_min, b);
  }

  bool out_of_budget(std::uint64_t k) {
    if (stop.load(std::memory_order_relaxed)) return true;
    if ((opt.node_limit && k > *opt.node_limit) || seconds_since(start) > opt.budget_seconds) {
      stop.store(true);
      return true;
    }
    return false;
  }

  void log_line(std::uint64_t k, int depth, double b) {
    if (!opt.log || opt.log_interval == 0 || k % opt.log_interval != 0) return;
    std::lock_guard lock(mu);
    *opt.log << "node=" << k << " depth=" << depth << " bound=" << std::setprecision(10) << b
             << " incumbent=" << incumbent.load() << "\n";
  }
};

// Returns true when the search stopped on budget inside this subtree.
bool dfs(SearchState& st, const PartialAssignment& p, int depth, double parent_bound) {
  const std::uint64_t k = ++st.nodes;
  if (st.out_of_budget(k)) {
    st.note_open(parent_bound);
    return true;
  }
  const double b = st.ev.bound(p);
  if (b == kInfinity) return false;
  if (p.num_nodes && p.complete()) {
    st.offer(b, build_graph(Evaluator::adjacency_of(p), st.ev.features_of(p), st.ev.domain().directed,
                            st.ev.domain().num_labels));
    return false;
  }
  if (b > st.incumbent.load() - st.opt.gap) {
    st.note_open(b);
    return false;
  }
  st.log_line(k, depth, b);
  const auto dec = next_decision(p, st.ev);
  for (std::size_t i = 0; i < dec->values.size(); ++i) {
    if (dfs(st, apply(p, *dec, dec->values[i], st.ev.domain()), depth + 1, b)) {
      if (i + 1 < dec->values.size()) st.note_open(b);
      return true;
    }
  }
  return false;
}

void run_parallel(SearchState& st, int workers) {
  struct Task {
    PartialAssignment p;
    int depth;
  };
  std::deque<Task> frontier{{PartialAssignment::empty(), 0}};
  const std::size_t target = static_cast<std::size_t>(workers) * 8;
  // breadth-first split, keeping the sequential order of subtrees
  while (frontier.size() < target) {
    std::deque<Task> next;
    bool grew = false;
    for (auto& t : frontier) {
      const bool leaf = t.p.num_nodes && t.p.complete();
      const auto dec = leaf ? std::nullopt : next_decision(t.p, st.ev);
      if (!dec) {
        next.push_back(std::move(t));
        continue;
      }
      grew = true;
      for (int v : dec->values) next.push_back({apply(t.p, *dec, v, st.ev.domain()), t.depth + 1});
    }
    frontier = std::move(next);
    if (!grew) break;
  }
  std::vector<Task> tasks(frontier.begin(), frontier.end());
  std::vector<std::uint8_t> done(tasks.size(), 0);
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size() || st.stop.load()) return;
      if (!dfs(st, tasks[i].p, tasks[i].depth, -kInfinity)) done[i] = 1;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (!done[i]) st.note_open(st.ev.bound(tasks[i].p));
}

void finish_log(const SolveOptions& opt, const SolveResult& r) {
  if (!opt.log) return;
  *opt.log << "status=" << to_string(r.status) << " objective=" << std::setprecision(10) << r.objective
           << " bound=" << r.bound << " gap=" << (r.objective - r.bound) << " nodes=" << r.nodes_explored
           << " time=" << r.wall_time << "s\n";
}

void check_compatible(const GpModel& gp, const DomainSpec& domain, double beta_sqrt) {
  domain.validate();
  if (beta_sqrt < 0) throw Error(ErrorCode::InvalidArgument, "beta_sqrt must be nonnegative");
  if (gp.num_labels() != domain.num_labels || gp.num_features() != domain.num_features)
    throw Error(ErrorCode::IncompatibleDomain, "GP and domain disagree on label/feature counts");
  for (const auto& p : gp.points())
    if (p.graph.directed() != domain.directed)
      throw Error(ErrorCode::IncompatibleDomain, "GP training graphs disagree with the domain on directedness");
}

}  // namespace

std::string_view to_string(Strategy s) {
  return s == Strategy::Enumerate ? "enumerate" : "branch-and-propagate";
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::FeasibleTimeLimit: return "FeasibleTimeLimit";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "enumerate") return Strategy::Enumerate;
  if (s == "bnp" || s == "branch-and-propagate" || s == "branch_and_propagate") return Strategy::BranchAndPropagate;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

PartialAssignment PartialAssignment::empty() { return {}; }

PartialAssignment PartialAssignment::sized(int n, int num_labels, int num_features) {
  PartialAssignment p;
  p.num_nodes = n;
  p.edges.assign(static_cast<std::size_t>(n) * n, -1);
  for (int v = 0; v < n; ++v) p.edges[static_cast<std::size_t>(v) * n + v] = 0;
  p.labels.assign(n, -1);
  p.extras.assign(static_cast<std::size_t>(n) * (num_features - num_labels), -1);
  return p;
}

PartialAssignment PartialAssignment::full(const AttributedGraph& g) {
  const int n = g.num_nodes(), L = g.num_labels(), E = g.num_features() - L;
  PartialAssignment p = sized(n, L, g.num_features());
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) p.edges[static_cast<std::size_t>(u) * n + v] = g.has_edge(u, v) ? 1 : 0;
  for (int v = 0; v < n; ++v) {
    p.labels[v] = g.label(v);
    for (int k = 0; k < E; ++k) p.extras[static_cast<std::size_t>(v) * E + k] = g.features()(v, L + k) ? 1 : 0;
  }
  return p;
}

bool PartialAssignment::complete() const {
  if (!num_nodes) return false;
  return std::none_of(edges.begin(), edges.end(), [](auto e) { return e < 0; }) &&
         std::none_of(labels.begin(), labels.end(), [](int l) { return l < 0; }) &&
         std::none_of(extras.begin(), extras.end(), [](auto e) { return e < 0; });
}

std::optional<double> propagate_leaf(const AdjacencyMatrix& adjacency, const FeatureMatrix& features,
                                     const GpModel& gp, const DomainSpec& domain, double beta_sqrt) {
  check_compatible(gp, domain, beta_sqrt);
  return Evaluator(gp, domain, beta_sqrt).leaf(adjacency, features);
}

double dual_bound(const PartialAssignment& p, const GpModel& gp, const DomainSpec& domain, double beta_sqrt) {
  check_compatible(gp, domain, beta_sqrt);
  return Evaluator(gp, domain, beta_sqrt).bound(p);
}

SolveResult solve(const GpModel& gp, const DomainSpec& domain, double beta_sqrt, const SolveOptions& options) {
  check_compatible(gp, domain, beta_sqrt);
  const Evaluator ev(gp, domain, beta_sqrt);
  SolveResult result;

  if (options.strategy == Strategy::Enumerate) {
    const auto t0 = Clock::now();
    std::optional<AttributedGraph> best;
    double best_value = kInfinity;
    bool aborted = false;
    std::uint64_t nodes = 0;
    for_each_graph(
        domain,
        [&](const AttributedGraph& g) {
          ++nodes;
          if ((options.node_limit && nodes > *options.node_limit) || seconds_since(t0) > options.budget_seconds) {
            aborted = true;
            return false;
          }
          const double v = lcb(gp, g, beta_sqrt);
          if (v < best_value) {
            best_value = v;
            best = g;
          }
          return true;
        },
        options.enumeration_bits);
    result.incumbent = best;
    result.objective = best_value;
    result.nodes_explored = nodes;
    if (aborted) {
      result.status = best ? SolveStatus::FeasibleTimeLimit : SolveStatus::BudgetExhausted;
      result.bound = std::min(best_value, ev.bound(PartialAssignment::empty()));
    } else {
      result.status = best ? SolveStatus::Optimal : SolveStatus::Infeasible;
      result.bound = best_value;
    }
    result.wall_time = seconds_since(t0);
    finish_log(options, result);
    return result;
  }

  SearchState st(ev, options);
  for (const auto& g : options.warm_start) {
    if (g.directed() != domain.directed || g.num_features() != domain.num_features) continue;
    if (auto v = ev.leaf(g.adjacency(), g.features())) st.offer(*v, g);
  }

  if (options.workers <= 1) {
    dfs(st, PartialAssignment::empty(), 0, -kInfinity);
  } else {
    run_parallel(st, options.workers);
  }

  const bool aborted = st.stop.load();
  result.incumbent = st.best;
  result.objective = st.incumbent.load();
  result.nodes_explored = st.nodes.load();
  result.bound = std::min(result.objective, st.open_min);
  if (aborted) {
    result.status = st.best ? SolveStatus::FeasibleTimeLimit : SolveStatus::BudgetExhausted;
  } else {
    result.status = st.best ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  result.wall_time = seconds_since(st.start);
  finish_log(options, result);
  return result;
}

}  // namespace bogrape
