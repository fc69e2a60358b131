#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "bogrape/domain.hpp"
#include "bogrape/enumerate.hpp"
#include "bogrape/gp.hpp"

namespace bogrape {

enum class Strategy { Enumerate, BranchAndPropagate };
enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, BudgetExhausted };

std::string_view to_string(Strategy s);
std::string_view to_string(SolveStatus s);
Strategy parse_strategy(std::string_view name);  // "enumerate", "bnp"/"branch-and-propagate"

/// Structural bits of a search node. Entries are -1 while undecided.
/// Without a size (bounded domains before the first branch) the vectors are
/// empty.
struct PartialAssignment {
  std::optional<int> num_nodes;
  std::vector<std::int8_t> edges;   // n*n, row-major; diagonal fixed to 0
  std::vector<int> labels;          // n
  std::vector<std::int8_t> extras;  // n*(M-L), row-major

  static PartialAssignment empty();
  static PartialAssignment sized(int n, int num_labels, int num_features);
  static PartialAssignment full(const AttributedGraph& g);

  bool complete() const;
  std::int8_t edge(int u, int v) const { return edges[static_cast<std::size_t>(u) * *num_nodes + v]; }
};

/// Exact LCB at a fully assigned structure, or nullopt (pruned) when the
/// structure is disconnected, labels are not one-hot, or a domain
/// restriction fails.
std::optional<double> propagate_leaf(const AdjacencyMatrix& adjacency, const FeatureMatrix& features,
                                     const GpModel& gp, const DomainSpec& domain, double beta_sqrt);

/// Lower bound on the LCB over every feasible completion of `p`; +inf when
/// no completion can be feasible. Equals propagate_leaf on complete input.
double dual_bound(const PartialAssignment& p, const GpModel& gp, const DomainSpec& domain, double beta_sqrt);

struct SolveOptions {
  Strategy strategy = Strategy::BranchAndPropagate;
  double budget_seconds = 600.0;
  double gap = 1e-6;
  int workers = 1;
  std::optional<std::uint64_t> node_limit;
  double enumeration_bits = kDefaultEnumerationBits;
  /// Feasible graphs that seed the incumbent.
  std::vector<AttributedGraph> warm_start;
  std::ostream* log = nullptr;
  std::uint64_t log_interval = 10000;
};

struct SolveResult {
  std::optional<AttributedGraph> incumbent;
  double objective = std::numeric_limits<double>::infinity();
  double bound = -std::numeric_limits<double>::infinity();
  SolveStatus status = SolveStatus::BudgetExhausted;
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;
};

/// Minimizes mu - beta_sqrt * sigma over the domain. Ties go to the
/// smallest GraphKey. Throws DomainTooLarge for oversized Enumerate runs.
SolveResult solve(const GpModel& gp, const DomainSpec& domain, double beta_sqrt, const SolveOptions& options = {});

}  // namespace bogrape
