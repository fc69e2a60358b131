#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "bogrape/graph.hpp"

namespace bogrape {

enum class Sense { LessEqual, GreaterEqual, Equal };

/// Node count: fixed (min == max) or a bounded interval.
struct SizeSpec {
  int min_nodes = 1;
  int max_nodes = 1;

  static SizeSpec fixed(int n) { return {n, n}; }
  static SizeSpec range(int n0, int n) { return {n0, n}; }

  bool bounded() const noexcept { return min_nodes != max_nodes; }
  bool contains(int n) const noexcept { return n >= min_nodes && n <= max_nodes; }
  void validate() const;  // throws InvalidSizeBounds

  friend bool operator==(const SizeSpec&, const SizeSpec&) = default;
};

enum class StructuralVar { Edge, Feature, NodeExists };

/// Coefficient on a structural variable: Edge(i,j) is A_{i,j}, Feature(i,j)
/// is F_{i,j}, NodeExists(i) is 1 when node i is present.
struct DomainTerm {
  StructuralVar kind = StructuralVar::Edge;
  int i = 0;
  int j = 0;
  double coef = 0.0;
};

struct DomainRow {
  std::string name;
  std::vector<DomainTerm> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

struct LabelCountBound {
  int min = 0;
  int max = INT_MAX;
};

struct DomainSpec {
  SizeSpec size;
  bool directed = false;
  int num_labels = 1;
  int num_features = 1;
  /// Per-label cap on (in-)degree. Empty means uncapped.
  std::vector<std::optional<int>> degree_caps;
  /// Per-label bounds on how many nodes carry the label. Empty means none.
  std::vector<LabelCountBound> label_counts;
  std::vector<DomainRow> rows;

  void validate() const;  // throws InvalidDomain / InvalidSizeBounds

  std::optional<int> cap_for(int label) const {
    return label < static_cast<int>(degree_caps.size()) ? degree_caps[label] : std::nullopt;
  }
};

/// Row value for a graph; NodeExists(i) evaluates to 1 iff i < n.
double evaluate_row(const DomainRow& row, const AttributedGraph& g);
bool row_holds(Sense sense, double lhs, double rhs, double tol = 1e-9);

/// Shape checks (directedness, L, M, size) plus every domain constraint.
bool satisfies(const DomainSpec& domain, const AttributedGraph& g);

/// log2 of the raw structural search space of the largest size in range.
double search_space_bits(const DomainSpec& domain);

}  // namespace bogrape
