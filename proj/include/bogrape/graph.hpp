#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace bogrape {

/// Dense n x n 0/1 matrix. Row u, column v holds the arc u -> v.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(int n) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const noexcept { return n_; }
  bool operator()(int u, int v) const { return bits_[index(u, v)] != 0; }
  void set(int u, int v, bool value = true) { bits_[index(u, v)] = value ? 1 : 0; }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Row-major n x M binary node-feature matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows) * cols, 0) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool operator()(int v, int m) const { return bits_[static_cast<std::size_t>(v) * cols_ + m] != 0; }
  void set(int v, int m, bool value = true) {
    bits_[static_cast<std::size_t>(v) * cols_ + m] = value ? 1 : 0;
  }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// A connected graph with a binary feature row per node. The first
/// `num_labels` feature columns one-hot encode the node label.
///
/// Instances are only produced through build_graph(), so every live object
/// satisfies the invariants: no self-loops, symmetric adjacency when
/// undirected, one label per node, (strongly) connected.
class AttributedGraph {
 public:
  int num_nodes() const noexcept { return adjacency_.size(); }
  bool directed() const noexcept { return directed_; }
  int num_labels() const noexcept { return num_labels_; }
  int num_features() const noexcept { return features_.cols(); }

  const AdjacencyMatrix& adjacency() const noexcept { return adjacency_; }
  const FeatureMatrix& features() const noexcept { return features_; }

  bool has_edge(int u, int v) const { return adjacency_(u, v); }
  int label(int v) const;
  int degree(int v) const;  // in-degree for directed graphs

  friend bool operator==(const AttributedGraph&, const AttributedGraph&) = default;

  friend AttributedGraph build_graph(AdjacencyMatrix adjacency, FeatureMatrix features, bool directed,
                                     int num_labels);

 private:
  AttributedGraph(AdjacencyMatrix adjacency, FeatureMatrix features, bool directed, int num_labels)
      : adjacency_(std::move(adjacency)), features_(std::move(features)), directed_(directed),
        num_labels_(num_labels) {}

  AdjacencyMatrix adjacency_;
  FeatureMatrix features_;
  bool directed_ = false;
  int num_labels_ = 1;
};

/// Validates and assembles a graph. Throws Error with NonSquare, SelfLoop,
/// AsymmetricUndirected, BadOneHot, DimensionMismatch or Disconnected.
AttributedGraph build_graph(AdjacencyMatrix adjacency, FeatureMatrix features, bool directed, int num_labels);

AttributedGraph build_graph(const std::vector<std::vector<int>>& adjacency,
                            const std::vector<std::vector<int>>& features, bool directed, int num_labels);

/// Enumeration key: size, then the free adjacency bits (u<v pairs when
/// undirected, all u != v otherwise, row-major), then labels, then the
/// non-label feature bits. Enumeration and solver tie-breaks share it.
struct GraphKey {
  int num_nodes = 0;
  std::vector<std::uint8_t> adjacency_bits;
  std::vector<int> labels;
  std::vector<std::uint8_t> extra_bits;

  friend auto operator<=>(const GraphKey&, const GraphKey&) = default;
  friend bool operator==(const GraphKey&, const GraphKey&) = default;
};

GraphKey graph_key(const AttributedGraph& g);

/// The free adjacency slots of an n-node graph in enumeration order.
std::vector<std::pair<int, int>> adjacency_slots(int n, bool directed);

/// Relabels nodes: node v of the result is node perm[v] of g.
AttributedGraph permute_nodes(const AttributedGraph& g, const std::vector<int>& perm);

}  // namespace bogrape
