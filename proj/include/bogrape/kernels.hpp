#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bogrape/graph.hpp"
#include "bogrape/shortest_paths.hpp"

namespace bogrape {

enum class KernelVariant { SSP, SP, ESSP, ESP };

std::string_view to_string(KernelVariant v);
KernelVariant parse_variant(std::string_view name);  // "ssp", "sp", "essp", "esp"; case-insensitive

constexpr bool is_exponential(KernelVariant v) { return v == KernelVariant::ESSP || v == KernelVariant::ESP; }
constexpr bool is_labeled(KernelVariant v) { return v == KernelVariant::SP || v == KernelVariant::ESP; }

inline constexpr double kHyperMin = 0.01;
inline constexpr double kHyperMax = 100.0;

struct KernelHyperparams {
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<double> sigma_k_sq;  // exponential variants only

  bool in_box() const;
};

/// A training or candidate point: the graph plus its precomputed summary.
struct GraphPoint {
  AttributedGraph graph;
  ShortestPathSummary summary;

  explicit GraphPoint(AttributedGraph g) : graph(std::move(g)), summary(summarize(graph)) {}
};

std::vector<GraphPoint> make_points(std::span<const AttributedGraph> graphs);

/// Un-normalized path-count inner products: sum_s D_s D'_s (unlabeled) or
/// sum_{s,l1,l2} P P' (labeled).
double path_inner_product(const ShortestPathSummary& a, const ShortestPathSummary& b, bool labeled);

/// SSP or SP value in [0, 1].
double linear_graph_kernel(const ShortestPathSummary& a, const ShortestPathSummary& b, bool labeled);

double k_graph(const ShortestPathSummary& a, const ShortestPathSummary& b, KernelVariant variant,
               const KernelHyperparams& hyper);

/// Permutation-invariant feature kernel on column sums.
double k_feature(const FeatureMatrix& f1, const FeatureMatrix& f2);
double k_feature(const ShortestPathSummary& a, const ShortestPathSummary& b);

double k_combined(const ShortestPathSummary& a, const ShortestPathSummary& b, KernelVariant variant,
                  const KernelHyperparams& hyper);
double k_combined(const AttributedGraph& a, const AttributedGraph& b, KernelVariant variant,
                  const KernelHyperparams& hyper);

/// Kernel matrices split into the hyperparameter-free parts so that fitting
/// can rescale them cheaply.
struct BaseKernelMatrices {
  Eigen::MatrixXd graph;    // SSP/SP values (pre-exponential)
  Eigen::MatrixXd feature;  // k_feature values
};

BaseKernelMatrices base_kernel_matrices(std::span<const GraphPoint> points, KernelVariant variant);
Eigen::MatrixXd combine(const BaseKernelMatrices& base, KernelVariant variant, const KernelHyperparams& hyper);

Eigen::MatrixXd gram(std::span<const GraphPoint> points, KernelVariant variant, const KernelHyperparams& hyper);
Eigen::MatrixXd gram(std::span<const AttributedGraph> graphs, KernelVariant variant,
                     const KernelHyperparams& hyper);

}  // namespace bogrape
