#include "bogrape/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "bogrape/error.hpp"

namespace bogrape {

std::string_view to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::SSP: return "ssp";
    case KernelVariant::SP: return "sp";
    case KernelVariant::ESSP: return "essp";
    case KernelVariant::ESP: return "esp";
  }
  return "?";
}

KernelVariant parse_variant(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "ssp") return KernelVariant::SSP;
  if (lower == "sp") return KernelVariant::SP;
  if (lower == "essp") return KernelVariant::ESSP;
  if (lower == "esp") return KernelVariant::ESP;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel variant '" + lower + "'");
}

bool KernelHyperparams::in_box() const {
  auto ok = [](double x) { return x >= kHyperMin && x <= kHyperMax; };
  return ok(alpha) && ok(beta) && (!sigma_k_sq || ok(*sigma_k_sq));
}

std::vector<GraphPoint> make_points(std::span<const AttributedGraph> graphs) {
  std::vector<GraphPoint> points;
  points.reserve(graphs.size());
  for (const auto& g : graphs) points.emplace_back(g);
  return points;
}

double path_inner_product(const ShortestPathSummary& a, const ShortestPathSummary& b, bool labeled) {
  const int smax = std::min(a.n, b.n);
  double sum = 0.0;
  if (!labeled) {
    for (int s = 0; s < smax; ++s) sum += double(a.D(s)) * double(b.D(s));
    return sum;
  }
  if (a.num_labels != b.num_labels)
    throw Error(ErrorCode::DimensionMismatch, "SP kernel needs equal label counts");
  const int L = a.num_labels;
  for (int s = 0; s < smax; ++s)
    for (int l1 = 0; l1 < L; ++l1)
      for (int l2 = 0; l2 < L; ++l2) sum += double(a.P(s, l1, l2)) * double(b.P(s, l1, l2));
  return sum;
}

double linear_graph_kernel(const ShortestPathSummary& a, const ShortestPathSummary& b, bool labeled) {
  const double n1 = a.n, n2 = b.n;
  return path_inner_product(a, b, labeled) / (n1 * n1 * n2 * n2);
}

double k_graph(const ShortestPathSummary& a, const ShortestPathSummary& b, KernelVariant variant,
               const KernelHyperparams& hyper) {
  const double linear = linear_graph_kernel(a, b, is_labeled(variant));
  if (!is_exponential(variant)) return linear;
  if (!hyper.sigma_k_sq) throw Error(ErrorCode::MissingVariance, "exponential kernel needs sigma_k_sq");
  return std::exp(linear) / *hyper.sigma_k_sq;
}

double k_feature(const ShortestPathSummary& a, const ShortestPathSummary& b) {
  if (a.num_features != b.num_features)
    throw Error(ErrorCode::DimensionMismatch, "feature kernel needs equal feature counts");
  double sum = 0.0;
  for (int m = 0; m < a.num_features; ++m) sum += double(a.N(m)) * double(b.N(m));
  return sum / (double(a.n) * double(b.n) * double(a.num_features));
}

double k_feature(const FeatureMatrix& f1, const FeatureMatrix& f2) {
  if (f1.cols() != f2.cols())
    throw Error(ErrorCode::DimensionMismatch, "feature kernel needs equal feature counts");
  const int M = f1.cols();
  if (M == 0 || f1.rows() == 0 || f2.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "feature kernel needs nonempty matrices");
  double sum = 0.0;
  for (int m = 0; m < M; ++m) {
    long n1 = 0, n2 = 0;
    for (int v = 0; v < f1.rows(); ++v) n1 += f1(v, m) ? 1 : 0;
    for (int v = 0; v < f2.rows(); ++v) n2 += f2(v, m) ? 1 : 0;
    sum += double(n1) * double(n2);
  }
  return sum / (double(f1.rows()) * double(f2.rows()) * double(M));
}

double k_combined(const ShortestPathSummary& a, const ShortestPathSummary& b, KernelVariant variant,
                  const KernelHyperparams& hyper) {
  return hyper.alpha * k_graph(a, b, variant, hyper) + hyper.beta * k_feature(a, b);
}

double k_combined(const AttributedGraph& a, const AttributedGraph& b, KernelVariant variant,
                  const KernelHyperparams& hyper) {
  return k_combined(summarize(a), summarize(b), variant, hyper);
}

BaseKernelMatrices base_kernel_matrices(std::span<const GraphPoint> points, KernelVariant variant) {
  const auto t = static_cast<Eigen::Index>(points.size());
  BaseKernelMatrices base{Eigen::MatrixXd(t, t), Eigen::MatrixXd(t, t)};
  const bool labeled = is_labeled(variant);
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = i; j < t; ++j) {
      const auto& a = points[i].summary;
      const auto& b = points[j].summary;
      base.graph(i, j) = base.graph(j, i) = linear_graph_kernel(a, b, labeled);
      base.feature(i, j) = base.feature(j, i) = k_feature(a, b);
    }
  return base;
}

Eigen::MatrixXd combine(const BaseKernelMatrices& base, KernelVariant variant, const KernelHyperparams& hyper) {
  if (!is_exponential(variant)) return hyper.alpha * base.graph + hyper.beta * base.feature;
  if (!hyper.sigma_k_sq) throw Error(ErrorCode::MissingVariance, "exponential kernel needs sigma_k_sq");
  return (hyper.alpha / *hyper.sigma_k_sq) * base.graph.array().exp().matrix() + hyper.beta * base.feature;
}

Eigen::MatrixXd gram(std::span<const GraphPoint> points, KernelVariant variant, const KernelHyperparams& hyper) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "gram needs at least one point");
  return combine(base_kernel_matrices(points, variant), variant, hyper);
}

Eigen::MatrixXd gram(std::span<const AttributedGraph> graphs, KernelVariant variant,
                     const KernelHyperparams& hyper) {
  const auto points = make_points(graphs);
  return gram(std::span<const GraphPoint>(points), variant, hyper);
}

}  // namespace bogrape
