#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "bogrape/kernels.hpp"

namespace bogrape {

inline constexpr double kNoiseVariance = 1e-6;
inline constexpr double kRetryJitter = 1e-8;

/// Conditioned GP over attributed graphs. Immutable once built.
class GpModel {
 public:
  /// Prior-only model (no training data): mu = 0, var = k(x,x).
  static GpModel prior(KernelVariant variant, KernelHyperparams hyper, int num_labels, int num_features);

  /// Conditions on (X, y) at fixed hyperparameters. Throws
  /// FactorizationFailure if K + noise*I is not positive definite even after
  /// one retry with extra jitter.
  static GpModel condition(std::vector<GraphPoint> points, Eigen::VectorXd y, KernelVariant variant,
                           KernelHyperparams hyper, double noise_var = kNoiseVariance);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<GraphPoint>& points() const noexcept { return points_; }
  const Eigen::VectorXd& targets() const noexcept { return y_; }
  KernelVariant variant() const noexcept { return variant_; }
  const KernelHyperparams& hyper() const noexcept { return hyper_; }
  double noise_var() const noexcept { return noise_var_; }
  /// Total diagonal term actually factored (noise plus any retry jitter).
  double diagonal() const noexcept { return diagonal_; }
  const Eigen::MatrixXd& chol() const noexcept { return chol_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  int num_labels() const noexcept { return num_labels_; }
  int num_features() const noexcept { return num_features_; }

  /// (K_XX + diagonal*I)^{-1} reconstructed from the factor.
  Eigen::MatrixXd precision() const;

  Eigen::VectorXd cross_kernel(const ShortestPathSummary& x) const;
  double log_marginal_likelihood() const noexcept { return lml_; }

 private:
  GpModel() = default;

  std::vector<GraphPoint> points_;
  Eigen::VectorXd y_;
  KernelVariant variant_ = KernelVariant::SSP;
  KernelHyperparams hyper_;
  double noise_var_ = kNoiseVariance;
  double diagonal_ = kNoiseVariance;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd weights_;
  double lml_ = 0.0;
  int num_labels_ = 1;
  int num_features_ = 1;
};

struct Posterior {
  double mean = 0.0;
  double var = 0.0;
};

Posterior posterior(const GpModel& model, const ShortestPathSummary& x);
Posterior posterior(const GpModel& model, const AttributedGraph& x);

inline double lcb(const Posterior& p, double beta_sqrt) { return p.mean - beta_sqrt * std::sqrt(p.var); }
double lcb(const GpModel& model, const AttributedGraph& x, double beta_sqrt);
double lcb(const GpModel& model, const ShortestPathSummary& x, double beta_sqrt);

/// Gaussian log evidence computed through a Cholesky factorization with one
/// jitter retry. Throws FactorizationFailure.
double log_marginal_likelihood(std::span<const GraphPoint> points, const Eigen::VectorXd& y,
                               KernelVariant variant, const KernelHyperparams& hyper,
                               double noise_var = kNoiseVariance);

/// Same, on precomputed base matrices.
double log_marginal_likelihood(const BaseKernelMatrices& base, const Eigen::VectorXd& y, KernelVariant variant,
                               const KernelHyperparams& hyper, double noise_var = kNoiseVariance);

struct FitOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iterations = 200;
  double gradient_step = 1e-4;  // central differences in log space
};

/// Maximizes the log marginal likelihood over log(alpha), log(beta) (and
/// log(sigma_k_sq) for exponential variants) inside [0.01, 100]. Restart 0
/// starts from all ones, the others log-uniformly in the box.
GpModel fit(std::vector<GraphPoint> points, const Eigen::VectorXd& y, KernelVariant variant,
            const FitOptions& options = {});

nlohmann::json model_to_json(const GpModel& model);
GpModel model_from_json(const nlohmann::json& j);

}  // namespace bogrape
