#include "bogrape/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "bogrape/error.hpp"
#include "bogrape/graph_io.hpp"

namespace bogrape {

namespace {

struct Factor {
  Eigen::MatrixXd lower;
  double diagonal = 0.0;
};

// Cholesky of K + noise*I, retrying once with extra jitter.
Factor factorize(const Eigen::MatrixXd& k, double noise_var) {
  const auto t = k.rows();
  for (double diag : {noise_var, noise_var + kRetryJitter}) {
    Eigen::MatrixXd a = k;
    a.diagonal().array() += diag;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd lower = llt.matrixL();
      if (lower.diagonal().minCoeff() > 0.0) return {std::move(lower), diag};
    }
  }
  throw Error(ErrorCode::FactorizationFailure, "kernel matrix of size " + std::to_string(t) +
                                                   " is not positive definite after jitter");
}

double evidence(const Factor& f, const Eigen::VectorXd& y) {
  const Eigen::VectorXd z = f.lower.triangularView<Eigen::Lower>().solve(y);
  const double log_det_half = f.lower.diagonal().array().log().sum();
  return -0.5 * z.squaredNorm() - log_det_half - 0.5 * double(y.size()) * std::log(2.0 * std::numbers::pi);
}

}  // namespace

GpModel GpModel::prior(KernelVariant variant, KernelHyperparams hyper, int num_labels, int num_features) {
  if (is_exponential(variant) && !hyper.sigma_k_sq)
    throw Error(ErrorCode::MissingVariance, "exponential kernel needs sigma_k_sq");
  GpModel m;
  m.variant_ = variant;
  m.hyper_ = hyper;
  m.num_labels_ = num_labels;
  m.num_features_ = num_features;
  m.y_ = Eigen::VectorXd(0);
  m.weights_ = Eigen::VectorXd(0);
  m.chol_ = Eigen::MatrixXd(0, 0);
  return m;
}

GpModel GpModel::condition(std::vector<GraphPoint> points, Eigen::VectorXd y, KernelVariant variant,
                           KernelHyperparams hyper, double noise_var) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "conditioning needs at least one point");
  if (static_cast<Eigen::Index>(points.size()) != y.size())
    throw Error(ErrorCode::DimensionMismatch, "points and targets differ in length");
  if (is_exponential(variant) && !hyper.sigma_k_sq)
    throw Error(ErrorCode::MissingVariance, "exponential kernel needs sigma_k_sq");
  GpModel m;
  m.num_labels_ = points.front().graph.num_labels();
  m.num_features_ = points.front().graph.num_features();
  for (const auto& p : points)
    if (p.graph.num_labels() != m.num_labels_ || p.graph.num_features() != m.num_features_)
      throw Error(ErrorCode::DimensionMismatch, "training graphs disagree on label/feature counts");
  const Eigen::MatrixXd k = gram(std::span<const GraphPoint>(points), variant, hyper);
  Factor f = factorize(k, noise_var);
  const auto solve = [&](const Eigen::VectorXd& b) -> Eigen::VectorXd {
    return f.lower.transpose().triangularView<Eigen::Upper>().solve(f.lower.triangularView<Eigen::Lower>().solve(b));
  };
  m.weights_ = solve(y);
  // one step of iterative refinement with an extended-precision residual
  using LongMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  LongMat a = k.cast<long double>();
  a.diagonal().array() += static_cast<long double>(f.diagonal);
  const Eigen::VectorXd r = (y.cast<long double>() - a * m.weights_.cast<long double>()).cast<double>();
  m.weights_ += solve(r);
  m.lml_ = evidence(f, y);
  m.chol_ = std::move(f.lower);
  m.diagonal_ = f.diagonal;
  m.points_ = std::move(points);
  m.y_ = std::move(y);
  m.variant_ = variant;
  m.hyper_ = hyper;
  m.noise_var_ = noise_var;
  return m;
}

Eigen::MatrixXd GpModel::precision() const {
  const auto t = chol_.rows();
  const Eigen::MatrixXd linv = chol_.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(t, t));
  Eigen::MatrixXd q = linv.transpose() * linv;
  return 0.5 * (q + q.transpose());
}

Eigen::VectorXd GpModel::cross_kernel(const ShortestPathSummary& x) const {
  Eigen::VectorXd k(static_cast<Eigen::Index>(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i)
    k[static_cast<Eigen::Index>(i)] = k_combined(x, points_[i].summary, variant_, hyper_);
  return k;
}

Posterior posterior(const GpModel& model, const ShortestPathSummary& x) {
  const double kxx = k_combined(x, x, model.variant(), model.hyper());
  if (model.empty()) return {0.0, kxx};
  const Eigen::VectorXd k = model.cross_kernel(x);
  const Eigen::VectorXd v = model.chol().triangularView<Eigen::Lower>().solve(k);
  // extended-precision sum in the same order as the mean row of the acquisition model
  long double mean = 0.0;
  for (Eigen::Index i = 0; i < k.size(); ++i) mean += static_cast<long double>(model.weights()(i)) * k(i);
  return {static_cast<double>(mean), std::max(0.0, kxx - v.squaredNorm())};
}

Posterior posterior(const GpModel& model, const AttributedGraph& x) { return posterior(model, summarize(x)); }

double lcb(const GpModel& model, const ShortestPathSummary& x, double beta_sqrt) {
  if (beta_sqrt < 0.0) throw Error(ErrorCode::InvalidArgument, "beta_sqrt must be nonnegative");
  return lcb(posterior(model, x), beta_sqrt);
}

double lcb(const GpModel& model, const AttributedGraph& x, double beta_sqrt) {
  return lcb(model, summarize(x), beta_sqrt);
}

double log_marginal_likelihood(const BaseKernelMatrices& base, const Eigen::VectorXd& y, KernelVariant variant,
                               const KernelHyperparams& hyper, double noise_var) {
  if (base.graph.rows() != y.size() || y.size() == 0)
    throw Error(ErrorCode::DimensionMismatch, "need |X| = |y| >= 1");
  return evidence(factorize(combine(base, variant, hyper), noise_var), y);
}

double log_marginal_likelihood(std::span<const GraphPoint> points, const Eigen::VectorXd& y,
                               KernelVariant variant, const KernelHyperparams& hyper, double noise_var) {
  return log_marginal_likelihood(base_kernel_matrices(points, variant), y, variant, hyper, noise_var);
}

namespace {

class LogSpaceObjective {
 public:
  LogSpaceObjective(const BaseKernelMatrices& base, const Eigen::VectorXd& y, KernelVariant variant)
      : base_(base), y_(y), variant_(variant) {}

  int dim() const { return is_exponential(variant_) ? 3 : 2; }

  KernelHyperparams params(const Eigen::VectorXd& theta) const {
    KernelHyperparams h{std::exp(theta[0]), std::exp(theta[1]), std::nullopt};
    if (dim() == 3) h.sigma_k_sq = std::exp(theta[2]);
    // exp(log(x)) can land a hair outside the box
    h.alpha = std::clamp(h.alpha, kHyperMin, kHyperMax);
    h.beta = std::clamp(h.beta, kHyperMin, kHyperMax);
    if (h.sigma_k_sq) h.sigma_k_sq = std::clamp(*h.sigma_k_sq, kHyperMin, kHyperMax);
    return h;
  }

  double operator()(const Eigen::VectorXd& theta) const {
    try {
      return log_marginal_likelihood(base_, y_, variant_, params(theta));
    } catch (const Error&) {
      return -std::numeric_limits<double>::infinity();
    }
  }

 private:
  const BaseKernelMatrices& base_;
  const Eigen::VectorXd& y_;
  KernelVariant variant_;
};

const double kLogLo = std::log(kHyperMin);
const double kLogHi = std::log(kHyperMax);

Eigen::VectorXd clip(Eigen::VectorXd theta) {
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] = std::clamp(theta[i], kLogLo, kLogHi);
  return theta;
}

Eigen::VectorXd gradient(const LogSpaceObjective& f, const Eigen::VectorXd& theta, double h) {
  Eigen::VectorXd g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::VectorXd up = theta, down = theta;
    up[i] = std::min(theta[i] + h, kLogHi);
    down[i] = std::max(theta[i] - h, kLogLo);
    const double fu = f(up), fd = f(down);
    g[i] = (std::isfinite(fu) && std::isfinite(fd)) ? (fu - fd) / (up[i] - down[i]) : 0.0;
    // zero the components that push out of the box
    if ((theta[i] >= kLogHi && g[i] > 0) || (theta[i] <= kLogLo && g[i] < 0)) g[i] = 0.0;
  }
  return g;
}

struct LocalResult {
  Eigen::VectorXd theta;
  double value;
};

LocalResult ascend(const LogSpaceObjective& f, Eigen::VectorXd theta, const FitOptions& opt) {
  double value = f(theta);
  double step = 0.5;
  for (int it = 0; it < opt.max_iterations && step > 1e-10; ++it) {
    const Eigen::VectorXd g = gradient(f, theta, opt.gradient_step);
    const double norm = g.norm();
    if (!(norm > 1e-12)) break;
    bool moved = false;
    while (step > 1e-10) {
      const Eigen::VectorXd cand = clip(theta + (step / norm) * g);
      const double cv = f(cand);
      if (cv > value) {
        theta = cand;
        value = cv;
        step = std::min(step * 2.0, 4.0);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  // Compass polish around the gradient optimum.
  for (double h = 0.25; h > 1e-7; h *= 0.25) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (Eigen::Index i = 0; i < theta.size(); ++i)
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd cand = theta;
          cand[i] += sign * h;
          cand = clip(cand);
          const double cv = f(cand);
          if (cv > value) {
            theta = cand;
            value = cv;
            improved = true;
          }
        }
    }
  }
  return {theta, value};
}

}  // namespace

GpModel fit(std::vector<GraphPoint> points, const Eigen::VectorXd& y, KernelVariant variant,
            const FitOptions& options) {
  if (points.size() < 2) throw Error(ErrorCode::InvalidArgument, "fit needs at least two points");
  if (static_cast<Eigen::Index>(points.size()) != y.size())
    throw Error(ErrorCode::DimensionMismatch, "points and targets differ in length");
  const BaseKernelMatrices base = base_kernel_matrices(points, variant);
  const LogSpaceObjective objective(base, y, variant);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(kLogLo, kLogHi);
  std::optional<LocalResult> best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Eigen::VectorXd start = Eigen::VectorXd::Zero(objective.dim());
    if (r > 0)
      for (Eigen::Index i = 0; i < start.size(); ++i) start[i] = uniform(rng);
    LocalResult res = ascend(objective, start, options);
    if (!best || res.value > best->value) best = std::move(res);
  }
  if (!std::isfinite(best->value))
    throw Error(ErrorCode::FactorizationFailure, "no hyperparameter setting factorizes");
  return GpModel::condition(std::move(points), y, variant, objective.params(best->theta));
}

nlohmann::json model_to_json(const GpModel& model) {
  nlohmann::json j;
  j["variant"] = std::string(to_string(model.variant()));
  j["hyper"] = {{"alpha", model.hyper().alpha}, {"beta", model.hyper().beta}};
  if (model.hyper().sigma_k_sq) j["hyper"]["sigma_k_sq"] = *model.hyper().sigma_k_sq;
  j["noise_var"] = model.noise_var();
  j["num_labels"] = model.num_labels();
  j["num_features"] = model.num_features();
  j["training"] = nlohmann::json::array();
  for (std::size_t i = 0; i < model.size(); ++i)
    j["training"].push_back(
        {{"graph", graph_to_json(model.points()[i].graph)}, {"y", model.targets()[static_cast<Eigen::Index>(i)]}});
  j["weights"] = std::vector<double>(model.weights().data(), model.weights().data() + model.weights().size());
  j["log_marginal_likelihood"] = model.log_marginal_likelihood();
  return j;
}

GpModel model_from_json(const nlohmann::json& j) {
  try {
    const KernelVariant variant = parse_variant(j.at("variant").get<std::string>());
    KernelHyperparams hyper{j.at("hyper").at("alpha").get<double>(), j.at("hyper").at("beta").get<double>(),
                            std::nullopt};
    if (j.at("hyper").contains("sigma_k_sq")) hyper.sigma_k_sq = j.at("hyper").at("sigma_k_sq").get<double>();
    const double noise = j.value("noise_var", kNoiseVariance);
    const auto& training = j.at("training");
    if (training.empty())
      return GpModel::prior(variant, hyper, j.at("num_labels").get<int>(), j.at("num_features").get<int>());
    std::vector<GraphPoint> points;
    Eigen::VectorXd y(static_cast<Eigen::Index>(training.size()));
    for (std::size_t i = 0; i < training.size(); ++i) {
      points.emplace_back(graph_from_json(training[i].at("graph")));
      y[static_cast<Eigen::Index>(i)] = training[i].at("y").get<double>();
    }
    GpModel model = GpModel::condition(std::move(points), std::move(y), variant, hyper, noise);
    if (j.contains("weights")) {
      const auto stored = j.at("weights").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(stored.size()) != model.weights().size())
        throw Error(ErrorCode::ParseError, "stored weights do not match training set size");
      const Eigen::Map<const Eigen::VectorXd> w(stored.data(), static_cast<Eigen::Index>(stored.size()));
      const double scale = std::max(1.0, model.weights().cwiseAbs().maxCoeff());
      if ((w - model.weights()).cwiseAbs().maxCoeff() > 1e-6 * scale)
        throw Error(ErrorCode::ParseError, "stored weights disagree with the refactored model");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed model: ") + e.what());
  }
}

}  // namespace bogrape
