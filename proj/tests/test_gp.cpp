#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bogrape/error.hpp"
#include "bogrape/gp.hpp"
#include "support.hpp"

using namespace bogrape;

namespace {

std::vector<AttributedGraph> random_graphs(std::mt19937_64& rng, int count, int max_n = 5) {
  std::vector<AttributedGraph> xs;
  for (int i = 0; i < count; ++i)
    xs.push_back(support::random_connected(rng, 1 + static_cast<int>(rng() % max_n), false, 2, 3));
  return xs;
}

Eigen::VectorXd random_y(std::mt19937_64& rng, int count) {
  std::normal_distribution<double> nd;
  Eigen::VectorXd y(count);
  for (int i = 0; i < count; ++i) y(i) = nd(rng);
  return y;
}

double dense_lml(const Eigen::MatrixXd& K, const Eigen::VectorXd& y, double noise) {
  const Eigen::MatrixXd A = K + noise * Eigen::MatrixXd::Identity(K.rows(), K.cols());
  return -0.5 * y.dot(A.inverse() * y) - 0.5 * std::log(A.determinant()) -
         0.5 * static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("log marginal likelihood closed forms") {
  const std::vector<AttributedGraph> one{support::make_graph(1, {}, false)};
  const auto pts = make_points(one);
  // single node: k_SSP = 1, k_F = 1, so alpha = 1, beta = 0 gives k(x,x) = 1
  const double v = log_marginal_likelihood(pts, Eigen::VectorXd::Zero(1), KernelVariant::SSP, {1.0, 0.0, {}});
  CHECK(std::abs(v - (-0.5 * std::log(1.0 + 1e-6) - 0.5 * std::log(2.0 * std::numbers::pi))) <= 1e-12);

  const std::vector<AttributedGraph> dup{support::k2(), support::k2()};
  const double d = log_marginal_likelihood(make_points(dup), Eigen::VectorXd::Constant(2, 0.3), KernelVariant::SSP, {});
  CHECK(std::isfinite(d));
}

TEST_CASE("log marginal likelihood matches the dense oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto xs = random_graphs(rng, 5);
    const auto y = random_y(rng, 5);
    for (auto v : {KernelVariant::SSP, KernelVariant::ESP}) {
      const KernelHyperparams h{0.8, 1.7, is_exponential(v) ? std::optional<double>(2.0) : std::nullopt};
      const auto K = gram(std::span<const AttributedGraph>(xs), v, h);
      const double ours = log_marginal_likelihood(make_points(xs), y, v, h);
      CHECK(std::abs(ours - dense_lml(K, y, 1e-6)) <= 1e-8 * std::max(1.0, std::abs(ours)));
    }
  }
}

TEST_CASE("conditioned model invariants") {
  std::mt19937_64 rng(43);
  const auto xs = random_graphs(rng, 8);
  const auto y = random_y(rng, 8);
  const KernelHyperparams h{1.2, 0.6, {}};
  const auto m = GpModel::condition(make_points(xs), y, KernelVariant::SP, h);
  const auto K = gram(std::span<const AttributedGraph>(xs), KernelVariant::SP, h);
  const Eigen::MatrixXd A = K + m.diagonal() * Eigen::MatrixXd::Identity(8, 8);
  CHECK((m.chol() * m.chol().transpose() - A).norm() <= 1e-10 * A.norm());
  CHECK((A * m.weights() - y).norm() <= 1e-8);
  CHECK((m.precision() * A - Eigen::MatrixXd::Identity(8, 8)).norm() <= 1e-6);
}

TEST_CASE("posterior matches the dense oracle") {
  std::mt19937_64 rng(47);
  const auto xs = random_graphs(rng, 10);
  const auto y = random_y(rng, 10);
  for (auto v : {KernelVariant::SSP, KernelVariant::SP, KernelVariant::ESSP, KernelVariant::ESP}) {
    const KernelHyperparams h{1.5, 0.5, is_exponential(v) ? std::optional<double>(3.0) : std::nullopt};
    const auto m = GpModel::condition(make_points(xs), y, v, h);
    const auto K = gram(std::span<const AttributedGraph>(xs), v, h);
    for (int k = 0; k < 50; ++k) {
      const auto x = support::random_connected(rng, 1 + static_cast<int>(rng() % 5), false, 2, 3);
      Eigen::VectorXd kx(10);
      for (int i = 0; i < 10; ++i) kx(i) = k_combined(x, xs[i], v, h);
      const auto [mu, var] = support::dense_posterior(K, kx, k_combined(x, x, v, h), y, m.diagonal());
      const auto p = posterior(m, x);
      CHECK(std::abs(p.mean - mu) <= 1e-8 * std::max(1.0, std::abs(mu)));
      CHECK(std::abs(p.var - var) <= 1e-8);
      CHECK(p.var >= 0.0);
      CHECK(p.var <= k_combined(x, x, v, h) + 1e-8);
    }
  }
}

TEST_CASE("interpolation at training points and prior convention") {
  // linearly independent kernel features keep K well conditioned
  const std::vector<AttributedGraph> xs{support::make_graph(1, {}, false, {0}, 2, 3), support::k2({0, 1}, 2, 3),
                                        support::path_graph(3, 2, 3, {1, 1, 1}),
                                        support::complete_graph(3, 2, 3, {0, 0, 1}),
                                        support::path_graph(4, 2, 3, {0, 1, 0, 1})};
  Eigen::VectorXd y(5);
  y << -1.0, 0.5, 2.0, -0.3, 1.1;
  const auto m = GpModel::condition(make_points(xs), y, KernelVariant::SSP, {100.0, 100.0, std::nullopt});
  for (int i = 0; i < 5; ++i) {
    const auto p = posterior(m, xs[i]);
    CHECK(std::abs(p.mean - y(i)) <= 1e-4 * std::max(1.0, std::abs(y(i))));
    CHECK(p.var <= 1e-4);
  }
  CHECK(std::abs(lcb(m, xs[0], 1.0) + 1.0) <= 1e-2);

  const auto prior = GpModel::prior(KernelVariant::SSP, {}, 1, 1);
  const auto g = support::path_graph(3);
  const auto p = posterior(prior, g);
  CHECK(p.mean == 0.0);
  CHECK(std::abs(p.var - k_combined(g, g, KernelVariant::SSP, {})) <= 1e-15);
}

TEST_CASE("lcb") {
  CHECK(std::abs(lcb(Posterior{0.3, 0.04}, 1.0) - 0.1) <= 1e-15);
  CHECK(lcb(Posterior{0.3, 0.04}, 0.0) == 0.3);
}

TEST_CASE("adding data never increases variance") {
  std::mt19937_64 rng(59);
  const auto xs = random_graphs(rng, 12);
  const auto y = random_y(rng, 12);
  const auto tests = random_graphs(rng, 20);
  for (int t = 1; t < 12; ++t) {
    std::vector<AttributedGraph> a(xs.begin(), xs.begin() + t), b(xs.begin(), xs.begin() + t + 1);
    const auto ma = GpModel::condition(make_points(a), y.head(t), KernelVariant::SSP, {});
    const auto mb = GpModel::condition(make_points(b), y.head(t + 1), KernelVariant::SSP, {});
    for (const auto& x : tests) CHECK(posterior(mb, x).var <= posterior(ma, x).var + 1e-8);
  }
}

TEST_CASE("fit") {
  std::mt19937_64 rng(61);
  const auto xs = random_graphs(rng, 10);

  SUBCASE("zero targets") {
    const auto m = fit(make_points(xs), Eigen::VectorXd::Zero(10), KernelVariant::SSP, {});
    CHECK(m.hyper().in_box());
  }

  SUBCASE("dominates the generating hyperparameters") {
    const KernelHyperparams truth{2.0, 0.5, {}};
    const auto K = gram(std::span<const AttributedGraph>(xs), KernelVariant::SSP, truth);
    const Eigen::MatrixXd L = (K + 1e-6 * Eigen::MatrixXd::Identity(10, 10)).llt().matrixL();
    const Eigen::VectorXd y = L * random_y(rng, 10);
    const auto m = fit(make_points(xs), y, KernelVariant::SSP, {});
    CHECK(m.hyper().in_box());
    CHECK(m.log_marginal_likelihood() >= log_marginal_likelihood(make_points(xs), y, KernelVariant::SSP, truth) - 1e-6);
  }

  SUBCASE("deterministic in the seed, exponential variant fits the variance") {
    const auto y = random_y(rng, 10);
    FitOptions o;
    o.seed = 5;
    const auto a = fit(make_points(xs), y, KernelVariant::ESSP, o);
    const auto b = fit(make_points(xs), y, KernelVariant::ESSP, o);
    CHECK(a.hyper().alpha == b.hyper().alpha);
    CHECK(a.hyper().beta == b.hyper().beta);
    REQUIRE(a.hyper().sigma_k_sq.has_value());
    CHECK(*a.hyper().sigma_k_sq == *b.hyper().sigma_k_sq);
    CHECK(a.hyper().in_box());
  }
}

TEST_CASE("model json round trip") {
  std::mt19937_64 rng(67);
  const auto xs = random_graphs(rng, 6);
  const auto y = random_y(rng, 6);
  const auto m = GpModel::condition(make_points(xs), y, KernelVariant::ESP, {0.4, 2.5, 0.7});
  const auto back = model_from_json(model_to_json(m));
  CHECK(back.variant() == KernelVariant::ESP);
  const auto x = support::path_graph(4, 2, 3, {0, 1, 1, 0});
  CHECK(std::abs(posterior(back, x).mean - posterior(m, x).mean) <= 1e-12);
  CHECK(std::abs(posterior(back, x).var - posterior(m, x).var) <= 1e-12);
}
