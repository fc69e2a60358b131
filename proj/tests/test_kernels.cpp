#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bogrape/error.hpp"
#include "bogrape/kernels.hpp"
#include "support.hpp"

using namespace bogrape;

namespace {

KernelHyperparams graph_only(std::optional<double> sk = std::nullopt) { return {1.0, 0.0, sk}; }

FeatureMatrix feats(const std::vector<std::vector<int>>& rows) {
  FeatureMatrix f(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int v = 0; v < f.rows(); ++v)
    for (int m = 0; m < f.cols(); ++m) f.set(v, m, rows[v][m] != 0);
  return f;
}

}  // namespace

TEST_CASE("graph kernel values on fixtures") {
  const auto single = summarize(support::make_graph(1, {}, false));
  CHECK(k_graph(single, single, KernelVariant::SSP, graph_only()) == doctest::Approx(1.0).epsilon(1e-15));

  const auto k2 = summarize(support::k2());
  CHECK(std::abs(k_graph(k2, k2, KernelVariant::SSP, graph_only()) - 0.5) <= 1e-12);

  const auto p3 = summarize(support::path_graph(3));
  const auto k3 = summarize(support::complete_graph(3));
  CHECK(std::abs(k_graph(p3, k3, KernelVariant::SSP, graph_only()) - 33.0 / 81.0) <= 1e-12);

  const auto aa = summarize(support::k2({0, 0}, 2, 2));
  const auto ab = summarize(support::k2({0, 1}, 2, 2));
  CHECK(std::abs(k_graph(aa, ab, KernelVariant::SP, graph_only()) - 0.125) <= 1e-12);

  CHECK(std::abs(k_graph(k2, k2, KernelVariant::ESSP, graph_only(1.0)) - std::exp(0.5)) <= 1e-12);
  CHECK(std::abs(k_graph(k2, k2, KernelVariant::ESSP, graph_only(2.0)) - std::exp(0.5) / 2.0) <= 1e-12);
}

TEST_CASE("exponential variants need a variance") {
  const auto k2 = summarize(support::k2());
  try {
    k_graph(k2, k2, KernelVariant::ESP, graph_only());
    FAIL("expected MissingVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingVariance);
  }
}

TEST_CASE("feature kernel") {
  CHECK(std::abs(k_feature(feats({{1, 0}, {0, 1}}), feats({{1, 0}})) - 0.25) <= 1e-12);
  CHECK(std::abs(k_feature(feats({{1, 0}}), feats({{1, 0}})) - 0.5) <= 1e-12);
  CHECK(k_feature(feats({{0, 0}, {0, 0}}), feats({{1, 1}})) == 0.0);
  try {
    k_feature(feats({{1, 0}}), feats({{1, 0, 0}}));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("combined kernel") {
  const auto g = support::k2({0, 1}, 2, 2);
  CHECK(std::abs(k_combined(g, g, KernelVariant::SSP, {2.0, 3.0, {}}) - 1.75) <= 1e-12);
  CHECK(k_combined(g, g, KernelVariant::SSP, {1.0, 0.0, {}}) ==
        k_graph(summarize(g), summarize(g), KernelVariant::SSP, graph_only()));
  const auto h = support::path_graph(3, 2, 2, {1, 0, 1});
  const double kg = k_graph(summarize(g), summarize(h), KernelVariant::SSP, graph_only());
  const double kf = k_feature(g.features(), h.features());
  CHECK(std::abs(k_combined(g, h, KernelVariant::SSP, {0.01, 0.01, {}}) - 0.01 * (kg + kf)) <= 1e-15);
}

TEST_CASE("kernels match the pair-enumeration oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const bool directed = trial % 2 == 1;
    const auto a = support::random_connected(rng, 1 + static_cast<int>(rng() % 6), directed, 2, 3);
    const auto b = support::random_connected(rng, 1 + static_cast<int>(rng() % 6), directed, 2, 3);
    const auto sa = summarize(a), sb = summarize(b);
    // the oracle counts all matching distances; kernels truncate at s < min(n1, n2), which is every
    // distance the smaller graph can realize
    CHECK(std::abs(k_graph(sa, sb, KernelVariant::SSP, graph_only()) - support::pair_kernel(a, b, false)) <= 1e-12);
    CHECK(std::abs(k_graph(sa, sb, KernelVariant::SP, graph_only()) - support::pair_kernel(a, b, true)) <= 1e-12);
    CHECK(std::abs(k_feature(a.features(), b.features()) - support::pair_feature_kernel(a.features(), b.features())) <=
          1e-12);
  }
}

TEST_CASE("symmetry, range, permutation invariance") {
  std::mt19937_64 rng(17);
  const KernelHyperparams hyper{0.7, 1.3, 0.5};
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = support::random_connected(rng, 2 + static_cast<int>(rng() % 5), false, 2, 3);
    const auto b = support::random_connected(rng, 2 + static_cast<int>(rng() % 5), false, 2, 3);
    for (auto v : {KernelVariant::SSP, KernelVariant::SP, KernelVariant::ESSP, KernelVariant::ESP}) {
      CHECK(k_combined(a, b, v, hyper) == k_combined(b, a, v, hyper));
      const double kg = k_graph(summarize(a), summarize(b), v, hyper);
      if (is_exponential(v)) {
        CHECK(kg >= 1.0 / 0.5 - 1e-12);
        CHECK(kg <= std::exp(1.0) / 0.5 + 1e-12);
      } else {
        CHECK(kg >= 0.0);
        CHECK(kg <= 1.0);
      }
      const auto pa = permute_nodes(a, [&] {
        std::vector<int> p(a.num_nodes());
        for (int i = 0; i < a.num_nodes(); ++i) p[i] = (i + 1) % a.num_nodes();
        return p;
      }());
      CHECK(std::abs(k_combined(pa, b, v, hyper) - k_combined(a, b, v, hyper)) <= 1e-12);
    }
  }
}

TEST_CASE("SSP satisfies Cauchy-Schwarz") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto a = summarize(support::random_connected(rng, n, false));
    const auto b = summarize(support::random_connected(rng, n, false));
    const double ab = k_graph(a, b, KernelVariant::SSP, graph_only());
    CHECK(ab * ab <= k_graph(a, a, KernelVariant::SSP, graph_only()) * k_graph(b, b, KernelVariant::SSP, graph_only()) + 1e-15);
  }
}

TEST_CASE("gram matrices are symmetric and PSD") {
  const auto g = support::k2();
  const std::vector<AttributedGraph> one{g};
  const auto g1 = gram(std::span<const AttributedGraph>(one), KernelVariant::SSP, {});
  REQUIRE(g1.rows() == 1);
  CHECK(g1(0, 0) == doctest::Approx(k_combined(g, g, KernelVariant::SSP, {})));

  const std::vector<AttributedGraph> dup{g, g};
  const auto g2 = gram(std::span<const AttributedGraph>(dup), KernelVariant::SSP, {});
  CHECK(g2(0, 0) == g2(0, 1));
  CHECK(g2(1, 0) == g2(1, 1));

  std::mt19937_64 rng(31);
  std::vector<AttributedGraph> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(support::random_connected(rng, 1 + static_cast<int>(rng() % 6), false, 2, 3));
  for (auto v : {KernelVariant::SSP, KernelVariant::SP, KernelVariant::ESSP, KernelVariant::ESP}) {
    const KernelHyperparams hyper{1.0, 1.0, is_exponential(v) ? std::optional<double>(1.0) : std::nullopt};
    const auto K = gram(std::span<const AttributedGraph>(xs), v, hyper);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("variant names") {
  CHECK(parse_variant("ESSP") == KernelVariant::ESSP);
  CHECK(to_string(KernelVariant::SP) == "sp");
  try {
    parse_variant("wl");
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}
