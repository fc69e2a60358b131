#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "bogrape/bo/bo.hpp"
#include "bogrape/bo/oracles.hpp"
#include "bogrape/enumerate.hpp"
#include "bogrape/error.hpp"
#include "bogrape/graph_io.hpp"
#include "support.hpp"

using namespace bogrape;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

DomainSpec domain(int n, bool directed = false, int L = 1, int M = 1) {
  DomainSpec d;
  d.size = SizeSpec::fixed(n);
  d.directed = directed;
  d.num_labels = L;
  d.num_features = M;
  return d;
}

BoConfig small_config(std::uint64_t seed, int iterations) {
  BoConfig c;
  c.initial_samples = 3;
  c.iterations = iterations;
  c.warm_start = 5;
  c.fit_restarts = 2;
  c.seed = seed;
  c.budget_seconds = 60;
  return c;
}

}  // namespace

TEST_CASE("oracles") {
  const auto p4 = support::path_graph(4);
  const auto prof = path_profile(p4);
  CHECK(prof == std::vector<double>{4, 6, 4, 2});
  const auto pp = path_profile_oracle(prof);
  CHECK(pp(p4) == 0.0);
  // K4 profile [4, 12, 0, 0]: (0 + 36 + 16 + 4) / 256
  CHECK(std::abs(pp(support::complete_graph(4)) - 56.0 / 256.0) <= 1e-15);
  const auto weighted = path_profile_oracle(prof, {1.0, 0.5});
  CHECK(std::abs(weighted(support::complete_graph(4)) - (18.0 + 16 + 4) / 256.0) <= 1e-15);

  const auto fc = feature_count_oracle({1.0, 0.0});
  CHECK(fc(support::k2({1, 1}, 2, 2)) == 0.0);
  CHECK(std::abs(fc(support::k2({0, 1}, 2, 2)) - 1.0 / 4.0) <= 1e-15);

  const auto kd = kernel_distance_oracle(support::k2());
  CHECK(std::abs(kd(support::k2()) + 0.5) <= 1e-15);

  const auto built = synthetic_oracle("path_profile", {{"target_graph", graph_to_json(p4)}});
  CHECK(built(p4) == 0.0);
  CHECK(synthetic_oracle("kernel_distance", {{"target", graph_to_json(support::k2())}})(support::k2()) == -0.5);
  CHECK(code_of([] { synthetic_oracle("qed", {}); }) == ErrorCode::UnknownOracle);
  CHECK(code_of([] { synthetic_oracle("feature_count", {}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0, 0) == derive_seed(1, 0, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
}

TEST_CASE("config validation") {
  BoConfig c;
  CHECK_NOTHROW(c.validate());
  c.beta_sqrt = -1;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  c = {};
  c.initial_samples = 1;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  c = {};
  c.budget_seconds = 0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("warm start") {
  const auto d = domain(4, false, 2, 3);
  std::vector<AttributedGraph> xs{sample_feasible(d, 1), sample_feasible(d, 2)};
  const auto gp = GpModel::condition(make_points(xs), Eigen::Vector2d(0.5, -0.5), KernelVariant::SSP, {});
  CHECK(warm_start(gp, d, 0, 7, {}).empty());
  const auto c = warm_start(gp, d, 6, 7, xs);
  CHECK(c.size() == 8);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(satisfies(d, c[i].graph));
    CHECK(c[i].lcb == lcb(gp, c[i].graph, 1.0));
    if (i > 0) CHECK(c[i - 1].lcb <= c[i].lcb);
  }
}

TEST_CASE("zero iterations keep only the initial samples") {
  const auto d = domain(4);
  const auto h = run(path_profile_oracle({4, 6, 4, 2}), d, small_config(3, 0));
  CHECK_FALSE(h.error.has_value());
  CHECK(h.records.size() == 3);
  for (const auto& r : h.records) {
    CHECK(r.iter == 0);
    CHECK(r.solver_status == "initial");
  }
}

TEST_CASE("runs are deterministic, monotone and feasible") {
  const auto d = domain(4, false, 2, 2);
  const auto oracle = feature_count_oracle({1.0, -1.0});
  const auto a = run(oracle, d, small_config(11, 4));
  const auto b = run(oracle, d, small_config(11, 4));
  REQUIRE_FALSE(a.error.has_value());
  CHECK(support::drop_csv_column(a.to_csv(), 8) == support::drop_csv_column(b.to_csv(), 8));
  CHECK(a.records.size() == 3 + 4);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& r = a.records[i];
    CHECK(r.proposal_id == static_cast<int>(i));
    REQUIRE(r.graph.has_value());
    CHECK(satisfies(d, *r.graph));
    CHECK(r.y == oracle(*r.graph));
    if (i > 0) CHECK(r.best_y <= a.records[i - 1].best_y);
    if (r.iter > 0) {
      CHECK(r.solver_status == "Optimal");
      CHECK(r.bound <= r.mu - r.sigma + 1e-9);
      CHECK(std::isfinite(r.alpha));
    }
  }
}

TEST_CASE("with exhaustive solving each proposal is the LCB minimizer") {
  const auto d = domain(4);
  auto c = small_config(5, 3);
  c.strategy = Strategy::Enumerate;
  const auto oracle = path_profile_oracle({4, 6, 4, 2});
  const auto h = run(oracle, d, c);
  REQUIRE_FALSE(h.error.has_value());
  // replay: refit on the data before each iteration and re-enumerate
  std::vector<AttributedGraph> xs;
  std::vector<double> ys;
  for (const auto& r : h.records) {
    if (r.iter > 0) {
      FitOptions fo;
      fo.restarts = c.fit_restarts;
      fo.seed = derive_seed(c.seed, 2, static_cast<std::uint64_t>(r.iter));
      const auto gp = fit(make_points(xs), Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size())),
                          c.variant, fo);
      double best = std::numeric_limits<double>::infinity();
      for_each_graph(d, [&](const AttributedGraph& g) {
        best = std::min(best, lcb(gp, g, c.beta_sqrt));
        return true;
      });
      CHECK(std::abs(lcb(gp, *r.graph, c.beta_sqrt) - best) <= 1e-9);
    }
    xs.push_back(*r.graph);
    ys.push_back(r.y);
  }
}

TEST_CASE("random baseline") {
  const auto d = domain(4, false, 2, 2);
  const auto oracle = feature_count_oracle({1.0, 0.0});
  const auto a = random_baseline(oracle, d, small_config(9, 6));
  const auto b = random_baseline(oracle, d, small_config(9, 6));
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.records.size() == 9);
  for (std::size_t i = 1; i < a.records.size(); ++i) CHECK(a.records[i].best_y <= a.records[i - 1].best_y);
  CHECK(a.records[3].solver_status == "random");

  // both start from the same initial samples
  const auto r = run(oracle, d, small_config(9, 0));
  for (int i = 0; i < 3; ++i) CHECK(*r.records[i].graph == *a.records[i].graph);
}

TEST_CASE("history CSV round trip and graph file") {
  const auto d = domain(3, true);
  const auto dir = std::filesystem::temp_directory_path() / "bogrape_bo_test";
  std::filesystem::create_directories(dir);
  const auto gfile = dir / "proposals.jsonl";
  std::filesystem::remove(gfile);
  auto c = small_config(2, 2);
  c.graph_file = gfile;
  const auto h = run(path_profile_oracle({3, 3, 3}), d, c);
  REQUIRE_FALSE(h.error.has_value());
  h.write_csv(dir / "h.csv");
  const auto back = BoHistory::read_csv(dir / "h.csv");
  REQUIRE(back.records.size() == h.records.size());
  CHECK(back.to_csv() == h.to_csv());
  CHECK(std::isnan(back.records[0].mu));
  CHECK_FALSE(back.records[0].sigma_k_sq.has_value());
  CHECK(h.to_csv().rfind("iter,proposal_id,y,best_y,mu,sigma,solver_status,bound,solve_seconds,alpha,beta,sigma_k_sq\n", 0) ==
        0);
  const auto graphs = read_graph_file(gfile);
  REQUIRE(graphs.size() == h.records.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) CHECK(graphs[i] == *h.records[i].graph);
  CHECK(code_of([] { BoHistory::from_csv("a,b\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("errors keep the partial history") {
  auto d = domain(3);
  d.degree_caps = {1};
  // sampling the initial data already fails on an empty domain
  const auto h = run(path_profile_oracle({3}), d, small_config(1, 2));
  CHECK(h.error.has_value());
  CHECK(h.records.empty());
}
