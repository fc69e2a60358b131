#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bogrape/bo/oracles.hpp"
#include "bogrape/domain.hpp"
#include "bogrape/gp.hpp"
#include "bogrape/kernels.hpp"
#include "bogrape/solve/solver.hpp"

namespace bogrape {

struct BoConfig {
  KernelVariant variant = KernelVariant::SSP;
  double beta_sqrt = 1.0;
  int initial_samples = 10;
  int iterations = 50;
  double budget_seconds = 600.0;
  int warm_start = 20;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::BranchAndPropagate;
  int workers = 1;
  int fit_restarts = 8;
  /// Proposals are appended here keyed by proposal_id when set.
  std::optional<std::filesystem::path> graph_file;
  std::ostream* log = nullptr;

  void validate() const;  // throws InvalidArgument
};

struct BoRecord {
  int iter = 0;  // 0 for the initial samples
  int proposal_id = 0;
  std::optional<AttributedGraph> graph;
  double y = 0.0;
  double best_y = 0.0;
  double mu = std::numeric_limits<double>::quiet_NaN();
  double sigma = std::numeric_limits<double>::quiet_NaN();
  std::string solver_status;
  double bound = std::numeric_limits<double>::quiet_NaN();
  double solve_seconds = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> sigma_k_sq;
};

struct BoHistory {
  std::vector<BoRecord> records;
  std::optional<std::string> error;  // set when the loop aborted early

  double best_y() const;
  /// Best value among the initial samples and the first `iter` iterations.
  double best_y_at(int iter) const;

  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
  /// Graphs are not stored in the CSV; records come back without them.
  static BoHistory from_csv(const std::string& text);
  static BoHistory read_csv(const std::filesystem::path& path);
};

struct WarmCandidate {
  AttributedGraph graph;
  double lcb = 0.0;
};

/// k fresh feasible samples plus the prior points, scored by the LCB and
/// sorted best first.
std::vector<WarmCandidate> warm_start(const GpModel& gp, const DomainSpec& domain, int k, std::uint64_t seed,
                                      std::span<const AttributedGraph> prior, double beta_sqrt = 1.0);

/// Sample, then repeatedly fit, encode, solve and query. Errors stop the
/// loop and are reported in BoHistory::error with the records so far.
BoHistory run(const ObjectiveOracle& oracle, const DomainSpec& domain, const BoConfig& config);

/// Evaluates initial_samples + iterations feasible samples with the same
/// seeding as run(), so both start from identical initial data.
BoHistory random_baseline(const ObjectiveOracle& oracle, const DomainSpec& domain, const BoConfig& config);

/// Seed for the index-th draw of a stream, derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace bogrape
