#include "bogrape/bo/bo.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bogrape/enumerate.hpp"
#include "bogrape/error.hpp"
#include "bogrape/graph_io.hpp"
#include "bogrape/mip/encode.hpp"
#include "bogrape/solve/feasibility.hpp"

namespace bogrape {

namespace {

constexpr const char* kHeader =
    "iter,proposal_id,y,best_y,mu,sigma,solver_status,bound,solve_seconds,alpha,beta,sigma_k_sq";

std::string field(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_field(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "bad CSV number '" + s + "'");
  return x;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Recorder {
  BoHistory& h;
  const BoConfig& cfg;
  int next_id = 0;

  BoRecord& add(int iter, const AttributedGraph& g, double y) {
    BoRecord r;
    r.iter = iter;
    r.proposal_id = next_id++;
    r.graph = g;
    r.y = y;
    r.best_y = h.records.empty() ? y : std::min(h.records.back().best_y, y);
    if (cfg.graph_file) append_graph_record(*cfg.graph_file, g, r.proposal_id);
    h.records.push_back(std::move(r));
    return h.records.back();
  }
};

std::vector<AttributedGraph> initial_samples(const DomainSpec& domain, const BoConfig& config) {
  std::vector<AttributedGraph> out;
  for (int j = 0; j < config.initial_samples; ++j)
    out.push_back(sample_feasible(domain, derive_seed(config.seed, 0, static_cast<std::uint64_t>(j))));
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  // splitmix64 finalizer over a mixed input
  std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void BoConfig::validate() const {
  if (beta_sqrt < 0) throw Error(ErrorCode::InvalidArgument, "beta_sqrt must be nonnegative");
  if (initial_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 initial samples to fit a GP");
  if (iterations < 0 || warm_start < 0) throw Error(ErrorCode::InvalidArgument, "counts must be nonnegative");
  if (!(budget_seconds > 0)) throw Error(ErrorCode::InvalidArgument, "solver budget must be positive");
  if (workers < 1 || fit_restarts < 1) throw Error(ErrorCode::InvalidArgument, "workers and restarts must be positive");
}

double BoHistory::best_y() const {
  return records.empty() ? std::numeric_limits<double>::infinity() : records.back().best_y;
}

double BoHistory::best_y_at(int iter) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : records)
    if (r.iter <= iter) best = std::min(best, r.y);
  return best;
}

std::string BoHistory::to_csv() const {
  std::ostringstream out;
  out << kHeader << "\n";
  for (const auto& r : records) {
    out << r.iter << "," << r.proposal_id << "," << field(r.y) << "," << field(r.best_y) << "," << field(r.mu) << ","
        << field(r.sigma) << "," << r.solver_status << "," << field(r.bound) << "," << field(r.solve_seconds) << ","
        << field(r.alpha) << "," << field(r.beta) << ","
        << (r.sigma_k_sq ? field(*r.sigma_k_sq) : std::string()) << "\n";
  }
  return out.str();
}

void BoHistory::write_csv(const std::filesystem::path& path) const { write_text_file(path, to_csv()); }

BoHistory BoHistory::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != split_csv(kHeader))
    throw Error(ErrorCode::ParseError, "history CSV has an unexpected header");
  BoHistory h;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw Error(ErrorCode::ParseError, "history row has " + std::to_string(f.size()) + " fields");
    BoRecord r;
    r.iter = static_cast<int>(parse_field(f[0]));
    r.proposal_id = static_cast<int>(parse_field(f[1]));
    r.y = parse_field(f[2]);
    r.best_y = parse_field(f[3]);
    r.mu = parse_field(f[4]);
    r.sigma = parse_field(f[5]);
    r.solver_status = f[6];
    r.bound = parse_field(f[7]);
    r.solve_seconds = parse_field(f[8]);
    r.alpha = parse_field(f[9]);
    r.beta = parse_field(f[10]);
    if (!f[11].empty()) r.sigma_k_sq = parse_field(f[11]);
    h.records.push_back(std::move(r));
  }
  return h;
}

BoHistory BoHistory::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_csv(ss.str());
}

std::vector<WarmCandidate> warm_start(const GpModel& gp, const DomainSpec& domain, int k, std::uint64_t seed,
                                      std::span<const AttributedGraph> prior, double beta_sqrt) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "warm-start count must be nonnegative");
  std::vector<WarmCandidate> out;
  for (int j = 0; j < k; ++j) {
    AttributedGraph g = sample_feasible(domain, derive_seed(seed, 3, static_cast<std::uint64_t>(j)));
    const double v = lcb(gp, g, beta_sqrt);
    out.push_back({std::move(g), v});
  }
  for (const auto& g : prior) out.push_back({g, lcb(gp, g, beta_sqrt)});
  std::stable_sort(out.begin(), out.end(), [](const WarmCandidate& a, const WarmCandidate& b) { return a.lcb < b.lcb; });
  return out;
}

BoHistory run(const ObjectiveOracle& oracle, const DomainSpec& domain, const BoConfig& config) {
  config.validate();
  domain.validate();
  BoHistory history;
  Recorder rec{history, config};
  std::vector<AttributedGraph> xs;
  std::vector<double> ys;
  try {
    for (auto& g : initial_samples(domain, config)) {
      const double y = oracle(g);
      BoRecord& r = rec.add(0, g, y);
      r.solver_status = "initial";
      xs.push_back(std::move(g));
      ys.push_back(y);
    }

    for (int t = 1; t <= config.iterations; ++t) {
      FitOptions fo;
      fo.restarts = config.fit_restarts;
      fo.seed = derive_seed(config.seed, 2, static_cast<std::uint64_t>(t));
      const GpModel gp = fit(make_points(xs), Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size())),
                             config.variant, fo);

      const mip::MipModel model = mip::encode_acquisition(gp, domain, config.beta_sqrt);

      SolveOptions so;
      so.strategy = config.strategy;
      so.budget_seconds = config.budget_seconds;
      so.workers = config.workers;
      so.log = config.log;
      so.log_interval = 0;
      for (auto& c : warm_start(gp, domain, config.warm_start, derive_seed(config.seed, 1, static_cast<std::uint64_t>(t)),
                                xs, config.beta_sqrt))
        so.warm_start.push_back(std::move(c.graph));

      const SolveResult res = solve(gp, domain, config.beta_sqrt, so);
      if (!res.incumbent)
        throw Error(ErrorCode::InfeasibleDomainDetected,
                    "solver returned no proposal (status " + std::string(to_string(res.status)) + ")");
      const AttributedGraph& g = *res.incumbent;

      // the proposal must be a feasible point of the encoded model
      if (const auto bad = mip::first_violation(model, mip::canonical_assignment(model, g)); !bad.empty())
        throw Error(ErrorCode::InvalidArgument, "proposal violates the encoded model at " + bad);

      const Posterior post = posterior(gp, g);
      const double y = oracle(g);
      BoRecord& r = rec.add(t, g, y);
      r.mu = post.mean;
      r.sigma = std::sqrt(post.var);
      r.solver_status = std::string(to_string(res.status));
      r.bound = res.bound;
      r.solve_seconds = res.wall_time;
      r.alpha = gp.hyper().alpha;
      r.beta = gp.hyper().beta;
      r.sigma_k_sq = gp.hyper().sigma_k_sq;
      if (config.log)
        *config.log << "iter=" << t << " y=" << y << " best_y=" << r.best_y << " status=" << r.solver_status << "\n";
      xs.push_back(g);
      ys.push_back(y);
    }
  } catch (const std::exception& e) {
    history.error = e.what();
  }
  return history;
}

BoHistory random_baseline(const ObjectiveOracle& oracle, const DomainSpec& domain, const BoConfig& config) {
  config.validate();
  domain.validate();
  BoHistory history;
  Recorder rec{history, config};
  const int total = config.initial_samples + config.iterations;
  for (int j = 0; j < total; ++j) {
    AttributedGraph g = sample_feasible(domain, derive_seed(config.seed, 0, static_cast<std::uint64_t>(j)));
    const int iter = j < config.initial_samples ? 0 : j - config.initial_samples + 1;
    BoRecord& r = rec.add(iter, g, oracle(g));
    r.solver_status = iter == 0 ? "initial" : "random";
  }
  return history;
}

}  // namespace bogrape
