#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bogrape/bo/bo.hpp"
#include "bogrape/bo/oracles.hpp"
#include "bogrape/enumerate.hpp"
#include "bogrape/error.hpp"
#include "bogrape/graph_io.hpp"
#include "bogrape/mip/encode.hpp"
#include "bogrape/mip/export.hpp"
#include "bogrape/solve/feasibility.hpp"
#include "bogrape/solve/solver.hpp"

namespace bogrape::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every key lives in one namespace shared by the config file and the flags
// of all subcommands; `--min-n` on the command line is `min_n` in a config.
struct Settings {
  std::optional<int> n, min_n, labels, features;
  std::optional<bool> directed;
  std::optional<json> degree_caps, label_counts, rows;

  std::optional<std::string> variant;
  std::optional<double> alpha, beta, sigma_k_sq;
  std::optional<bool> combined;

  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<double> beta_sqrt;

  std::optional<std::string> strategy;
  std::optional<double> budget, gap;
  std::optional<int> workers;
  std::optional<std::uint64_t> node_limit, log_interval, cap;
  std::optional<double> max_bits;

  std::optional<std::string> format;
  std::optional<int> breakpoints;

  std::optional<std::string> oracle;
  std::optional<json> oracle_params;
  std::optional<int> initial, iterations, warm_start;

  std::optional<std::string> a, b, graphs, dataset, model, out, history, graph_file;
  std::optional<int> count;
};

struct Key {
  std::string name;
  std::string help;
  std::function<void(CLI::App&, Settings&)> add;     // registers the flag
  std::function<void(const json&, Settings&)> load;  // fills an unset field from the config
};

std::string flag_of(const std::string& key) {
  std::string f = "--" + key;
  std::replace(f.begin(), f.end(), '_', '-');
  return f;
}

template <class T>
Key typed(std::string name, std::string help, std::optional<T> Settings::*field) {
  Key k{name, help, {}, {}};
  k.add = [name, help, field](CLI::App& app, Settings& s) { app.add_option(flag_of(name), s.*field, help); };
  k.load = [name, field](const json& j, Settings& s) {
    if (s.*field) return;
    try {
      s.*field = j.get<T>();
    } catch (const json::exception&) {
      throw UsageError("config key '" + name + "' has the wrong type");
    }
  };
  return k;
}

Key switch_key(std::string name, std::string help, std::optional<bool> Settings::*field) {
  Key k{name, help, {}, {}};
  k.add = [name, help, field](CLI::App& app, Settings& s) {
    app.add_flag_callback(flag_of(name), [&s, field] { s.*field = true; }, help);
  };
  k.load = [name, field](const json& j, Settings& s) {
    if (s.*field) return;
    if (!j.is_boolean()) throw UsageError("config key '" + name + "' must be true or false");
    s.*field = j.get<bool>();
  };
  return k;
}

// JSON-valued keys; on the command line they take a JSON string.
Key json_key(std::string name, std::string help, std::optional<json> Settings::*field) {
  Key k{name, help, {}, {}};
  k.add = [name, help, field](CLI::App& app, Settings& s) {
    app.add_option_function<std::string>(
        flag_of(name),
        [&s, field, name](const std::string& text) {
          try {
            s.*field = json::parse(text);
          } catch (const json::exception&) {
            throw CLI::ValidationError(flag_of(name), "not valid JSON");
          }
        },
        help);
  };
  k.load = [field](const json& j, Settings& s) {
    if (!(s.*field)) s.*field = j;
  };
  return k;
}

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = {
      typed("n", "maximum (or fixed) number of nodes", &Settings::n),
      typed("min_n", "minimum number of nodes; defaults to n", &Settings::min_n),
      switch_key("directed", "directed graphs", &Settings::directed),
      typed("labels", "number of node labels L", &Settings::labels),
      typed("features", "number of feature columns M (first L are labels); defaults to L", &Settings::features),
      json_key("degree_caps", "per-label degree caps, e.g. [4, null]", &Settings::degree_caps),
      json_key("label_counts", "per-label [min, max] node counts", &Settings::label_counts),
      json_key("rows", "extra linear rows over structural variables", &Settings::rows),
      typed("variant", "kernel: ssp, sp, essp, esp", &Settings::variant),
      typed("alpha", "graph-kernel weight", &Settings::alpha),
      typed("beta", "feature-kernel weight", &Settings::beta),
      typed("sigma_k_sq", "variance of the exponential kernels", &Settings::sigma_k_sq),
      switch_key("combined", "print alpha*k_G + beta*k_F instead of k_G", &Settings::combined),
      typed("seed", "source of all randomness", &Settings::seed),
      typed("restarts", "hyperparameter fit restarts", &Settings::restarts),
      typed("beta_sqrt", "exploration weight of the LCB", &Settings::beta_sqrt),
      typed("strategy", "solver: bnp or enumerate", &Settings::strategy),
      typed("budget", "solver time budget in seconds", &Settings::budget),
      typed("gap", "absolute optimality gap", &Settings::gap),
      typed("workers", "solver worker threads", &Settings::workers),
      typed("node_limit", "solver node limit", &Settings::node_limit),
      typed("log_interval", "solver log line every k nodes (0: off)", &Settings::log_interval),
      typed("cap", "search-node cap for verify-bijection", &Settings::cap),
      typed("max_bits", "enumeration guard in bits of raw search space", &Settings::max_bits),
      typed("format", "export format: mps or lp", &Settings::format),
      typed("breakpoints", "piecewise segments for exp terms", &Settings::breakpoints),
      typed("oracle", "path_profile, feature_count or kernel_distance", &Settings::oracle),
      json_key("oracle_params", "oracle parameters as JSON", &Settings::oracle_params),
      typed("initial", "initial random samples", &Settings::initial),
      typed("iterations", "BO iterations", &Settings::iterations),
      typed("warm_start", "warm-start samples per iteration", &Settings::warm_start),
      typed("a", "first graph file", &Settings::a),
      typed("b", "second graph file", &Settings::b),
      typed("graphs", "graph file", &Settings::graphs),
      typed("dataset", "dataset file of {graph, y} records", &Settings::dataset),
      typed("model", "GP model file", &Settings::model),
      typed("out", "output file", &Settings::out),
      typed("history", "history CSV output", &Settings::history),
      typed("graph_file", "append proposed graphs here", &Settings::graph_file),
      typed("count", "number of samples", &Settings::count),
  };
  return keys;
}

const Key& key(const std::string& name) {
  for (const auto& k : registry())
    if (k.name == name) return k;
  throw std::logic_error("unregistered key " + name);
}

void load_config(const std::string& path, Settings& s) {
  json j;
  try {
    j = read_json_file(path);
  } catch (const Error& e) {
    throw UsageError(std::string("cannot read config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& keys = registry();
    const auto k = std::find_if(keys.begin(), keys.end(), [&](const Key& x) { return x.name == it.key(); });
    if (k == keys.end()) throw UsageError("unknown config key '" + it.key() + "'");
    k->load(it.value(), s);
  }
}

template <class T>
T need(const std::optional<T>& v, const char* name) {
  if (!v) throw UsageError(std::string("missing required option ") + flag_of(name));
  return *v;
}

int positive(int v, const char* name) {
  if (v < 1) throw UsageError(flag_of(name) + " must be positive");
  return v;
}

// ---------------------------------------------------------------- domain

Sense parse_sense(const std::string& s) {
  if (s == "<=" || s == "le") return Sense::LessEqual;
  if (s == ">=" || s == "ge") return Sense::GreaterEqual;
  if (s == "=" || s == "==" || s == "eq") return Sense::Equal;
  throw UsageError("row sense must be <=, >= or =, got '" + s + "'");
}

DomainSpec make_domain(const Settings& s) {
  DomainSpec d;
  const int n = need(s.n, "n");
  d.size = {s.min_n.value_or(n), n};
  d.directed = s.directed.value_or(false);
  d.num_labels = s.labels.value_or(1);
  d.num_features = s.features.value_or(d.num_labels);
  try {
    if (s.degree_caps) {
      for (const auto& c : *s.degree_caps) d.degree_caps.push_back(c.is_null() ? std::nullopt : std::optional<int>(c.get<int>()));
    }
    if (s.label_counts) {
      for (const auto& c : *s.label_counts) {
        LabelCountBound b;
        const json lo = c.is_array() ? c.at(0) : c.value("min", json(0));
        const json hi = c.is_array() ? c.at(1) : c.value("max", json(nullptr));
        b.min = lo.is_null() ? 0 : lo.get<int>();
        b.max = hi.is_null() ? INT_MAX : hi.get<int>();
        d.label_counts.push_back(b);
      }
    }
    if (s.rows) {
      for (const auto& r : *s.rows) {
        DomainRow row;
        row.name = r.value("name", std::string());
        row.sense = parse_sense(r.value("sense", std::string("<=")));
        row.rhs = r.value("rhs", 0.0);
        for (const auto& t : r.at("terms")) {
          DomainTerm term;
          const std::string kind = t.at("kind").get<std::string>();
          term.kind = kind == "edge"      ? StructuralVar::Edge
                      : kind == "feature" ? StructuralVar::Feature
                      : kind == "node"    ? StructuralVar::NodeExists
                                          : throw UsageError("term kind must be edge, feature or node");
          term.i = t.at("i").get<int>();
          term.j = t.value("j", 0);
          term.coef = t.value("coef", 1.0);
          row.terms.push_back(term);
        }
        d.rows.push_back(std::move(row));
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed domain option: ") + e.what());
  }
  d.validate();
  return d;
}

KernelHyperparams make_hyper(const Settings& s, KernelVariant v) {
  KernelHyperparams h{s.alpha.value_or(1.0), s.beta.value_or(1.0), std::nullopt};
  if (is_exponential(v)) h.sigma_k_sq = s.sigma_k_sq.value_or(1.0);
  return h;
}

GpModel load_model(const Settings& s) { return model_from_json(read_json_file(need(s.model, "model"))); }

void write_or_print(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_text_file(*path, text);
  } else {
    out << text;
  }
}

std::string graphs_as_lines(const std::vector<AttributedGraph>& gs) {
  std::string text;
  for (const auto& g : gs) text += graph_to_json(g).dump() + "\n";
  return text;
}

SolveOptions make_solve_options(const Settings& s) {
  SolveOptions o;
  o.strategy = parse_strategy(s.strategy.value_or("bnp"));
  o.budget_seconds = s.budget.value_or(600.0);
  o.gap = s.gap.value_or(1e-6);
  o.workers = positive(s.workers.value_or(1), "workers");
  o.node_limit = s.node_limit;
  if (s.max_bits) o.enumeration_bits = *s.max_bits;
  return o;
}

// ---------------------------------------------------------------- commands

int cmd_enumerate(const Settings& s, std::ostream& out) {
  const DomainSpec d = make_domain(s);
  const double bits = s.max_bits.value_or(kDefaultEnumerationBits);
  if (s.out) {
    const auto gs = enumerate_domain(d, bits);
    write_graph_file(*s.out, gs);
    out << gs.size() << "\n";
  } else {
    out << count_domain(d, bits) << "\n";
  }
  return 0;
}

int cmd_sample(const Settings& s, std::ostream& out) {
  const DomainSpec d = make_domain(s);
  const int count = positive(s.count.value_or(1), "count");
  const std::uint64_t seed = s.seed.value_or(0);
  std::vector<AttributedGraph> gs;
  for (int j = 0; j < count; ++j) gs.push_back(sample_feasible(d, derive_seed(seed, 0, static_cast<std::uint64_t>(j))));
  write_or_print(s.out, graphs_as_lines(gs), out);
  return 0;
}

int cmd_kernel(const Settings& s, std::ostream& out) {
  const auto as = read_graph_file(need(s.a, "a"));
  const auto bs = read_graph_file(need(s.b, "b"));
  const KernelVariant v = parse_variant(s.variant.value_or("ssp"));
  const KernelHyperparams h = make_hyper(s, v);
  const bool combined = s.combined.value_or(false);
  out << std::setprecision(17);
  for (const auto& ga : as) {
    const auto sa = summarize(ga);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const auto sb = summarize(bs[j]);
      out << (j ? " " : "") << (combined ? k_combined(sa, sb, v, h) : k_graph(sa, sb, v, h));
    }
    out << "\n";
  }
  return 0;
}

int cmd_fit(const Settings& s, std::ostream& out) {
  const auto data = read_dataset(need(s.dataset, "dataset"));
  std::vector<AttributedGraph> xs;
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    xs.push_back(data[i].graph);
    y[static_cast<Eigen::Index>(i)] = data[i].y;
  }
  FitOptions o;
  o.restarts = positive(s.restarts.value_or(8), "restarts");
  o.seed = s.seed.value_or(0);
  const GpModel m = fit(make_points(xs), y, parse_variant(s.variant.value_or("ssp")), o);
  write_or_print(s.out, model_to_json(m).dump(2) + "\n", out);
  if (s.out) {
    out << "alpha=" << m.hyper().alpha << " beta=" << m.hyper().beta;
    if (m.hyper().sigma_k_sq) out << " sigma_k_sq=" << *m.hyper().sigma_k_sq;
    out << " lml=" << m.log_marginal_likelihood() << "\n";
  }
  return 0;
}

int cmd_predict(const Settings& s, std::ostream& out) {
  const GpModel m = load_model(s);
  const double beta_sqrt = s.beta_sqrt.value_or(1.0);
  out << "index mu sigma lcb\n" << std::setprecision(17);
  int i = 0;
  for (const auto& g : read_graph_file(need(s.graphs, "graphs"))) {
    const Posterior p = posterior(m, g);
    out << i++ << " " << p.mean << " " << std::sqrt(p.var) << " " << lcb(p, beta_sqrt) << "\n";
  }
  return 0;
}

int cmd_encode(const Settings& s, std::ostream& out) {
  const GpModel m = load_model(s);
  const DomainSpec d = make_domain(s);
  const auto model = mip::encode_acquisition(m, d, s.beta_sqrt.value_or(1.0));
  const std::string path = need(s.out, "out");
  const int breakpoints = positive(s.breakpoints.value_or(mip::kDefaultBreakpoints), "breakpoints");
  mip::export_model(model, path, mip::parse_format(s.format.value_or("mps")), breakpoints);
  const auto flat = mip::flatten(model, breakpoints);
  out << "columns=" << flat.columns.size() << " rows=" << flat.num_rows() << "\n";
  return 0;
}

int cmd_solve(const Settings& s, std::ostream& out, std::ostream& err) {
  const GpModel m = load_model(s);
  const DomainSpec d = make_domain(s);
  SolveOptions o = make_solve_options(s);
  o.log = &err;
  o.log_interval = s.log_interval.value_or(10000);
  const SolveResult r = solve(m, d, s.beta_sqrt.value_or(1.0), o);
  out << std::setprecision(17) << "status=" << to_string(r.status) << " objective=" << r.objective
      << " bound=" << r.bound << " nodes=" << r.nodes_explored << "\n";
  if (r.incumbent) {
    if (s.out) {
      write_graph_file(*s.out, {*r.incumbent});
    } else {
      out << graph_to_json(*r.incumbent).dump() << "\n";
    }
  }
  return r.incumbent || r.status == SolveStatus::Infeasible ? 0 : 2;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  const int n = positive(need(s.n, "n"), "n");
  const SizeSpec size{s.min_n.value_or(n), n};
  size.validate();
  const bool directed = s.directed.value_or(false);
  const auto model = mip::shortest_path_model(size, directed);
  const std::uint64_t feasible = mip::count_feasible(model, s.cap.value_or(mip::kDefaultCountCap));
  DomainSpec d;
  d.size = size;
  d.directed = directed;
  const std::size_t connected = count_domain(d, s.max_bits.value_or(kDefaultEnumerationBits));
  out << "feasible=" << feasible << " connected=" << connected << "\n";
  if (feasible != connected) {
    out << "MISMATCH\n";
    return 2;
  }
  return 0;
}

BoConfig make_bo_config(const Settings& s) {
  BoConfig c;
  c.variant = parse_variant(s.variant.value_or("ssp"));
  c.beta_sqrt = s.beta_sqrt.value_or(1.0);
  c.initial_samples = s.initial.value_or(10);
  c.iterations = s.iterations.value_or(50);
  c.budget_seconds = s.budget.value_or(600.0);
  c.warm_start = s.warm_start.value_or(20);
  c.seed = s.seed.value_or(0);
  c.strategy = parse_strategy(s.strategy.value_or("bnp"));
  c.workers = s.workers.value_or(1);
  c.fit_restarts = s.restarts.value_or(8);
  if (s.graph_file) c.graph_file = *s.graph_file;
  try {
    c.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return c;
}

int cmd_bo(const Settings& s, std::ostream& out, std::ostream& err, bool baseline) {
  const DomainSpec d = make_domain(s);
  BoConfig c = make_bo_config(s);
  const ObjectiveOracle oracle = synthetic_oracle(need(s.oracle, "oracle"), s.oracle_params.value_or(json::object()));
  if (!baseline) c.log = &err;
  const BoHistory h = baseline ? random_baseline(oracle, d, c) : run(oracle, d, c);
  write_or_print(s.history, h.to_csv(), out);
  if (s.history) out << "best_y=" << std::setprecision(17) << h.best_y() << "\n";
  if (h.error) {
    err << "error: " << *h.error << "\n";
    return 2;
  }
  return 0;
}

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<Command>& commands() {
  static const std::vector<std::string> domain = {"n", "min_n", "directed", "labels", "features",
                                                  "degree_caps", "label_counts", "rows"};
  auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  static const std::vector<std::string> solver = {"strategy", "budget", "gap", "workers", "node_limit", "max_bits"};
  static const std::vector<Command> cmds = {
      {"enumerate", "count (and optionally write) every graph of a domain", with(domain, {"max_bits", "out"})},
      {"sample", "draw feasible graphs", with(domain, {"count", "seed", "out"})},
      {"kernel", "kernel values between the graphs of two files",
       {"a", "b", "variant", "alpha", "beta", "sigma_k_sq", "combined"}},
      {"fit", "fit GP hyperparameters to a dataset", {"dataset", "variant", "restarts", "seed", "out"}},
      {"predict", "posterior mean, deviation and LCB", {"model", "graphs", "beta_sqrt"}},
      {"encode", "write the acquisition problem as MPS or LP",
       with(domain, {"model", "beta_sqrt", "format", "breakpoints", "out"})},
      {"solve", "minimize the LCB over a domain",
       with(with(domain, solver), {"model", "beta_sqrt", "log_interval", "out"})},
      {"verify-bijection", "compare feasible encodings with connected graphs",
       {"n", "min_n", "directed", "cap", "max_bits"}},
      {"bo", "run Bayesian optimization on a synthetic oracle",
       with(with(domain, solver), {"oracle", "oracle_params", "variant", "beta_sqrt", "initial", "iterations",
                                   "warm_start", "restarts", "seed", "history", "graph_file"})},
      {"baseline", "random feasible sampling on a synthetic oracle",
       with(domain, {"oracle", "oracle_params", "initial", "iterations", "seed", "history", "graph_file"})},
  };
  return cmds;
}

int run_command(const std::string& name, const Settings& s, std::ostream& out, std::ostream& err) {
  if (name == "enumerate") return cmd_enumerate(s, out);
  if (name == "sample") return cmd_sample(s, out);
  if (name == "kernel") return cmd_kernel(s, out);
  if (name == "fit") return cmd_fit(s, out);
  if (name == "predict") return cmd_predict(s, out);
  if (name == "encode") return cmd_encode(s, out);
  if (name == "solve") return cmd_solve(s, out, err);
  if (name == "verify-bijection") return cmd_verify(s, out);
  if (name == "bo") return cmd_bo(s, out, err, false);
  if (name == "baseline") return cmd_bo(s, out, err, true);
  throw std::logic_error("unhandled command " + name);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian optimization over graphs with an exact acquisition solver", "bogrape"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  std::string config;
  app.add_option("--config", config, "JSON config with keys named like the flags (min_n for --min-n)");

  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    for (const auto& k : c.keys) key(k).add(*sub, s);
    subs[c.name] = sub;
  }

  std::vector<const char*> argv{"bogrape"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    if (!config.empty()) load_config(config, s);
    return run_command(chosen->get_name(), s, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << chosen->help();
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace bogrape::cli
