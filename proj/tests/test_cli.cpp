#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bogrape/bo/bo.hpp"
#include "bogrape/graph_io.hpp"
#include "bogrape/mip/export.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace bogrape;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  const char* base = std::getenv("BOGRAPE_TEST_TMP");
  const fs::path dir = fs::path(base ? base : fs::temp_directory_path().string()) / "cli_files";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("kernel on K2, K2 prints 0.5") {
  write_graph_file(tmp("k2.json"), {support::k2()});
  const auto r = invoke({"kernel", "--variant", "ssp", "--a", tmp("k2.json").string(), "--b", tmp("k2.json").string()});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == 0.5);

  const auto c = invoke({"kernel", "--a", tmp("k2.json").string(), "--b", tmp("k2.json").string(), "--combined",
                      "--alpha", "2", "--beta", "3"});
  CHECK(c.code == 0);
  CHECK(std::stod(c.out) == doctest::Approx(2 * 0.5 + 3 * 1.0));
}

TEST_CASE("verify-bijection") {
  auto r = invoke({"verify-bijection", "--n", "3", "--directed"});
  CHECK(r.code == 0);
  CHECK(r.out.find("feasible=18 connected=18") != std::string::npos);
  r = invoke({"verify-bijection", "--n", "3", "--min-n", "1", "--directed"});
  CHECK(r.code == 0);
  CHECK(r.out.find("feasible=20 connected=20") != std::string::npos);
  r = invoke({"verify-bijection", "--n", "4", "--cap", "10"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors exit 1") {
  auto r = invoke({"kernel", "--a", tmp("k2.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("--b") != std::string::npos);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"enumerate", "--n", "notanumber"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("runtime errors exit 2") {
  CHECK(invoke({"kernel", "--a", tmp("missing.json").string(), "--b", tmp("missing.json").string()}).code == 2);
  CHECK(invoke({"enumerate", "--n", "9"}).code == 2);
}

TEST_CASE("config files") {
  write(tmp("cfg.json"), R"({"n": 4, "labels": 1})");
  auto r = invoke({"--config", tmp("cfg.json").string(), "enumerate"});
  CHECK(r.code == 0);
  CHECK(r.out == "38\n");
  // command line wins over the config
  r = invoke({"enumerate", "--config", tmp("cfg.json").string(), "--n", "3"});
  CHECK(r.out == "4\n");

  write(tmp("bad.json"), R"({"n": 4, "colour": "red"})");
  r = invoke({"enumerate", "--config", tmp("bad.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("colour") != std::string::npos);

  write(tmp("caps.json"), R"({"n": 3, "degree_caps": [1]})");
  CHECK(invoke({"enumerate", "--config", tmp("caps.json").string()}).out == "0\n");

  write(tmp("counts.json"), R"({"n": 2, "labels": 2, "label_counts": [[0, null], [1, 1]]})");
  CHECK(invoke({"enumerate", "--config", tmp("counts.json").string()}).out == "2\n");
}

TEST_CASE("sample, fit, predict, encode, solve") {
  auto r = invoke({"sample", "--n", "4", "--labels", "2", "--count", "6", "--seed", "3", "--out", tmp("s.jsonl").string()});
  REQUIRE(r.code == 0);
  const auto gs = read_graph_file(tmp("s.jsonl"));
  REQUIRE(gs.size() == 6);
  CHECK(invoke({"sample", "--n", "4", "--labels", "2", "--count", "6", "--seed", "3"}).out ==
        [&] {
          std::string t;
          for (const auto& g : gs) t += graph_to_json(g).dump() + "\n";
          return t;
        }());

  std::vector<LabeledGraph> data;
  for (std::size_t i = 0; i < gs.size(); ++i) data.push_back({gs[i], std::cos(double(i))});
  write_dataset(tmp("d.json"), data);
  r = invoke({"fit", "--dataset", tmp("d.json").string(), "--restarts", "2", "--out", tmp("m.json").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("alpha=") != std::string::npos);

  r = invoke({"predict", "--model", tmp("m.json").string(), "--graphs", tmp("s.jsonl").string()});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "index mu sigma lcb");
  int idx;
  double mu, sigma, l;
  lines >> idx >> mu >> sigma >> l;
  CHECK(std::abs(mu - std::cos(0.0)) <= 1e-3);

  r = invoke({"encode", "--model", tmp("m.json").string(), "--n", "4", "--labels", "2", "--format", "lp", "--out",
           tmp("m.lp").string()});
  REQUIRE(r.code == 0);
  const auto flat = mip::read_model_file(tmp("m.lp").string(), mip::ExportFormat::Lp);
  CHECK(r.out == "columns=" + std::to_string(flat.columns.size()) + " rows=" + std::to_string(flat.num_rows()) + "\n");

  r = invoke({"encode", "--model", tmp("m.json").string(), "--n", "4", "--min-n", "2", "--labels", "2", "--out",
           tmp("m.mps").string()});
  CHECK(r.code == 2);

  r = invoke({"solve", "--model", tmp("m.json").string(), "--n", "4", "--labels", "2", "--log-interval", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("status=Optimal", 0) == 0);
  auto e = invoke({"solve", "--model", tmp("m.json").string(), "--n", "4", "--labels", "2", "--strategy", "enumerate",
                "--workers", "2"});
  REQUIRE(e.code == 0);
  CHECK(r.out.substr(r.out.find("objective="), 40) == e.out.substr(e.out.find("objective="), 40));
}

TEST_CASE("bo and baseline write monotone histories") {
  write(tmp("bo.json"), R"({"n": 4, "oracle": "path_profile", "oracle_params": {"target": [4, 6, 4, 2]},
                            "initial": 3, "iterations": 2, "warm_start": 4, "restarts": 2, "seed": 7})");
  for (std::string cmd : {"bo", "baseline"}) {
    const auto path = tmp(cmd + ".csv");
    const auto r = invoke({cmd, "--config", tmp("bo.json").string(), "--history", path.string()});
    REQUIRE(r.code == 0);
    const auto h = BoHistory::read_csv(path);
    CHECK(h.records.size() == 5);
    for (std::size_t i = 1; i < h.records.size(); ++i) CHECK(h.records[i].best_y <= h.records[i - 1].best_y);
    // same seed, same output
    const auto again = invoke({cmd, "--config", tmp("bo.json").string()});
    CHECK(support::drop_csv_column(again.out, 8) == support::drop_csv_column(h.to_csv(), 8));
  }
  CHECK(invoke({"bo", "--n", "4", "--oracle", "qed"}).code == 2);
  CHECK(invoke({"bo", "--n", "4", "--oracle", "path_profile", "--initial", "1"}).code == 1);
}
