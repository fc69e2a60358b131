#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "bogrape/enumerate.hpp"
#include "bogrape/error.hpp"
#include "bogrape/mip/encode.hpp"
#include "bogrape/mip/export.hpp"
#include "bogrape/solve/feasibility.hpp"
#include "support.hpp"

using namespace bogrape;
using namespace bogrape::mip;

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

DomainSpec domain(SizeSpec size, bool directed, int L = 1, int M = 1) {
  DomainSpec d;
  d.size = size;
  d.directed = directed;
  d.num_labels = L;
  d.num_features = M;
  return d;
}

MipModel acquisition(KernelVariant v, SizeSpec size = SizeSpec::fixed(3)) {
  const auto d = domain(size, false, 2, 3);
  std::vector<AttributedGraph> train;
  for (std::uint64_t s = 0; s < 4; ++s) train.push_back(sample_feasible(d, 100 + s));
  Eigen::VectorXd y(4);
  y << 0.3, -0.2, 1.1, 0.5;
  const KernelHyperparams h{1.1, 0.9, is_exponential(v) ? std::optional<double>(1.5) : std::nullopt};
  return encode_acquisition(GpModel::condition(make_points(train), y, v, h), d, 1.0);
}

double activity(const std::vector<Term>& terms, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * x[t.var];
  return s;
}

bool holds(const LinearRow& r, const std::vector<double>& x, double tol) {
  const double a = activity(r.terms, x);
  switch (r.sense) {
    case Sense::LessEqual: return a <= r.rhs + tol;
    case Sense::GreaterEqual: return a >= r.rhs - tol;
    case Sense::Equal: return std::abs(a - r.rhs) <= tol;
  }
  return false;
}

}  // namespace

TEST_CASE("piecewise exponential") {
  const PiecewiseExp pw{64, 0.0, 1.0};
  CHECK(pw.max_error(100000) <= 1e-3);
  CHECK(pw(0.0) == doctest::Approx(1.0));
  CHECK(pw(1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(pw.segment_of(0.0) == 0);
  CHECK(pw.segment_of(1.0) == 63);
  for (int j = 0; j <= 64; ++j) CHECK(std::abs(pw(pw.knot(j)) - std::exp(pw.knot(j))) <= 1e-14);
  // interpolation of a convex function lies above it
  for (double x = 0.0; x <= 1.0; x += 0.001) CHECK(pw(x) >= std::exp(x) - 1e-15);
  const PiecewiseExp coarse{4, 0.0, 1.0};
  CHECK(coarse.max_error(10000) > 1e-3);
}

TEST_CASE("flatten keeps linear models intact") {
  const auto m = acquisition(KernelVariant::SSP);
  const auto flat = flatten(m);
  CHECK(flat.columns.size() == m.num_variables());
  CHECK(flat.num_rows() == m.num_constraints());
  REQUIRE(flat.quadratic.has_value());
  CHECK(flat.objective.size() == 2);
}

TEST_CASE("flatten expands exponential links") {
  const auto m = acquisition(KernelVariant::ESSP);
  const int links = static_cast<int>(m.links().size());
  CHECK(links == 4 + 1);
  const auto flat = flatten(m, 16);
  CHECK(flat.columns.size() == m.num_variables() + static_cast<std::size_t>(links) * 16);
  CHECK(flat.rows.size() == m.rows().size() + static_cast<std::size_t>(links) * (4 * 16 + 1));

  // at a canonical point, y = interpolated exp with the matching selector satisfies every piecewise row
  const auto g = support::path_graph(3, 2, 3, {0, 1, 0});
  auto x = canonical_assignment(m, g);
  const PiecewiseExp pw{16, 0.0, 1.0};
  std::vector<double> v(x.begin(), x.end());
  v.resize(flat.columns.size(), 0.0);
  for (int i = 0; i < links; ++i) {
    const auto& link = m.links()[i];
    v[link.output] = pw(v[link.input]);
    v[*flat.column("z_" + std::to_string(i) + "_" + std::to_string(pw.segment_of(v[link.input])))] = 1.0;
  }
  for (const auto& r : flat.rows)
    if (r.family.rfind("exp.", 0) == 0) CHECK_MESSAGE(holds(r, v, 1e-9), r.name);

  // a wrong y is cut off by the active segment
  auto bad = v;
  bad[m.links()[0].output] += 0.01;
  bool violated = false;
  for (const auto& r : flat.rows)
    if (r.family == "exp.piecewise") violated = violated || !holds(r, bad, 1e-9);
  CHECK(violated);
}

TEST_CASE("quadratic row matches the variance") {
  const auto m = acquisition(KernelVariant::SP);
  const auto flat = flatten(m);
  const auto x = canonical_assignment(m, support::complete_graph(3, 2, 3, {1, 1, 0}));
  double lhs = activity(flat.quadratic->linear, x);
  for (const auto& [i, j, c] : flat.quadratic->entries) lhs += c * x[i] * x[j];
  CHECK(std::abs(lhs - flat.quadratic->rhs) <= 1e-8);
}

TEST_CASE("bounded models cannot be exported") {
  const auto m = acquisition(KernelVariant::SSP, SizeSpec::range(2, 3));
  CHECK(code_of([&] { flatten(m); }) == ErrorCode::UnsupportedBoundedSizeExport);
  CHECK(code_of([&] { export_model(m, "/tmp/never.mps", ExportFormat::Mps); }) ==
        ErrorCode::UnsupportedBoundedSizeExport);
}

TEST_CASE("round trips preserve structure") {
  for (auto v : {KernelVariant::SSP, KernelVariant::ESP}) {
    const auto flat = flatten(acquisition(v), 8);
    for (auto fmt : {ExportFormat::Mps, ExportFormat::Lp}) {
      std::stringstream ss;
      if (fmt == ExportFormat::Mps) {
        write_mps(flat, ss);
      } else {
        write_lp(flat, ss);
      }
      const auto back = fmt == ExportFormat::Mps ? read_mps(ss) : read_lp(ss);
      std::string why;
      CHECK_MESSAGE(same_structure(flat, back, &why), why);
      CHECK(back.columns.size() == flat.columns.size());
      CHECK(back.num_rows() == flat.num_rows());
    }
  }
}

TEST_CASE("small model counts survive export") {
  MipModel m;
  m.meta.size = SizeSpec::fixed(2);
  std::vector<int> ids;
  for (int i = 0; i < 10; ++i)
    ids.push_back(m.add_variable("x" + std::to_string(i), i < 4 ? VarKind::Binary : i < 7 ? VarKind::Integer : VarKind::Continuous,
                                 i < 4 ? 0 : -3, i < 4 ? 1 : i == 9 ? kInf : 7.5, VarTag::A, {i}));
  for (int r = 0; r < 12; ++r)
    m.add_row("r" + std::to_string(r), "test", {{ids[r % 10], 1.0 + r}, {ids[(r + 3) % 10], -0.125}},
              r % 3 == 0 ? Sense::LessEqual : r % 3 == 1 ? Sense::GreaterEqual : Sense::Equal, 0.1 * r);
  m.set_objective({{ids[0], 1.0}, {ids[9], -2.5}});

  const auto dir = std::filesystem::temp_directory_path() / "bogrape_export";
  std::filesystem::create_directories(dir);
  for (auto fmt : {ExportFormat::Mps, ExportFormat::Lp}) {
    const auto path = (dir / (fmt == ExportFormat::Mps ? "m.mps" : "m.lp")).string();
    export_model(m, path, fmt);
    const auto back = read_model_file(path, fmt);
    CHECK(back.columns.size() == 10);
    CHECK(back.num_rows() == 12);
    REQUIRE(back.objective.size() == 2);
    CHECK(back.objective[1].coef == -2.5);
    CHECK(same_structure(flatten(m), back));
  }
  CHECK(code_of([&] { export_model(m, "/nonexistent/dir/m.mps", ExportFormat::Mps); }) == ErrorCode::IoError);
  CHECK(parse_format("lp") == ExportFormat::Lp);
  CHECK(code_of([] { parse_format("xml"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("malformed files are rejected") {
  std::istringstream bad("NAME x\nROWS\n N OBJ\n L r0\nCOLUMNS\n    x r0 abc\nENDATA\n");
  CHECK(code_of([&] { read_mps(bad); }) == ErrorCode::ParseError);
}
