#include "bogrape/solve/feasibility.hpp"

#include <cmath>

#include "bogrape/error.hpp"

namespace bogrape::mip {

namespace {

bool integral(double x) { return std::isfinite(x) && x == std::nearbyint(x) && std::abs(x) < 1e15; }

bool row_ok(const LinearRow& row, const Assignment& x) {
  bool exact = integral(row.rhs);
  for (const auto& t : row.terms) exact = exact && integral(t.coef) && integral(x[t.var]);
  if (exact) {
    long long lhs = 0;
    for (const auto& t : row.terms) lhs += static_cast<long long>(t.coef) * static_cast<long long>(x[t.var]);
    const auto rhs = static_cast<long long>(row.rhs);
    switch (row.sense) {
      case Sense::LessEqual: return lhs <= rhs;
      case Sense::GreaterEqual: return lhs >= rhs;
      case Sense::Equal: return lhs == rhs;
    }
  }
  double lhs = 0.0, scale = std::abs(row.rhs);
  for (const auto& t : row.terms) {
    lhs += t.coef * x[t.var];
    scale = std::max(scale, std::abs(t.coef * x[t.var]));
  }
  return row_holds(row.sense, lhs, row.rhs, 1e-9 * std::max(1.0, scale));
}

}  // namespace

std::string first_violation(const MipModel& model, const Assignment& x) {
  if (x.size() != model.num_variables()) throw Error(ErrorCode::MissingVariable, "assignment size mismatch");
  const auto& vars = model.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const Variable& v = vars[i];
    if (std::isnan(x[i])) throw Error(ErrorCode::MissingVariable, "variable " + v.name + " is unassigned");
    if (x[i] < v.lb || x[i] > v.ub) return "bound:" + v.name;
    if (v.kind != VarKind::Continuous && !integral(x[i])) return "integrality:" + v.name;
  }
  for (const auto& row : model.rows())
    if (!row_ok(row, x)) return "row:" + row.name;

  for (const auto& link : model.links()) {
    double expected = 0.0;
    if (link.kind == LinkKind::Exp) {
      expected = std::exp(x[link.input]);
    } else {
      double size = 0.0;
      for (int v : model.node_exists_vars) size += x[v];
      expected = x[link.input] / (link.constant * std::pow(size, link.power));
    }
    if (std::abs(x[link.output] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      return "link:" + vars[link.output].name;
  }

  if (const auto& q = model.variance_row()) {
    Eigen::VectorXd k(static_cast<Eigen::Index>(q->kernel_vars.size()));
    for (std::size_t j = 0; j < q->kernel_vars.size(); ++j) k[static_cast<Eigen::Index>(j)] = x[q->kernel_vars[j]];
    const double explained = k.size() > 0 ? q->chol.triangularView<Eigen::Lower>().solve(k).squaredNorm() : 0.0;
    const double s = x[q->sigma];
    const double kxx = x[q->kxx];
    if (s * s + explained - kxx > 1e-9 * std::max(1.0, std::abs(kxx))) return "row:" + q->name;
  }
  return {};
}

bool check_feasible(const MipModel& model, const Assignment& values) { return first_violation(model, values).empty(); }

std::uint64_t count_feasible(const MipModel& model, std::uint64_t cap) {
  const auto& vars = model.variables();
  const int nv = static_cast<int>(vars.size());
  for (const auto& v : vars) {
    if (v.kind == VarKind::Continuous)
      throw Error(ErrorCode::InvalidArgument, "count_feasible needs a purely discrete model (" + v.name + ")");
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub))
      throw Error(ErrorCode::InvalidArgument, "unbounded integer variable " + v.name);
  }

  // rows keyed by the position of their last variable
  std::vector<std::vector<int>> closes(nv);
  std::uint64_t always_false = 0;
  for (std::size_t r = 0; r < model.rows().size(); ++r) {
    const auto& row = model.rows()[r];
    if (row.terms.empty()) {
      const bool ok = row_holds(row.sense, 0.0, row.rhs, 0.0);
      always_false += ok ? 0 : 1;
      continue;
    }
    closes[row.terms.back().var].push_back(static_cast<int>(r));  // terms are sorted by id
  }
  if (always_false > 0) return 0;
  if (nv == 0) return 1;

  Assignment x(nv, 0.0);
  std::vector<long> value(nv, 0);
  std::uint64_t count = 0, visited = 0;
  int depth = 0;
  value[0] = static_cast<long>(vars[0].lb) - 1;
  while (depth >= 0) {
    const Variable& v = vars[depth];
    if (++value[depth] > static_cast<long>(v.ub)) {
      --depth;
      continue;
    }
    if (++visited > cap)
      throw Error(ErrorCode::SpaceTooLarge, "search exceeded " + std::to_string(cap) + " nodes");
    x[depth] = static_cast<double>(value[depth]);
    bool ok = true;
    for (int r : closes[depth])
      if (!row_ok(model.rows()[r], x)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (depth == nv - 1) {
      ++count;
      continue;
    }
    ++depth;
    value[depth] = static_cast<long>(vars[depth].lb) - 1;
  }
  return count;
}

}  // namespace bogrape::mip
