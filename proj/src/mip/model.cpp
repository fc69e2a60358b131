#include "bogrape/mip/model.hpp"

#include <algorithm>
#include <cmath>

#include "bogrape/error.hpp"

namespace bogrape::mip {

std::string_view to_string(VarTag tag) {
  switch (tag) {
    case VarTag::A: return "A";
    case VarTag::d: return "d";
    case VarTag::delta: return "delta";
    case VarTag::ds: return "ds";
    case VarTag::D: return "D";
    case VarTag::Dc: return "Dc";
    case VarTag::p: return "p";
    case VarTag::P: return "P";
    case VarTag::Pc: return "Pc";
    case VarTag::F: return "F";
    case VarTag::N: return "N";
    case VarTag::Nc: return "Nc";
    case VarTag::RawGraph: return "rawG";
    case VarTag::GraphKernel: return "kG";
    case VarTag::ExpGraph: return "expG";
    case VarTag::RawFeature: return "rawF";
    case VarTag::FeatureKernel: return "kF";
    case VarTag::Kernel: return "k";
    case VarTag::RawGraphSelf: return "rawGxx";
    case VarTag::GraphSelf: return "kGxx";
    case VarTag::ExpGraphSelf: return "expGxx";
    case VarTag::RawFeatureSelf: return "rawFxx";
    case VarTag::FeatureSelf: return "kFxx";
    case VarTag::KernelSelf: return "kxx";
    case VarTag::Mu: return "mu";
    case VarTag::Sigma: return "sigma";
    case VarTag::PiecewiseSelect: return "z";
  }
  return "?";
}

int MipModel::add_variable(std::string name, VarKind kind, double lb, double ub, VarTag tag, VarIndex index,
                           Definition def) {
  const int id = static_cast<int>(vars_.size());
  vars_.push_back({std::move(name), kind, lb, ub, tag, index, std::move(def)});
  lookup_.emplace(std::make_pair(tag, index), id);
  return id;
}

int MipModel::add_row(std::string name, std::string family, std::vector<Term> terms, Sense sense, double rhs) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw Error(ErrorCode::MissingVariable, "row " + name + " references an undeclared variable");
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  rows_.push_back({std::move(name), std::move(family), std::move(merged), sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

int MipModel::add_link(Link link) {
  links_.push_back(link);
  const int id = static_cast<int>(links_.size()) - 1;
  vars_.at(link.output).definition = DefinedByLink{id};
  return id;
}

void MipModel::define_by_row(int var, int row) { vars_.at(var).definition = DefinedByRow{row}; }

std::optional<int> MipModel::find(VarTag tag, VarIndex index) const {
  auto it = lookup_.find({tag, index});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int MipModel::at(VarTag tag, VarIndex index) const {
  if (auto id = find(tag, index)) return *id;
  throw Error(ErrorCode::MissingVariable, std::string("no variable ") + std::string(to_string(tag)));
}

std::size_t MipModel::count(VarTag tag) const {
  return static_cast<std::size_t>(std::count_if(vars_.begin(), vars_.end(), [&](const Variable& v) { return v.tag == tag; }));
}

std::size_t MipModel::count_family(std::string_view family) const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [&](const LinearRow& r) { return r.family == family; }));
}

Assignment empty_assignment(const MipModel& model) {
  return Assignment(model.num_variables(), std::numeric_limits<double>::quiet_NaN());
}

double row_activity(const LinearRow& row, const Assignment& values) {
  long double sum = 0.0;
  for (const auto& t : row.terms) sum += static_cast<long double>(t.coef) * values[t.var];
  return static_cast<double>(sum);
}

double objective_value(const MipModel& model, const Assignment& values) {
  double sum = 0.0;
  for (const auto& t : model.objective()) sum += t.coef * values[t.var];
  return sum;
}

namespace {

double require(const MipModel& model, const Assignment& values, int var) {
  const double x = values[var];
  if (std::isnan(x))
    throw Error(ErrorCode::MissingVariable, "variable " + model.variables()[var].name + " is unassigned");
  return x;
}

}  // namespace

void complete_assignment(const MipModel& model, Assignment& values) {
  if (values.size() != model.num_variables())
    throw Error(ErrorCode::MissingVariable, "assignment size does not match the model");
  const auto& vars = model.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const int id = static_cast<int>(i);
    std::visit(
        [&](const auto& def) {
          using T = std::decay_t<decltype(def)>;
          if constexpr (std::is_same_v<T, Primary>) {
            require(model, values, id);
          } else if constexpr (std::is_same_v<T, DefinedByRow>) {
            const LinearRow& row = model.rows()[def.row];
            double own = 0.0;
            long double rest = 0.0;
            for (const auto& t : row.terms) {
              if (t.var == id) {
                own = t.coef;
              } else {
                rest += static_cast<long double>(t.coef) * require(model, values, t.var);
              }
            }
            values[i] = static_cast<double>((row.rhs - rest) / own);
          } else if constexpr (std::is_same_v<T, IndicatorOf>) {
            values[i] = std::lround(require(model, values, def.parent)) == def.value ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, ConjunctionOf>) {
            bool all = true;
            for (int v : def.vars) all = all && require(model, values, v) > 0.5;
            values[i] = all ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, DefinedByLink>) {
            const Link& link = model.links()[def.link];
            const double in = require(model, values, link.input);
            if (link.kind == LinkKind::Exp) {
              values[i] = std::exp(in);
            } else {
              double size = 0.0;
              for (int v : model.node_exists_vars) size += require(model, values, v);
              values[i] = in / (link.constant * std::pow(size, link.power));
            }
          } else if constexpr (std::is_same_v<T, SigmaFromQuadratic>) {
            const VarianceRow& q = *model.variance_row();
            Eigen::VectorXd k(static_cast<Eigen::Index>(q.kernel_vars.size()));
            for (std::size_t j = 0; j < q.kernel_vars.size(); ++j)
              k[static_cast<Eigen::Index>(j)] = require(model, values, q.kernel_vars[j]);
            const double explained =
                k.size() > 0 ? q.chol.triangularView<Eigen::Lower>().solve(k).squaredNorm() : 0.0;
            values[i] = std::sqrt(std::max(0.0, require(model, values, q.kxx) - explained));
          }
        },
        vars[i].definition);
  }
}

}  // namespace bogrape::mip
