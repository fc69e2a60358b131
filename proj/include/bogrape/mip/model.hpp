#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bogrape/domain.hpp"
#include "bogrape/kernels.hpp"

namespace bogrape::mip {

using bogrape::Sense;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Binary, Integer, Continuous };

/// Role of a variable, mirroring the symbols of the shortest-path encoding.
enum class VarTag {
  A,        // A_{u,v}; diagonal = node existence
  d,        // shortest distance
  delta,    // w on a shortest u->v path
  ds,       // 1(d_{u,v} = s)
  D,        // paths of length s
  Dc,       // 1(D_s = c)
  p,        // 1(F_{u,l1}=1, d_{u,v}=s, F_{v,l2}=1)
  P,        // labeled path counts
  Pc,       // 1(P_{s,l1,l2} = c)
  F,        // node features
  N,        // feature column sums
  Nc,       // 1(N_m = c)
  RawGraph,     // un-normalized path inner product with training graph i
  GraphKernel,  // normalized SSP/SP value with training graph i
  ExpGraph,     // exp(GraphKernel)
  RawFeature,
  FeatureKernel,
  Kernel,  // k(x, X_i)
  RawGraphSelf,
  GraphSelf,
  ExpGraphSelf,
  RawFeatureSelf,
  FeatureSelf,
  KernelSelf,  // k(x, x)
  Mu,
  Sigma,
  PiecewiseSelect,  // export-only segment selectors
};

std::string_view to_string(VarTag tag);

using VarIndex = std::array<int, 5>;

/// How a variable's value follows from earlier variables at a full
/// assignment. Primary variables (A, F, d, delta) are supplied externally.
struct Primary {};
struct DefinedByRow {
  int row = -1;
};
struct IndicatorOf {
  int parent = -1;
  int value = 0;
};
struct ConjunctionOf {
  std::vector<int> vars;
};
struct DefinedByLink {
  int link = -1;
};
struct SigmaFromQuadratic {};
using Definition = std::variant<Primary, DefinedByRow, IndicatorOf, ConjunctionOf, DefinedByLink, SigmaFromQuadratic>;

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0.0;
  double ub = kInf;
  VarTag tag = VarTag::A;
  VarIndex index{};
  Definition definition;
};

struct Term {
  int var = -1;
  double coef = 0.0;
};

struct LinearRow {
  std::string name;
  std::string family;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// sigma^2 + k^T Q k - kxx <= 0, with Q = (K + diag*I)^{-1}. The lower
/// Cholesky factor of K + diag*I is kept for exact internal evaluation.
struct VarianceRow {
  std::string name = "VARIANCE";
  int sigma = -1;
  int kxx = -1;
  std::vector<int> kernel_vars;
  Eigen::MatrixXd precision;
  Eigen::MatrixXd chol;
};

/// Nonlinear scalar relations that stay outside the linear rows.
///   Exp:              output = exp(input)
///   InverseSizeScale: output = input / (constant * size^power), size = sum_v A_{v,v}
enum class LinkKind { Exp, InverseSizeScale };

struct Link {
  LinkKind kind = LinkKind::Exp;
  int input = -1;
  int output = -1;
  double constant = 1.0;
  int power = 0;
};

struct ModelMetadata {
  SizeSpec size;
  bool directed = false;
  int num_labels = 1;
  int num_features = 1;
  std::optional<KernelVariant> variant;
  double beta_sqrt = 0.0;
  int num_training = 0;
};

class MipModel {
 public:
  int add_variable(std::string name, VarKind kind, double lb, double ub, VarTag tag, VarIndex index,
                   Definition def = Primary{});
  /// Adds a row after merging duplicate variables and dropping zero terms.
  int add_row(std::string name, std::string family, std::vector<Term> terms, Sense sense, double rhs);
  int add_link(Link link);
  /// Marks `var` as determined by `row` (an equality in which it appears).
  void define_by_row(int var, int row);

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<LinearRow>& rows() const noexcept { return rows_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  const std::optional<VarianceRow>& variance_row() const noexcept { return variance_; }
  const std::vector<Term>& objective() const noexcept { return objective_; }

  std::size_t num_variables() const noexcept { return vars_.size(); }
  /// Linear rows plus the variance row when present.
  std::size_t num_constraints() const noexcept { return rows_.size() + (variance_ ? 1 : 0); }

  std::optional<int> find(VarTag tag, VarIndex index) const;
  int at(VarTag tag, VarIndex index) const;  // throws MissingVariable
  std::size_t count(VarTag tag) const;
  std::size_t count_family(std::string_view family) const;

  void set_variance_row(VarianceRow row) { variance_ = std::move(row); }
  void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

  ModelMetadata meta;
  std::vector<int> node_exists_vars;  // A_{v,v}

 private:
  std::vector<Variable> vars_;
  std::vector<LinearRow> rows_;
  std::vector<Link> links_;
  std::optional<VarianceRow> variance_;
  std::vector<Term> objective_;
  std::map<std::pair<VarTag, VarIndex>, int> lookup_;
};

/// One value per variable; NaN marks an unassigned variable.
using Assignment = std::vector<double>;

Assignment empty_assignment(const MipModel& model);

/// Fills every non-primary variable from its definition, in declaration
/// order. Throws MissingVariable if a primary variable is unassigned.
void complete_assignment(const MipModel& model, Assignment& values);

double row_activity(const LinearRow& row, const Assignment& values);
double objective_value(const MipModel& model, const Assignment& values);

}  // namespace bogrape::mip
