#include "bogrape/domain.hpp"

#include <cmath>

#include "bogrape/error.hpp"

namespace bogrape {

void SizeSpec::validate() const {
  if (min_nodes < 1 || min_nodes > max_nodes)
    throw Error(ErrorCode::InvalidSizeBounds,
                "need 1 <= n0 <= n, got [" + std::to_string(min_nodes) + ", " + std::to_string(max_nodes) + "]");
}

void DomainSpec::validate() const {
  size.validate();
  if (num_labels < 1 || num_labels > num_features)
    throw Error(ErrorCode::InvalidDomain, "need 1 <= num_labels <= num_features");
  if (static_cast<int>(degree_caps.size()) > num_labels)
    throw Error(ErrorCode::InvalidDomain, "more degree caps than labels");
  for (const auto& cap : degree_caps)
    if (cap && *cap < 0) throw Error(ErrorCode::InvalidDomain, "degree caps must be nonnegative");
  if (static_cast<int>(label_counts.size()) > num_labels)
    throw Error(ErrorCode::InvalidDomain, "more label count bounds than labels");
  for (const auto& row : rows)
    for (const auto& t : row.terms) {
      const int n = size.max_nodes;
      const bool ok = t.kind == StructuralVar::Edge      ? t.i >= 0 && t.i < n && t.j >= 0 && t.j < n && t.i != t.j
                      : t.kind == StructuralVar::Feature ? t.i >= 0 && t.i < n && t.j >= 0 && t.j < num_features
                                                         : t.i >= 0 && t.i < n;
      if (!ok) throw Error(ErrorCode::InvalidDomain, "row '" + row.name + "' references an out-of-range variable");
    }
}

double evaluate_row(const DomainRow& row, const AttributedGraph& g) {
  const int n = g.num_nodes();
  double lhs = 0.0;
  for (const auto& t : row.terms) {
    switch (t.kind) {
      case StructuralVar::Edge:
        if (t.i < n && t.j < n && g.has_edge(t.i, t.j)) lhs += t.coef;
        break;
      case StructuralVar::Feature:
        if (t.i < n && g.features()(t.i, t.j)) lhs += t.coef;
        break;
      case StructuralVar::NodeExists:
        if (t.i < n) lhs += t.coef;
        break;
    }
  }
  return lhs;
}

bool row_holds(Sense sense, double lhs, double rhs, double tol) {
  switch (sense) {
    case Sense::LessEqual: return lhs <= rhs + tol;
    case Sense::GreaterEqual: return lhs >= rhs - tol;
    case Sense::Equal: return std::abs(lhs - rhs) <= tol;
  }
  return false;
}

bool satisfies(const DomainSpec& domain, const AttributedGraph& g) {
  const int n = g.num_nodes();
  if (!domain.size.contains(n) || g.directed() != domain.directed || g.num_labels() != domain.num_labels ||
      g.num_features() != domain.num_features)
    return false;
  for (int v = 0; v < n; ++v) {
    if (auto cap = domain.cap_for(g.label(v)); cap && g.degree(v) > *cap) return false;
  }
  for (int l = 0; l < static_cast<int>(domain.label_counts.size()); ++l) {
    int count = 0;
    for (int v = 0; v < n; ++v) count += g.label(v) == l ? 1 : 0;
    if (count < domain.label_counts[l].min || count > domain.label_counts[l].max) return false;
  }
  for (const auto& row : domain.rows)
    if (!row_holds(row.sense, evaluate_row(row, g), row.rhs)) return false;
  return true;
}

double search_space_bits(const DomainSpec& domain) {
  const int n = domain.size.max_nodes;
  const double pairs = domain.directed ? double(n) * (n - 1) : double(n) * (n - 1) / 2.0;
  return pairs + n * std::log2(double(domain.num_labels)) + double(n) * (domain.num_features - domain.num_labels);
}

}  // namespace bogrape
