#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bogrape/mip/model.hpp"

namespace bogrape::mip {

enum class ExportFormat { Mps, Lp };

ExportFormat parse_format(std::string_view text);

inline constexpr int kDefaultBreakpoints = 64;

/// Piecewise-linear interpolation of exp on [lo, hi] with equal segments.
struct PiecewiseExp {
  int segments = kDefaultBreakpoints;
  double lo = 0.0;
  double hi = 1.0;

  double knot(int j) const { return lo + (hi - lo) * j / segments; }
  int segment_of(double x) const;
  double slope(int j) const;
  double operator()(double x) const;
  /// Largest |interp - exp| over `grid` equally spaced points.
  double max_error(int grid) const;
};

/// σ² + Σ entries(i,j)·x_i·x_j + Σ linear ≤ rhs, entries stored full-symmetric.
struct QuadraticRow {
  std::string name;
  std::vector<Term> linear;
  std::vector<std::tuple<int, int, double>> entries;
  double rhs = 0.0;
};

/// Solver-facing flattening of a model: exp links replaced by
/// segment selectors and big-M rows, the variance row as a quadratic row.
/// Also the result of parsing an exported file.
struct FlatModel {
  std::vector<Variable> columns;
  std::vector<LinearRow> rows;
  std::optional<QuadraticRow> quadratic;
  std::vector<Term> objective;

  std::size_t num_rows() const { return rows.size() + (quadratic ? 1 : 0); }
  std::optional<int> column(std::string_view name) const;
};

/// Throws UnsupportedBoundedSizeExport for bounded-size models.
FlatModel flatten(const MipModel& model, int breakpoints = kDefaultBreakpoints);

void write_mps(const FlatModel& model, std::ostream& out);
void write_lp(const FlatModel& model, std::ostream& out);
FlatModel read_mps(std::istream& in);
FlatModel read_lp(std::istream& in);

/// Flattens and writes to `path`. Throws IoError.
void export_model(const MipModel& model, const std::string& path, ExportFormat format,
                  int breakpoints = kDefaultBreakpoints);
FlatModel read_model_file(const std::string& path, ExportFormat format);

/// Exact structural comparison (names, kinds, bounds, coefficients). On
/// mismatch, `why` receives the first difference.
bool same_structure(const FlatModel& a, const FlatModel& b, std::string* why = nullptr);

}  // namespace bogrape::mip
