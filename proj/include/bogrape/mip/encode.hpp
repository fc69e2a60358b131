#pragma once

#include "bogrape/domain.hpp"
#include "bogrape/gp.hpp"
#include "bogrape/mip/model.hpp"

namespace bogrape::mip {

/// Emits A, d, delta and the shortest-path rows: the fixed-size system when
/// size.min_nodes == size.max_nodes, the node-existence system otherwise.
/// Undirected mode adds symmetry equalities on A, d and delta.
///
/// Big-M coefficients are n (distance vs. adjacency), 2n (triangle rows) and
/// n-2 (on-path counts), with n = size.max_nodes. In bounded mode distance n
/// stands for "no path".
void encode_shortest_paths(MipModel& model, SizeSpec size, bool directed);

/// Standalone model holding only the shortest-path block.
MipModel shortest_path_model(SizeSpec size, bool directed);

/// F, per-node label one-hot (tied to node existence in bounded mode),
/// feature sums N_m and their one-hot count indicators.
void encode_feature_block(MipModel& model, const DomainSpec& domain);

struct IndicatorSet {
  bool unlabeled = true;  // D_s, D_s^c
  bool labeled = false;   // p, P, P^c (needs the feature block)
};

/// Distance indicators d^s (s = 0..n, s = n meaning "no path"), path-length
/// counts with one-hot count indicators, and labeled path indicators.
/// Undirected mode fixes odd D_s^c (s >= 1) to zero and ties P_{s,l1,l2} to
/// P_{s,l2,l1}.
void encode_path_indicators(MipModel& model, SizeSpec size, int num_labels, bool directed, IndicatorSet which);

/// Degree caps, label-count bounds and user rows. Throws
/// InfeasibleDomainDetected on trivially contradictory bounds.
void apply_domain_constraints(MipModel& model, const DomainSpec& domain);

/// Full acquisition model: minimize mu - beta_sqrt * sigma subject to the
/// shortest-path, indicator, feature, kernel and variance rows.
MipModel encode_acquisition(const GpModel& gp, const DomainSpec& domain, double beta_sqrt);

/// Values of every variable for graph g: A, d, delta and F from the graph,
/// everything else from the model's definitions. Nodes v >= n(g) are absent.
Assignment canonical_assignment(const MipModel& model, const AttributedGraph& g);

}  // namespace bogrape::mip
