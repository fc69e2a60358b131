#include "bogrape/mip/encode.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "bogrape/error.hpp"

namespace bogrape::mip {

namespace {

std::string name_of(std::string_view base, std::initializer_list<int> idx) {
  std::string s(base);
  for (int i : idx) s += "_" + std::to_string(i);
  return s;
}

int A(const MipModel& m, int u, int v) { return m.at(VarTag::A, {u, v}); }
int dist(const MipModel& m, int u, int v) { return m.at(VarTag::d, {u, v}); }
int delta(const MipModel& m, int u, int v, int w) { return m.at(VarTag::delta, {u, v, w}); }
int feat(const MipModel& m, int v, int f) { return m.at(VarTag::F, {v, f}); }

}  // namespace

void encode_shortest_paths(MipModel& m, SizeSpec size, bool directed) {
  size.validate();
  const int n = size.max_nodes;
  const bool bounded = size.bounded();
  const double dmax = bounded ? n : n - 1;
  const double nd = n;

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m.add_variable(name_of("A", {u, v}), VarKind::Binary, 0, 1, VarTag::A, {u, v});
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      m.add_variable(name_of("d", {u, v}), VarKind::Integer, 0, dmax, VarTag::d, {u, v});
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        m.add_variable(name_of("delta", {u, v, w}), VarKind::Binary, 0, 1, VarTag::delta, {u, v, w});
  m.node_exists_vars.clear();
  for (int v = 0; v < n; ++v) m.node_exists_vars.push_back(A(m, v, v));

  if (!bounded) {
    for (int v = 0; v < n; ++v)
      m.add_row(name_of("NODE", {v}), "sp.node_exists", {{A(m, v, v), 1}}, Sense::Equal, 1);
  } else {
    for (int v = 0; v + 1 < n; ++v)
      m.add_row(name_of("ORDER", {v}), "sp.node_order", {{A(m, v, v), 1}, {A(m, v + 1, v + 1), -1}},
                Sense::GreaterEqual, 0);
    std::vector<Term> exist;
    for (int v = 0; v < n; ++v) exist.push_back({A(m, v, v), 1});
    m.add_row("MIN_NODES", "sp.min_nodes", exist, Sense::GreaterEqual, size.min_nodes);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v)
          m.add_row(name_of("EDGE_NODES", {u, v}), "sp.edge_needs_nodes",
                    {{A(m, u, v), 2}, {A(m, u, u), -1}, {A(m, v, v), -1}}, Sense::LessEqual, 0);
  }

  for (int v = 0; v < n; ++v)
    m.add_row(name_of("SELF_DIST", {v}), "sp.self_distance", {{dist(m, v, v), 1}}, Sense::Equal, 0);

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      m.add_row(name_of("ADJ_UB", {u, v}), "sp.adj_dist_ub", {{dist(m, u, v), 1}, {A(m, u, v), nd}},
                Sense::LessEqual, 1 + nd);
      m.add_row(name_of("ADJ_LB", {u, v}), "sp.adj_dist_lb", {{dist(m, u, v), 1}, {A(m, u, v), 1}},
                Sense::GreaterEqual, 2);
      if (bounded) {
        m.add_row(name_of("ABSENT_SRC", {u, v}), "sp.absent_src", {{dist(m, u, v), 1}, {A(m, u, u), nd}},
                  Sense::GreaterEqual, nd);
        m.add_row(name_of("ABSENT_DST", {u, v}), "sp.absent_dst", {{dist(m, u, v), 1}, {A(m, v, v), nd}},
                  Sense::GreaterEqual, nd);
      }
    }

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        const int duv = dist(m, u, v), duw = dist(m, u, w), dwv = dist(m, w, v), x = delta(m, u, v, w);
        m.add_row(name_of("TRI_UB", {u, v, w}), "sp.tri_ub", {{duv, 1}, {duw, -1}, {dwv, -1}, {x, -1}},
                  Sense::LessEqual, -1);
        m.add_row(name_of("TRI_LB", {u, v, w}), "sp.tri_lb", {{duv, 1}, {duw, -1}, {dwv, -1}, {x, -2 * nd}},
                  Sense::GreaterEqual, -2 * nd);
      }

  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      if (w == v) {
        m.add_row(name_of("DELTA_DIAG", {v}), "sp.delta_diag", {{delta(m, v, v, v), 1}}, Sense::Equal, 1);
      } else {
        m.add_row(name_of("DELTA_DIAG_OFF", {v, w}), "sp.delta_diag_off", {{delta(m, v, v, w), 1}}, Sense::Equal,
                  0);
      }
    }

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      m.add_row(name_of("DELTA_SRC", {u, v}), "sp.delta_endpoints", {{delta(m, u, v, u), 1}}, Sense::Equal, 1);
      m.add_row(name_of("DELTA_DST", {u, v}), "sp.delta_endpoints", {{delta(m, u, v, v), 1}}, Sense::Equal, 1);

      std::vector<Term> sum;
      for (int w = 0; w < n; ++w) sum.push_back({delta(m, u, v, w), 1});

      auto ub = sum;
      ub.push_back({A(m, u, v), nd - 2});
      m.add_row(name_of("DSUM_UB", {u, v}), "sp.delta_sum_ub", ub, Sense::LessEqual, nd);
      if (bounded) {
        auto ub_src = sum;
        ub_src.push_back({A(m, u, u), -(nd - 2)});
        m.add_row(name_of("DSUM_UB_SRC", {u, v}), "sp.delta_sum_ub_src", ub_src, Sense::LessEqual, 2);
        auto ub_dst = sum;
        ub_dst.push_back({A(m, v, v), -(nd - 2)});
        m.add_row(name_of("DSUM_UB_DST", {u, v}), "sp.delta_sum_ub_dst", ub_dst, Sense::LessEqual, 2);
        auto lb = sum;
        lb.push_back({A(m, u, u), -1});
        lb.push_back({A(m, v, v), -1});
        lb.push_back({A(m, u, v), 1});
        m.add_row(name_of("DSUM_LB", {u, v}), "sp.delta_sum_lb", lb, Sense::GreaterEqual, 1);
      } else {
        auto lb = sum;
        lb.push_back({A(m, u, v), 1});
        m.add_row(name_of("DSUM_LB", {u, v}), "sp.delta_sum_lb", lb, Sense::GreaterEqual, 3);
      }
    }

  if (!directed) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        m.add_row(name_of("SYM_A", {u, v}), "sym.A", {{A(m, u, v), 1}, {A(m, v, u), -1}}, Sense::Equal, 0);
        m.add_row(name_of("SYM_D", {u, v}), "sym.d", {{dist(m, u, v), 1}, {dist(m, v, u), -1}}, Sense::Equal, 0);
        for (int w = 0; w < n; ++w)
          m.add_row(name_of("SYM_DELTA", {u, v, w}), "sym.delta", {{delta(m, u, v, w), 1}, {delta(m, v, u, w), -1}},
                    Sense::Equal, 0);
      }
  }
}

MipModel shortest_path_model(SizeSpec size, bool directed) {
  MipModel m;
  m.meta.size = size;
  m.meta.directed = directed;
  encode_shortest_paths(m, size, directed);
  return m;
}

void encode_feature_block(MipModel& m, const DomainSpec& domain) {
  const int n = domain.size.max_nodes;
  const int L = domain.num_labels, M = domain.num_features;
  const bool bounded = domain.size.bounded();
  for (int v = 0; v < n; ++v)
    for (int f = 0; f < M; ++f) m.add_variable(name_of("F", {v, f}), VarKind::Binary, 0, 1, VarTag::F, {v, f});

  for (int v = 0; v < n; ++v) {
    std::vector<Term> onehot;
    for (int l = 0; l < L; ++l) onehot.push_back({feat(m, v, l), 1});
    if (bounded) {
      onehot.push_back({A(m, v, v), -1});
      m.add_row(name_of("LABEL", {v}), "feat.label_onehot", onehot, Sense::Equal, 0);
      for (int f = L; f < M; ++f)
        m.add_row(name_of("FEAT_NODE", {v, f}), "feat.requires_node", {{feat(m, v, f), 1}, {A(m, v, v), -1}},
                  Sense::LessEqual, 0);
    } else {
      m.add_row(name_of("LABEL", {v}), "feat.label_onehot", onehot, Sense::Equal, 1);
    }
  }

  for (int f = 0; f < M; ++f) {
    const int nf = m.add_variable(name_of("N", {f}), VarKind::Integer, 0, n, VarTag::N, {f});
    std::vector<Term> sum{{nf, 1}};
    for (int v = 0; v < n; ++v) sum.push_back({feat(m, v, f), -1});
    m.define_by_row(nf, m.add_row(name_of("NSUM", {f}), "feat.sum", sum, Sense::Equal, 0));

    std::vector<Term> onehot, link{{nf, -1}};
    for (int c = 0; c <= n; ++c) {
      const int x = m.add_variable(name_of("Nc", {f, c}), VarKind::Binary, 0, 1, VarTag::Nc, {f, c},
                                   IndicatorOf{nf, c});
      onehot.push_back({x, 1});
      link.push_back({x, double(c)});
    }
    m.add_row(name_of("NC_ONEHOT", {f}), "feat.count_onehot", onehot, Sense::Equal, 1);
    m.add_row(name_of("NC_LINK", {f}), "feat.count_link", link, Sense::Equal, 0);
  }
}

void encode_path_indicators(MipModel& m, SizeSpec size, int num_labels, bool directed, IndicatorSet which) {
  const int n = size.max_nodes;
  const int L = num_labels;
  const bool bounded = size.bounded();
  const int cmax = n * n;

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      std::vector<Term> onehot, link{{dist(m, u, v), -1}};
      for (int s = 0; s <= n; ++s) {
        const int x = m.add_variable(name_of("ds", {u, v, s}), VarKind::Binary, 0, 1, VarTag::ds, {u, v, s},
                                     IndicatorOf{dist(m, u, v), s});
        onehot.push_back({x, 1});
        link.push_back({x, double(s)});
      }
      m.add_row(name_of("DS_ONEHOT", {u, v}), "ind.ds_onehot", onehot, Sense::Equal, 1);
      m.add_row(name_of("DS_LINK", {u, v}), "ind.ds_link", link, Sense::Equal, 0);
    }

  auto count_indicators = [&](VarTag tag, std::string_view base, int parent, VarIndex idx, int arity,
                              std::string_view family, bool fix_odd) {
    std::vector<Term> onehot, link{{parent, -1}};
    for (int c = 0; c <= cmax; ++c) {
      VarIndex full = idx;
      full[arity] = c;
      std::string nm(base);
      for (int k = 0; k <= arity; ++k) nm += "_" + std::to_string(full[k]);
      const int x = m.add_variable(nm, VarKind::Binary, 0, 1, tag, full, IndicatorOf{parent, c});
      onehot.push_back({x, 1});
      link.push_back({x, double(c)});
      if (fix_odd && c % 2 == 1) m.add_row("ODD_" + nm, "sym.odd_Dc", {{x, 1}}, Sense::Equal, 0);
    }
    std::string suffix;
    for (int k = 0; k < arity; ++k) suffix += "_" + std::to_string(idx[k]);
    m.add_row(std::string(base) + "_ONEHOT" + suffix, std::string(family) + "_onehot", onehot, Sense::Equal, 1);
    m.add_row(std::string(base) + "_LINK" + suffix, std::string(family) + "_link", link, Sense::Equal, 0);
  };

  if (which.unlabeled) {
    for (int s = 0; s < n; ++s) {
      const int ds_total = m.add_variable(name_of("D", {s}), VarKind::Integer, 0, cmax, VarTag::D, {s});
      std::vector<Term> sum{{ds_total, 1}};
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          // absent nodes keep d_{v,v} = 0, so in bounded mode the diagonal
          // contributes node existence instead of d^0_{v,v}
          if (bounded && s == 0 && u == v) {
            sum.push_back({A(m, v, v), -1});
          } else {
            sum.push_back({m.at(VarTag::ds, {u, v, s}), -1});
          }
        }
      m.define_by_row(ds_total, m.add_row(name_of("DSUM", {s}), "ind.D_sum", sum, Sense::Equal, 0));
      count_indicators(VarTag::Dc, "Dc", ds_total, {s}, 1, "ind.Dc", !directed && s >= 1);
    }
  }

  if (which.labeled) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int s = 0; s < n; ++s)
          for (int l1 = 0; l1 < L; ++l1)
            for (int l2 = 0; l2 < L; ++l2) {
              const int fu = feat(m, u, l1), fv = feat(m, v, l2), x = m.at(VarTag::ds, {u, v, s});
              const int p = m.add_variable(name_of("p", {u, v, s, l1, l2}), VarKind::Binary, 0, 1, VarTag::p,
                                           {u, v, s, l1, l2}, ConjunctionOf{{fu, x, fv}});
              const std::string tag = name_of("", {u, v, s, l1, l2});
              m.add_row("PAND_SRC" + tag, "ind.p_and_src", {{p, 1}, {fu, -1}}, Sense::LessEqual, 0);
              m.add_row("PAND_LEN" + tag, "ind.p_and_len", {{p, 1}, {x, -1}}, Sense::LessEqual, 0);
              m.add_row("PAND_DST" + tag, "ind.p_and_dst", {{p, 1}, {fv, -1}}, Sense::LessEqual, 0);
              m.add_row("PAND_LB" + tag, "ind.p_and_lb", {{p, 1}, {fu, -1}, {x, -1}, {fv, -1}}, Sense::GreaterEqual,
                        -2);
            }
    for (int s = 0; s < n; ++s)
      for (int l1 = 0; l1 < L; ++l1)
        for (int l2 = 0; l2 < L; ++l2) {
          const int total =
              m.add_variable(name_of("P", {s, l1, l2}), VarKind::Integer, 0, cmax, VarTag::P, {s, l1, l2});
          std::vector<Term> sum{{total, 1}};
          for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) sum.push_back({m.at(VarTag::p, {u, v, s, l1, l2}), -1});
          m.define_by_row(total, m.add_row(name_of("PSUM", {s, l1, l2}), "ind.P_sum", sum, Sense::Equal, 0));
          count_indicators(VarTag::Pc, "Pc", total, {s, l1, l2}, 3, "ind.Pc", false);
        }
    if (!directed) {
      for (int s = 0; s < n; ++s)
        for (int l1 = 0; l1 < L; ++l1)
          for (int l2 = l1 + 1; l2 < L; ++l2)
            m.add_row(name_of("SYM_P", {s, l1, l2}), "sym.P",
                      {{m.at(VarTag::P, {s, l1, l2}), 1}, {m.at(VarTag::P, {s, l2, l1}), -1}}, Sense::Equal, 0);
    }
  }
}

void apply_domain_constraints(MipModel& m, const DomainSpec& domain) {
  domain.validate();
  const int n = domain.size.max_nodes;
  const int L = domain.num_labels;

  long min_total = 0;
  for (std::size_t l = 0; l < domain.label_counts.size(); ++l) {
    const auto& b = domain.label_counts[l];
    if (b.min > b.max || b.min > n || b.max < 0)
      throw Error(ErrorCode::InfeasibleDomainDetected, "label " + std::to_string(l) + " count bounds contradict");
    min_total += b.min;
  }
  if (min_total > n)
    throw Error(ErrorCode::InfeasibleDomainDetected, "label minimum counts exceed the node budget");
  if (!domain.label_counts.empty()) {
    long max_total = 0;
    for (int l = 0; l < L; ++l)
      max_total += l < static_cast<int>(domain.label_counts.size()) ? std::min(domain.label_counts[l].max, n) : n;
    if (max_total < domain.size.min_nodes)
      throw Error(ErrorCode::InfeasibleDomainDetected, "label maximum counts cannot cover the minimum size");
  }

  bool any_cap = false;
  for (const auto& c : domain.degree_caps) any_cap = any_cap || c.has_value();
  if (any_cap) {
    for (int v = 0; v < n; ++v) {
      std::vector<Term> row;
      for (int u = 0; u < n; ++u)
        if (u != v) row.push_back({A(m, u, v), 1});
      for (int l = 0; l < L; ++l) row.push_back({feat(m, v, l), -double(domain.cap_for(l).value_or(n - 1))});
      m.add_row(name_of("DEGREE_CAP", {v}), "dom.degree_cap", row, Sense::LessEqual, 0);
    }
  }

  for (int l = 0; l < static_cast<int>(domain.label_counts.size()); ++l) {
    std::vector<Term> row;
    for (int v = 0; v < n; ++v) row.push_back({feat(m, v, l), 1});
    const auto& b = domain.label_counts[l];
    if (b.min > 0) m.add_row(name_of("LABEL_MIN", {l}), "dom.label_count_min", row, Sense::GreaterEqual, b.min);
    if (b.max < n) m.add_row(name_of("LABEL_MAX", {l}), "dom.label_count_max", row, Sense::LessEqual, b.max);
  }

  int k = 0;
  for (const auto& r : domain.rows) {
    std::vector<Term> row;
    for (const auto& t : r.terms) {
      switch (t.kind) {
        case StructuralVar::Edge: row.push_back({A(m, t.i, t.j), t.coef}); break;
        case StructuralVar::Feature: row.push_back({feat(m, t.i, t.j), t.coef}); break;
        case StructuralVar::NodeExists: row.push_back({A(m, t.i, t.i), t.coef}); break;
      }
    }
    // file formats split on whitespace, so user names are reduced to [A-Za-z0-9_]
    std::string nm = name_of("USER", {k});
    if (!r.name.empty()) nm += "_";
    for (char c : r.name) nm += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    m.add_row(nm, "dom.user", row, r.sense, r.rhs);
    ++k;
  }
}

MipModel encode_acquisition(const GpModel& gp, const DomainSpec& domain, double beta_sqrt) {
  if (gp.empty()) throw Error(ErrorCode::UnfittedModel, "acquisition needs a conditioned GP");
  if (beta_sqrt < 0) throw Error(ErrorCode::InvalidArgument, "beta_sqrt must be nonnegative");
  domain.validate();
  if (gp.num_labels() != domain.num_labels || gp.num_features() != domain.num_features)
    throw Error(ErrorCode::IncompatibleDomain, "GP and domain disagree on label/feature counts");
  for (const auto& p : gp.points())
    if (p.graph.directed() != domain.directed)
      throw Error(ErrorCode::IncompatibleDomain, "GP training graphs disagree with the domain on directedness");

  const KernelVariant variant = gp.variant();
  const KernelHyperparams& hyper = gp.hyper();
  const bool labeled = is_labeled(variant);
  const bool expo = is_exponential(variant);
  const SizeSpec size = domain.size;
  const bool bounded = size.bounded();
  const int n = size.max_nodes, L = domain.num_labels, M = domain.num_features;
  const double nd = n;

  MipModel m;
  m.meta = {size, domain.directed, L, M, variant, beta_sqrt, static_cast<int>(gp.size())};
  encode_shortest_paths(m, size, domain.directed);
  encode_feature_block(m, domain);
  encode_path_indicators(m, size, L, domain.directed, {!labeled, labeled});
  apply_domain_constraints(m, domain);

  const double graph_weight = expo ? hyper.alpha / *hyper.sigma_k_sq : hyper.alpha;
  auto scaled = [&](VarTag tag, std::string nm, int raw, double constant, int power, std::string_view family,
                    int idx, double ub) {
    const int out = m.add_variable(std::move(nm), VarKind::Continuous, 0, ub, tag, {idx});
    if (bounded) {
      m.add_link({LinkKind::InverseSizeScale, raw, out, constant, power});
    } else {
      const double scale = constant * std::pow(nd, power);
      m.define_by_row(out, m.add_row(m.variables()[out].name + "_DEF", std::string(family),
                                     {{out, 1}, {raw, -1.0 / scale}}, Sense::Equal, 0));
    }
    return out;
  };
  auto exp_of = [&](VarTag tag, std::string nm, int in, int idx) {
    const int out = m.add_variable(std::move(nm), VarKind::Continuous, 1, std::numbers::e, tag, {idx});
    m.add_link({LinkKind::Exp, in, out, 1.0, 0});
    return out;
  };

  std::vector<int> kernel_vars;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    const int ii = static_cast<int>(i);
    const ShortestPathSummary& s = gp.points()[i].summary;
    const double ni = s.n;

    const int raw_g = m.add_variable(name_of("rawG", {ii}), VarKind::Continuous, -kInf, kInf, VarTag::RawGraph, {ii});
    std::vector<Term> rg{{raw_g, 1}};
    for (int len = 0; len < std::min(n, s.n); ++len) {
      if (labeled) {
        for (int l1 = 0; l1 < L; ++l1)
          for (int l2 = 0; l2 < L; ++l2)
            if (s.P(len, l1, l2) != 0) rg.push_back({m.at(VarTag::P, {len, l1, l2}), -double(s.P(len, l1, l2))});
      } else if (s.D(len) != 0) {
        rg.push_back({m.at(VarTag::D, {len}), -double(s.D(len))});
      }
    }
    m.define_by_row(raw_g, m.add_row(name_of("RAWG", {ii}), "ker.raw_graph", rg, Sense::Equal, 0));
    int graph_term = scaled(VarTag::GraphKernel, name_of("kG", {ii}), raw_g, ni * ni, 2, "ker.graph_scale", ii, 1.0);
    if (expo) graph_term = exp_of(VarTag::ExpGraph, name_of("expG", {ii}), graph_term, ii);

    const int raw_f =
        m.add_variable(name_of("rawF", {ii}), VarKind::Continuous, -kInf, kInf, VarTag::RawFeature, {ii});
    std::vector<Term> rf{{raw_f, 1}};
    for (int f = 0; f < M; ++f)
      if (s.N(f) != 0) rf.push_back({m.at(VarTag::N, {f}), -double(s.N(f))});
    m.define_by_row(raw_f, m.add_row(name_of("RAWF", {ii}), "ker.raw_feature", rf, Sense::Equal, 0));
    const int feature_term =
        scaled(VarTag::FeatureKernel, name_of("kF", {ii}), raw_f, ni * M, 1, "ker.feature_scale", ii, kInf);

    const int k = m.add_variable(name_of("k", {ii}), VarKind::Continuous, -kInf, kInf, VarTag::Kernel, {ii});
    m.define_by_row(k, m.add_row(name_of("KER", {ii}), "ker.combine",
                                 {{k, 1}, {graph_term, -graph_weight}, {feature_term, -hyper.beta}}, Sense::Equal, 0));
    kernel_vars.push_back(k);
  }

  // k(x, x) through the squared-count indicators.
  const int raw_gxx = m.add_variable("rawGxx", VarKind::Continuous, -kInf, kInf, VarTag::RawGraphSelf, {});
  {
    std::vector<Term> row{{raw_gxx, 1}};
    for (int len = 0; len < n; ++len)
      for (int c = 1; c <= n * n; ++c) {
        const double c2 = double(c) * double(c);
        if (labeled) {
          for (int l1 = 0; l1 < L; ++l1)
            for (int l2 = 0; l2 < L; ++l2) row.push_back({m.at(VarTag::Pc, {len, l1, l2, c}), -c2});
        } else {
          row.push_back({m.at(VarTag::Dc, {len, c}), -c2});
        }
      }
    m.define_by_row(raw_gxx, m.add_row("RAWGXX", "ker.raw_graph_self", row, Sense::Equal, 0));
  }
  int graph_self = scaled(VarTag::GraphSelf, "kGxx", raw_gxx, 1.0, 4, "ker.graph_self_scale", 0, 1.0);
  if (expo) graph_self = exp_of(VarTag::ExpGraphSelf, "expGxx", graph_self, 0);

  const int raw_fxx = m.add_variable("rawFxx", VarKind::Continuous, -kInf, kInf, VarTag::RawFeatureSelf, {});
  {
    std::vector<Term> row{{raw_fxx, 1}};
    for (int f = 0; f < M; ++f)
      for (int c = 1; c <= n; ++c) row.push_back({m.at(VarTag::Nc, {f, c}), -double(c) * double(c)});
    m.define_by_row(raw_fxx, m.add_row("RAWFXX", "ker.raw_feature_self", row, Sense::Equal, 0));
  }
  const int feature_self = scaled(VarTag::FeatureSelf, "kFxx", raw_fxx, double(M), 2, "ker.feature_self_scale", 0, kInf);

  const int kxx = m.add_variable("kxx", VarKind::Continuous, -kInf, kInf, VarTag::KernelSelf, {});
  m.define_by_row(kxx, m.add_row("KXX", "ker.combine_self",
                                 {{kxx, 1}, {graph_self, -graph_weight}, {feature_self, -hyper.beta}}, Sense::Equal, 0));

  const int mu = m.add_variable("mu", VarKind::Continuous, -kInf, kInf, VarTag::Mu, {});
  {
    std::vector<Term> row{{mu, 1}};
    for (std::size_t i = 0; i < kernel_vars.size(); ++i)
      row.push_back({kernel_vars[i], -gp.weights()[static_cast<Eigen::Index>(i)]});
    m.define_by_row(mu, m.add_row("MEAN", "gp.mean", row, Sense::Equal, 0));
  }

  const double kxx_max = graph_weight * (expo ? std::numbers::e : 1.0) + hyper.beta;
  const int sigma =
      m.add_variable("sigma", VarKind::Continuous, 0, std::sqrt(kxx_max), VarTag::Sigma, {}, SigmaFromQuadratic{});
  m.set_variance_row({"VARIANCE", sigma, kxx, kernel_vars, gp.precision(), gp.chol()});

  std::vector<Term> obj{{mu, 1.0}};
  if (beta_sqrt > 0) obj.push_back({sigma, -beta_sqrt});
  m.set_objective(obj);
  return m;
}

Assignment canonical_assignment(const MipModel& m, const AttributedGraph& g) {
  const int nmax = m.meta.size.max_nodes;
  const int n = g.num_nodes();
  if (n > nmax) throw Error(ErrorCode::IncompatibleDomain, "graph is larger than the model");
  const ShortestPaths sp = floyd_warshall(g);
  Assignment x = empty_assignment(m);
  for (std::size_t id = 0; id < m.num_variables(); ++id) {
    const Variable& var = m.variables()[id];
    if (!std::holds_alternative<Primary>(var.definition)) continue;
    const auto& ix = var.index;
    const int u = ix[0], v = ix[1];
    switch (var.tag) {
      case VarTag::A:
        x[id] = u == v ? (u < n ? 1 : 0) : (u < n && v < n && g.has_edge(u, v) ? 1 : 0);
        break;
      case VarTag::d:
        x[id] = u == v ? 0 : (u < n && v < n ? sp.distance(u, v) : nmax);
        break;
      case VarTag::delta: {
        const int w = ix[2];
        if (u < n && v < n) {
          x[id] = w < n && sp.is_on_path(u, v, w) ? 1 : 0;
        } else {
          x[id] = (w == u || w == v) ? 1 : 0;
        }
        break;
      }
      case VarTag::F:
        x[id] = u < n && g.features()(u, v) ? 1 : 0;
        break;
      default:
        throw Error(ErrorCode::MissingVariable, "unexpected primary variable " + var.name);
    }
  }
  complete_assignment(m, x);
  return x;
}

}  // namespace bogrape::mip
