#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tncost/geometry.hpp"
#include "tncost/partition.hpp"
#include "tncost/rational.hpp"

namespace tncost {

/// Cost (or bond-dimension) exponent in units of ln q: the modeled
/// quantity scales as q^(coeff * L^order). q itself never needs a value;
/// all results are exact rational coefficients.
struct CostExponent {
  Rational coeff = 0;
  int order = 0;

  friend bool operator==(const CostExponent& a, const CostExponent& b) {
    return a.coeff == b.coeff && a.order == b.order;
  }
};

/// Area-law bond-dimension model: an edge whose bipartition has boundary
/// area |dA| carries bond dimension M ~ q^|dA|. Kept as an explicit seam so
/// alternative bond-dimension laws can be swapped in.
inline CostExponent bond_exponent(const AreaCoefficient& area) {
  return {area.coeff, area.order};
}

/// Per-tensor cost exponent of a degree-3 tree tensor with edge exponents
/// e1, e2, e3: contraction and SVD cost O(M1*M2*M3^2) for M1 <= M2 <= M3,
/// so the exponent is a + b + 2c after sorting ascending.
inline Rational ttns_tensor_exponent(Rational e1, Rational e2, Rational e3) {
  if (e1 < 0 || e2 < 0 || e3 < 0)
    throw InputError("edge exponents must be nonnegative");
  if (e1 > e2) std::swap(e1, e2);
  if (e2 > e3) std::swap(e2, e3);
  if (e1 > e2) std::swap(e1, e2);
  return e1 + e2 + 2 * e3;
}

/// Naive two-site cost exponent O(M^(3z-3)) at the maximal edge area.
inline Rational ttns_two_site_exponent(const Rational& max_area, int z) {
  if (z < 3) throw InputError("tree vertex degree must be >= 3");
  if (max_area < 0) throw InputError("edge area must be nonnegative");
  return (3 * z - 3) * max_area;
}

enum class MpsStrategy {
  SnakeObc,       // snake path, open x direction: O(M^3)
  PbcNaive,       // open-boundary MPS on an x-periodic system: exponents double
  PbcVerstraete,  // periodic MPS algorithm with O(q^(5 L^(D-1)))
  PbcPippan,      // periodic MPS algorithm with O(q^(3 L^(D-1)))
  InfiniteLx,     // send Lx to infinity, infinite MPS: O(q^(3 L^(D-1)))
};

inline std::string mps_strategy_name(MpsStrategy s) {
  switch (s) {
    case MpsStrategy::SnakeObc: return "snake-obc";
    case MpsStrategy::PbcNaive: return "pbc-naive";
    case MpsStrategy::PbcVerstraete: return "pbc-verstraete";
    case MpsStrategy::PbcPippan: return "pbc-pippan";
    case MpsStrategy::InfiniteLx: return "infinite-lx";
  }
  return "?";
}

/// Total MPS cost exponent for a snake ordering: multiplier times the
/// leading max-cut coefficient (which is 1 at order D-1).
inline CostExponent mps_total_exponent(const LatticeSpec& lattice,
                                       MpsStrategy strategy) {
  lattice.validate();
  const bool x_periodic = lattice.axes[0].bc == Bc::Periodic;
  int multiplier = 0;
  switch (strategy) {
    case MpsStrategy::SnakeObc:
      if (x_periodic)
        throw InputError(
            "snake-obc assumes an open or unbounded x axis; pick a pbc "
            "strategy or substitute the x axis");
      multiplier = 3;
      break;
    case MpsStrategy::PbcNaive:
      if (!x_periodic)
        throw InputError("pbc-naive applies to x-periodic systems");
      multiplier = 6;
      break;
    case MpsStrategy::PbcVerstraete:
      if (!x_periodic)
        throw InputError("pbc-verstraete applies to x-periodic systems");
      multiplier = 5;
      break;
    case MpsStrategy::PbcPippan:
      if (!x_periodic)
        throw InputError("pbc-pippan applies to x-periodic systems");
      multiplier = 3;
      break;
    case MpsStrategy::InfiniteLx:
      if (x_periodic)
        throw InputError(
            "infinite-lx requires an open or unbounded x axis; replace the "
            "periodic x axis by an unbounded one first");
      multiplier = 3;
      break;
  }
  const AreaCoefficient cut = mps_max_cut_coefficient(lattice);
  return {multiplier * cut.coeff, cut.order};
}

struct CostRule {
  enum class Kind { TtnsSingleSite, TtnsTwoSiteNaive };
  Kind kind = Kind::TtnsSingleSite;
  int z = 3;

  std::string name() const {
    const std::string base = kind == Kind::TtnsSingleSite
                                 ? "ttns-single-site"
                                 : "ttns-two-site-naive";
    return base + "(z=" + std::to_string(z) + ")";
  }
};

/// One table row. Layer 0 is the top edge (no tensor, no cost); elongated
/// geometries collapse their identical long-axis halving rows into a
/// single block row labelled "first k-1" and re-base the remaining layers
/// at 0, matching the presentation for Lx >> L.
struct CostRow {
  std::string label;
  int layer = 0;  // re-based layer index; -1 for the prefix block row
  int block_size = 1;
  std::vector<Rational> areas;   // |dA_n| (and |dA'_n| when distinct)
  std::optional<Rational> cost;  // per-tensor exponent; none for top edge
  bool dominant = false;
};

struct CostReport {
  std::string geometry;
  CostRule rule;
  int order = 0;  // exponents live at L^order
  std::vector<CostRow> rows;
  CostExponent total;
  std::vector<int> dominant_layers;
  /// True when the canonical descent attains the tree-wide maximum; the
  /// total is always the maximum over the fully materialized tree.
  bool descent_attains_total = true;
};

namespace detail {

inline Rational tensor_exponent_for(const CostRule& rule, const Rational& p,
                                    const Rational& c1, const Rational& c2) {
  if (rule.kind == CostRule::Kind::TtnsSingleSite) {
    if (rule.z != 3)
      throw InputError(
          "single-site rule is the sorted degree-3 contraction law; z must "
          "be 3");
    return ttns_tensor_exponent(p, c1, c2);
  }
  return ttns_two_site_exponent(std::max({p, c1, c2}), rule.z);
}

}  // namespace detail

/// Full per-layer cost report for a partition tree. Rows follow the
/// canonical max-area descent; the total is the maximum per-tensor
/// exponent over every internal node of the materialized tree.
inline CostReport ttns_total_report(const PartitionTree& tree,
                                    const CostRule& rule = {}) {
  if (tree.empty()) throw InputError("cost report over an empty tree");
  if (rule.z < 3) throw InputError("tree vertex degree must be >= 3");

  CostReport report;
  report.geometry = describe(tree.lattice);
  report.rule = rule;
  report.order = tree.lattice.dim() - 1;

  // Maximum per-tensor exponent over the whole tree. The root split is the
  // top edge, not a tensor: it contributes no cost.
  Rational tree_max = 0;
  bool any_tensor = false;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const PartitionNode& node = tree.nodes[i];
    if (!node.internal() || node.layer < 0) continue;
    const Rational f = detail::tensor_exponent_for(
        rule, node.area.coeff, tree.nodes[node.first_child].area.coeff,
        tree.nodes[node.second_child].area.coeff);
    tree_max = std::max(tree_max, f);
    any_tensor = true;
  }
  report.total = {tree_max, report.order};

  // Canonical descent rows: layer n shows the two children split off the
  // layer-(n-1) descent region and the per-tensor exponent of that split.
  struct RawRow {
    int layer;
    std::vector<Rational> areas;
    std::optional<Rational> cost;
  };
  std::vector<RawRow> raw;
  Rational descent_max = 0;
  {
    const PartitionNode* node = &tree.root();
    while (node->internal()) {
      const PartitionNode& a = tree.nodes[node->first_child];
      const PartitionNode& b = tree.nodes[node->second_child];
      RawRow row;
      row.layer = a.layer;
      row.areas.push_back(a.area.coeff);
      if (b.area.coeff != a.area.coeff) row.areas.push_back(b.area.coeff);
      if (node->layer >= 0) {
        row.cost = detail::tensor_exponent_for(rule, node->area.coeff,
                                               a.area.coeff, b.area.coeff);
        descent_max = std::max(descent_max, *row.cost);
      }
      raw.push_back(std::move(row));
      node = &a;
    }
  }
  report.descent_attains_total = !any_tensor || descent_max == tree_max;

  // Elongated presentation: raw row 0 is the window's own top split and is
  // dropped; rows 1..k-1 collapse into one block when identical.
  const int k = tree.prefix_layers;
  bool collapsed = false;
  if (tree.strategy.elongated_prefix && k >= 1 &&
      static_cast<int>(raw.size()) > k) {
    bool identical = true;
    for (int i = 2; i < k && identical; ++i)
      identical = raw[i].areas == raw[1].areas && raw[i].cost == raw[1].cost;
    if (identical) {
      if (k >= 2) {
        CostRow block;
        block.label = "first k-1";
        block.layer = -1;
        block.block_size = k - 1;
        block.areas = raw[1].areas;
        block.cost = raw[1].cost;
        report.rows.push_back(std::move(block));
      }
      for (std::size_t i = k; i < raw.size(); ++i) {
        CostRow row;
        row.layer = raw[i].layer - k;
        row.label = std::to_string(row.layer);
        row.areas = raw[i].areas;
        row.cost = raw[i].cost;
        report.rows.push_back(std::move(row));
      }
      collapsed = true;
    }
  }
  if (!collapsed) {
    for (const RawRow& r : raw) {
      CostRow row;
      row.layer = r.layer;
      row.label = std::to_string(r.layer) + (r.cost ? "" : " (top edge)");
      row.areas = r.areas;
      row.cost = r.cost;
      report.rows.push_back(std::move(row));
    }
  }

  for (CostRow& row : report.rows) {
    row.dominant = row.cost && *row.cost == tree_max;
    if (row.dominant) report.dominant_layers.push_back(row.layer);
  }
  return report;
}

}  // namespace tncost
