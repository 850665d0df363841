#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tncost/costmodel.hpp"
#include "tncost/geometry.hpp"
#include "tncost/partition.hpp"
#include "tncost/rational.hpp"

namespace tncost {

/// Named geometry with its canonical partition strategy and MPS strategy.
///
/// Elongated geometries (Lx >> L) model the long axis as unbounded and
/// root the partition tree at a finite 2^k window whose cuts are all
/// interior, which is exactly the idealization behind their layer tables.
/// Periodic-x geometries evaluate the MPS side on the substituted lattice
/// with the x axis sent to infinity (open), the standard workaround that
/// keeps MPS costs at O(q^(3 L^(D-1))).
struct Preset {
  std::string name;
  std::string title;
  std::string pbc_label;  // "-", "y", "y,x", ...
  LatticeSpec ttns_lattice;
  Region ttns_root;
  SplitStrategy strategy;
  LatticeSpec mps_lattice;
  MpsStrategy mps_strategy = MpsStrategy::SnakeObc;
  bool mps_substituted = false;  // x axis replaced by an unbounded one
  /// Analytic floor on the achievable per-tensor exponent, where known.
  std::optional<Rational> ttns_floor;
  int dim = 2;
};

namespace detail {

inline LatticeSpec box_lattice(int dim, const std::vector<Bc>& bcs) {
  LatticeSpec lat;
  for (int a = 0; a < dim; ++a)
    lat.axes.push_back({AxisExtent::unit(), bcs[a]});
  return lat;
}

inline LatticeSpec unbounded_x_lattice(int dim, const std::vector<Bc>& bcs) {
  LatticeSpec lat = box_lattice(dim, bcs);
  lat.axes[0] = {AxisExtent::unbounded(), Bc::Open};
  return lat;
}

/// Window [0, multiple] on the unbounded x axis, full span elsewhere.
inline Region window_region(const LatticeSpec& lattice,
                            const Rational& multiple) {
  Region r = Region::full(lattice);
  r.intervals[0] = AxisInterval::between(0, multiple);
  return r;
}

inline SplitStrategy strategy_for(int dim, bool elongated) {
  SplitStrategy s;
  s.axis_policy = dim == 2 ? AxisPolicy::Alternate2D : AxisPolicy::Cyclic;
  s.elongated_prefix = elongated;
  return s;
}

}  // namespace detail

/// The window length 2^k used for elongated presets; k = 2 keeps one
/// collapsible halving block in the table.
inline const Rational kElongatedWindow = 4;

inline std::vector<std::string> preset_names() {
  return {"2d-long-cylinder", "2d-cylinder",          "2d-square",
          "2d-torus",         "3d-long-cuboid-yz-pbc", "3d-cube-yz-pbc",
          "3d-cube-obc",      "3d-cube-xyz-pbc",       "hypercube"};
}

/// Resolves a preset by name. `hypercube_dim` selects D for the hypercube
/// preset (D >= 4) and is ignored otherwise.
inline Preset make_preset(const std::string& name, int hypercube_dim = 4) {
  using detail::box_lattice;
  using detail::strategy_for;
  using detail::unbounded_x_lattice;
  using detail::window_region;

  Preset p;
  p.name = name;

  if (name == "2d-long-cylinder") {
    p.title = "2D Lx x L cylinder, Lx >> L";
    p.pbc_label = "y";
    p.dim = 2;
    p.ttns_lattice = unbounded_x_lattice(2, {Bc::Open, Bc::Periodic});
    p.ttns_root = window_region(p.ttns_lattice, kElongatedWindow);
    p.strategy = strategy_for(2, true);
    p.mps_lattice = p.ttns_lattice;
    p.mps_strategy = MpsStrategy::SnakeObc;
  } else if (name == "2d-cylinder") {
    p.title = "2D L x L cylinder";
    p.pbc_label = "y";
    p.dim = 2;
    p.ttns_lattice = box_lattice(2, {Bc::Open, Bc::Periodic});
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(2, false);
    p.mps_lattice = p.ttns_lattice;
    p.mps_strategy = MpsStrategy::SnakeObc;
  } else if (name == "2d-square") {
    p.title = "2D L x L square";
    p.pbc_label = "-";
    p.dim = 2;
    p.ttns_lattice = box_lattice(2, {Bc::Open, Bc::Open});
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(2, false);
    p.mps_lattice = p.ttns_lattice;
    p.mps_strategy = MpsStrategy::SnakeObc;
    p.ttns_floor = Rational(4);
  } else if (name == "2d-torus") {
    p.title = "2D L x L torus";
    p.pbc_label = "y,x";
    p.dim = 2;
    p.ttns_lattice = box_lattice(2, {Bc::Periodic, Bc::Periodic});
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(2, false);
    p.mps_lattice = unbounded_x_lattice(2, {Bc::Open, Bc::Periodic});
    p.mps_strategy = MpsStrategy::InfiniteLx;
    p.mps_substituted = true;
  } else if (name == "3d-long-cuboid-yz-pbc") {
    p.title = "3D Lx x L x L cuboid, Lx >> L";
    p.pbc_label = "z,y";
    p.dim = 3;
    p.ttns_lattice =
        unbounded_x_lattice(3, {Bc::Open, Bc::Periodic, Bc::Periodic});
    p.ttns_root = window_region(p.ttns_lattice, kElongatedWindow);
    p.strategy = strategy_for(3, true);
    p.mps_lattice = p.ttns_lattice;
    p.mps_strategy = MpsStrategy::SnakeObc;
  } else if (name == "3d-cube-yz-pbc") {
    p.title = "3D L x L x L cube";
    p.pbc_label = "z,y";
    p.dim = 3;
    p.ttns_lattice = box_lattice(3, {Bc::Open, Bc::Periodic, Bc::Periodic});
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(3, false);
    p.mps_lattice = p.ttns_lattice;
    p.mps_strategy = MpsStrategy::SnakeObc;
  } else if (name == "3d-cube-obc") {
    p.title = "3D L x L x L cube";
    p.pbc_label = "-";
    p.dim = 3;
    p.ttns_lattice = box_lattice(3, {Bc::Open, Bc::Open, Bc::Open});
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(3, false);
    p.mps_lattice = p.ttns_lattice;
    p.mps_strategy = MpsStrategy::SnakeObc;
    p.ttns_floor = Rational(4);
  } else if (name == "3d-cube-xyz-pbc") {
    p.title = "3D L x L x L cube";
    p.pbc_label = "z,y,x";
    p.dim = 3;
    p.ttns_lattice =
        box_lattice(3, {Bc::Periodic, Bc::Periodic, Bc::Periodic});
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(3, false);
    p.mps_lattice =
        unbounded_x_lattice(3, {Bc::Open, Bc::Periodic, Bc::Periodic});
    p.mps_strategy = MpsStrategy::InfiniteLx;
    p.mps_substituted = true;
  } else if (name == "hypercube") {
    if (hypercube_dim < 4)
      throw InputError("hypercube preset requires dimension >= 4");
    p.title = std::to_string(hypercube_dim) + "D L^" +
              std::to_string(hypercube_dim) + " hypercube";
    p.pbc_label = "all";
    p.dim = hypercube_dim;
    p.ttns_lattice =
        box_lattice(hypercube_dim, std::vector<Bc>(hypercube_dim, Bc::Periodic));
    p.ttns_root = Region::full(p.ttns_lattice);
    p.strategy = strategy_for(hypercube_dim, false);
    std::vector<Bc> bcs(hypercube_dim, Bc::Periodic);
    bcs[0] = Bc::Open;
    p.mps_lattice = unbounded_x_lattice(hypercube_dim, bcs);
    p.mps_strategy = MpsStrategy::InfiniteLx;
    p.mps_substituted = true;
  } else {
    throw InputError("unknown preset '" + name + "'");
  }
  return p;
}

inline PartitionTree build_preset_tree(const Preset& preset) {
  return build_ttns_tree_rooted(preset.ttns_lattice, preset.ttns_root,
                                preset.strategy);
}

inline CostReport preset_ttns_report(const Preset& preset,
                                     const CostRule& rule = {}) {
  return ttns_total_report(build_preset_tree(preset), rule);
}

inline CostExponent preset_mps_exponent(const Preset& preset) {
  return mps_total_exponent(preset.mps_lattice, preset.mps_strategy);
}

/// One row of the summary table: MPS and TTNS total exponents per
/// geometry. The TTNS entry is an interval [floor, canonical] when an
/// analytic floor below the canonical value is known; otherwise both ends
/// coincide. The asterisk marks MPS strategies that replace a periodic x
/// axis by an infinite open one.
struct SummaryRow {
  std::string preset;
  std::string title;
  std::string pbc_label;
  int order = 1;
  CostExponent mps;
  bool mps_asterisk = false;
  Rational ttns_lo;
  Rational ttns_hi;

  bool interval() const { return ttns_lo != ttns_hi; }
};

inline std::vector<SummaryRow> summary_table(int hypercube_dim = 4) {
  const std::vector<std::string> order = {
      "2d-square",      "2d-cylinder",           "2d-long-cylinder",
      "2d-torus",       "3d-cube-obc",           "3d-cube-yz-pbc",
      "3d-long-cuboid-yz-pbc", "3d-cube-xyz-pbc", "hypercube"};
  std::vector<SummaryRow> rows;
  for (const std::string& name : order) {
    const Preset p = make_preset(name, hypercube_dim);
    SummaryRow row;
    row.preset = p.name;
    row.title = p.title;
    row.pbc_label = p.pbc_label;
    row.order = p.dim - 1;
    row.mps = preset_mps_exponent(p);
    row.mps_asterisk = p.mps_substituted;
    const CostReport ttns = preset_ttns_report(p);
    row.ttns_hi = ttns.total.coeff;
    row.ttns_lo = p.ttns_floor && *p.ttns_floor < row.ttns_hi ? *p.ttns_floor
                                                              : row.ttns_hi;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tncost
