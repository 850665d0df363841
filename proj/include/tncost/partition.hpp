#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tncost/geometry.hpp"
#include "tncost/rational.hpp"

namespace tncost {

enum class AxisPolicy {
  Alternate2D,       // x, y, x, y, ...
  Cyclic,            // x, y, z, ..., x, ...
  LongestAxisFirst,  // longest side of the node's region, ties to lowest axis
};

/// Recursive-bisection recipe for binary partition trees.
struct SplitStrategy {
  AxisPolicy axis_policy = AxisPolicy::Cyclic;
  /// Halve the long axis until all sides equal L before the cyclic phase.
  bool elongated_prefix = false;
  Rational cut_fraction = Rational(1, 2);
  int max_depth = 12;
  /// Nodes with boundary coefficient below this become leaves.
  Rational min_coeff = 0;
};

/// Node of a binary partition tree. Children are ordered with the
/// larger-area child first; equal areas break ties toward the child
/// containing the lexicographically smallest corner.
struct PartitionNode {
  Region region;
  AreaCoefficient area;
  /// Paper-style layer index: the two halves created by the top split sit
  /// at layer 0, their children at layer 1, etc. The root region (the
  /// whole system) sits above layer 0 at layer -1.
  int layer = -1;
  int first_child = -1;
  int second_child = -1;

  bool internal() const { return first_child >= 0; }
};

struct PartitionTree {
  LatticeSpec lattice;
  SplitStrategy strategy;
  std::vector<PartitionNode> nodes;  // nodes[0] is the root
  /// Number of long-axis halvings performed before the cyclic phase.
  int prefix_layers = 0;

  const PartitionNode& root() const { return nodes.front(); }
  bool empty() const { return nodes.empty(); }
};

/// One row of the canonical max-area descent: the two children created at
/// this layer, larger area first.
struct DescentRow {
  int layer = 0;
  AreaCoefficient area;          // |dA_n|
  AreaCoefficient sibling_area;  // |dA'_n|
};

namespace detail {

/// Lexicographic corner of a region (lo per axis, full span as 0).
inline std::vector<Rational> region_corner(const Region& r) {
  std::vector<Rational> c;
  c.reserve(r.intervals.size());
  for (const AxisInterval& iv : r.intervals) c.push_back(iv.full ? 0 : iv.lo);
  return c;
}

inline bool corner_less(const Region& a, const Region& b) {
  return region_corner(a) < region_corner(b);
}

inline std::size_t longest_axis(const Region& region,
                                const LatticeSpec& lattice) {
  std::size_t best = 0;
  Rational best_len = axis_length(region, 0, lattice);
  for (std::size_t a = 1; a < lattice.axes.size(); ++a) {
    const Rational len = axis_length(region, a, lattice);
    if (len > best_len) {
      best = a;
      best_len = len;
    }
  }
  return best;
}

}  // namespace detail

/// Builds the binary partition tree rooted at `root_region`. The root is
/// split recursively: the elongated prefix (if enabled) halves the longest
/// axis until all sides equal 1 (in units of L), then the axis policy
/// cycles starting from x with balanced cuts at cut_fraction.
///
/// All nodes are materialized, not only the canonical descent path: the
/// dominant cost can sit off that path.
inline PartitionTree build_ttns_tree_rooted(const LatticeSpec& lattice,
                                            const Region& root_region,
                                            const SplitStrategy& strategy) {
  lattice.validate();
  validate_region(root_region, lattice);
  if (!(strategy.cut_fraction > 0 && strategy.cut_fraction < 1))
    throw InputError("cut_fraction must lie in (0,1)");
  if (strategy.max_depth < 1) throw InputError("max_depth must be >= 1");

  const int d = lattice.dim();

  // Depth budget consumed by the elongated prefix, determined from the
  // root region: halve the longest side until all sides are equal.
  int prefix = 0;
  if (strategy.elongated_prefix) {
    std::vector<Rational> sides(d);
    Rational min_side = axis_length(root_region, 0, lattice);
    for (int a = 0; a < d; ++a) {
      sides[a] = axis_length(root_region, a, lattice);
      min_side = std::min(min_side, sides[a]);
    }
    for (int a = 0; a < d; ++a) {
      if (sides[a] == min_side) continue;
      const Rational ratio = sides[a] / min_side;
      if (!is_power_of_two(ratio))
        throw InputError(
            "elongated prefix requires the long side to be a power-of-two "
            "multiple of the short side, got ratio " +
            to_fraction_string(ratio));
      prefix += log2_exact(ratio);
    }
  }

  PartitionTree tree;
  tree.lattice = lattice;
  tree.strategy = strategy;
  tree.prefix_layers = prefix;

  const auto axis_for = [&](const Region& region, int depth) -> std::size_t {
    if (strategy.elongated_prefix && depth < prefix)
      return detail::longest_axis(region, lattice);
    const int phase = depth - (strategy.elongated_prefix ? prefix : 0);
    switch (strategy.axis_policy) {
      case AxisPolicy::Alternate2D:
        return static_cast<std::size_t>(phase % std::min(d, 2));
      case AxisPolicy::Cyclic:
        return static_cast<std::size_t>(phase % d);
      case AxisPolicy::LongestAxisFirst:
        return detail::longest_axis(region, lattice);
    }
    throw InputError("unknown axis policy");
  };

  const std::function<int(const Region&, int)> build = [&](const Region& region,
                                                           int depth) -> int {
    PartitionNode node;
    node.region = region;
    node.area = boundary_area_symbolic(region, lattice);
    node.layer = depth - 1;
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);

    const bool stop = depth >= strategy.max_depth ||
                      (strategy.min_coeff > 0 && depth > 0 &&
                       tree.nodes[index].area.coeff < strategy.min_coeff);
    if (stop) return index;

    const std::size_t axis = axis_for(region, depth);
    const Rational fraction =
        (strategy.elongated_prefix && depth < prefix) ? Rational(1, 2)
                                                      : strategy.cut_fraction;
    auto [low, high] = split_region(region, axis, fraction, lattice);
    const AreaCoefficient low_area = boundary_area_symbolic(low, lattice);
    const AreaCoefficient high_area = boundary_area_symbolic(high, lattice);
    bool low_first = low_area.coeff > high_area.coeff;
    if (low_area.coeff == high_area.coeff)
      low_first = detail::corner_less(low, high);
    const Region& first = low_first ? low : high;
    const Region& second = low_first ? high : low;
    const int first_index = build(first, depth + 1);
    const int second_index = build(second, depth + 1);
    tree.nodes[index].first_child = first_index;
    tree.nodes[index].second_child = second_index;
    return index;
  };

  build(root_region, 0);
  return tree;
}

/// Builds the partition tree for the whole system. Unbounded axes are
/// rejected here: the full span of an unbounded axis has no finite area.
inline PartitionTree build_ttns_tree(const LatticeSpec& lattice,
                                     const SplitStrategy& strategy) {
  lattice.validate();
  if (!lattice.all_finite())
    throw InputError(
        "cannot build a partition tree over the full span of an unbounded "
        "axis; root the tree at a finite window instead");
  return build_ttns_tree_rooted(lattice, Region::full(lattice), strategy);
}

/// Walks from the root, always descending into the larger-area child, and
/// emits both children's areas per layer. Row 0 is the top edge (the two
/// halves of the first split).
inline std::vector<DescentRow> descent_sequence(const PartitionTree& tree) {
  if (tree.empty()) throw InputError("descent over an empty tree");
  std::vector<DescentRow> rows;
  const PartitionNode* node = &tree.root();
  while (node->internal()) {
    const PartitionNode& first = tree.nodes[node->first_child];
    const PartitionNode& second = tree.nodes[node->second_child];
    rows.push_back({first.layer, first.area, second.area});
    node = &first;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Snake (boustrophedon) MPS site orderings.
// ---------------------------------------------------------------------------

/// Hamiltonian snake path over the finite lattice at scale L: axis 0 (x)
/// varies slowest; within each slice the remaining axes are traversed
/// boustrophedon, so consecutive sites are lattice-adjacent.
///
/// The order is a bijection {0..N-1} -> sites realized as a generator:
/// site(k) is computed on the fly, nothing is materialized.
class SiteOrdering {
 public:
  SiteOrdering(LatticeSpec lattice, std::int64_t L)
      : lattice_(std::move(lattice)), L_(L) {
    lattice_.validate();
    if (!lattice_.all_finite())
      throw InputError("site ordering requires finite axis extents");
    if (L < 2) throw InputError("site ordering requires L >= 2");
    sizes_.resize(lattice_.axes.size());
    count_ = 1;
    for (std::size_t a = 0; a < lattice_.axes.size(); ++a) {
      sizes_[a] = to_int64_exact(lattice_.axes[a].extent.multiple * L,
                                 "axis extent * L");
      if (sizes_[a] < 1) throw InputError("axis has no sites");
      count_ *= sizes_[a];
    }
  }

  const LatticeSpec& lattice() const { return lattice_; }
  std::int64_t scale() const { return L_; }
  std::int64_t size() const { return count_; }
  const std::vector<std::int64_t>& axis_sizes() const { return sizes_; }

  /// Coordinates of the k-th site on the path (0-based).
  std::vector<std::int64_t> site(std::int64_t k) const {
    if (k < 0 || k >= count_) throw InputError("site index out of range");
    const std::size_t d = sizes_.size();
    std::vector<std::int64_t> ticks(d);
    std::int64_t rest = k;
    for (std::size_t a = d; a-- > 0;) {
      ticks[a] = rest % sizes_[a];
      rest /= sizes_[a];
    }
    // Boustrophedon: axis a runs backward when the ticks of slower axes
    // sum to an odd value.
    std::vector<std::int64_t> coords(d);
    std::int64_t outer_sum = 0;
    for (std::size_t a = 0; a < d; ++a) {
      coords[a] = (outer_sum % 2 == 0) ? ticks[a] : sizes_[a] - 1 - ticks[a];
      outer_sum += ticks[a];
    }
    return coords;
  }

 private:
  LatticeSpec lattice_;
  std::int64_t L_ = 0;
  std::vector<std::int64_t> sizes_;
  std::int64_t count_ = 0;
};

inline SiteOrdering snake_ordering(const LatticeSpec& lattice,
                                   std::int64_t L) {
  return SiteOrdering(lattice, L);
}

struct MaxCutResult {
  std::int64_t max_edges = 0;
  std::int64_t argmax_prefix = 0;  // cut after this many sites
};

/// Maximizes, over all N-1 prefix cuts of the ordering, the number of
/// lattice edges crossing the bipartition {first i sites} vs rest.
/// Exhaustive enumeration; refuses orderings beyond the site budget.
inline MaxCutResult mps_max_cut(const SiteOrdering& ordering,
                                std::int64_t site_budget = 1 << 16) {
  const std::int64_t n = ordering.size();
  if (n > site_budget)
    throw InputError("site enumeration budget exceeded: " + std::to_string(n) +
                     " sites > " + std::to_string(site_budget));
  if (n < 2) throw InputError("need at least two sites to cut");

  const auto& sizes = ordering.axis_sizes();
  const std::size_t d = sizes.size();
  const auto flat = [&](const std::vector<std::int64_t>& c) {
    std::int64_t f = 0;
    for (std::size_t a = 0; a < d; ++a) f = f * sizes[a] + c[a];
    return f;
  };

  // Neighbor lists over the full lattice graph, wrap edges included.
  std::vector<std::vector<std::int64_t>> neighbors(n);
  std::vector<std::int64_t> c(d, 0);
  for (std::int64_t f = 0;; ++f) {
    for (std::size_t a = 0; a < d; ++a) {
      std::vector<std::int64_t> nb = c;
      if (c[a] + 1 < sizes[a]) {
        nb[a] = c[a] + 1;
      } else if (ordering.lattice().axes[a].bc == Bc::Periodic &&
                 sizes[a] >= 2) {
        nb[a] = 0;
      } else {
        continue;
      }
      const std::int64_t g = flat(nb);
      neighbors[f].push_back(g);
      neighbors[g].push_back(f);
    }
    std::size_t a = d;
    while (a-- > 0) {
      if (++c[a] < sizes[a]) break;
      c[a] = 0;
      if (a == 0) goto done;
    }
  }
done:

  std::vector<char> inside(n, 0);
  std::int64_t crossing = 0;
  MaxCutResult best;
  for (std::int64_t i = 0; i < n - 1; ++i) {
    const std::int64_t f = flat(ordering.site(i));
    for (const std::int64_t g : neighbors[f]) crossing += inside[g] ? -1 : 1;
    inside[f] = 1;
    if (crossing > best.max_edges) {
      best.max_edges = crossing;
      best.argmax_prefix = i + 1;
    }
  }
  return best;
}

/// Leading-order coefficient of the worst snake prefix cut: the interface
/// of any prefix bipartition is a slice of size ~ L^(D-1), coefficient 1.
inline AreaCoefficient mps_max_cut_coefficient(const LatticeSpec& lattice) {
  lattice.validate();
  return {1, lattice.dim() - 1};
}

}  // namespace tncost
