#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tncost/costmodel.hpp"
#include "tncost/geometry.hpp"
#include "tncost/partition.hpp"
#include "tncost/rational.hpp"

namespace tncost {

/// Search space for split optimization: cut fractions are restricted to
/// {1/g, ..., (g-1)/g} of the current interval, children must keep every
/// side at least 1/g (in units of L), and the tree is varied down to
/// max_depth. Below the varied depth, subtrees are completed with the
/// canonical balanced halving, so every reported exponent is achieved by
/// a concrete full decomposition.
struct SearchConfig {
  std::int64_t grid_denominator = 2;
  int max_depth = 6;
  bool balanced_only = false;
  /// Elementary split evaluations allowed before giving up.
  std::uint64_t budget = 200'000'000;
};

struct OptimizeResult {
  PartitionTree tree;  // varied part of the best decomposition
  CostExponent total;
  std::uint64_t splits_evaluated = 0;
  std::uint64_t states_expanded = 0;
};

namespace detail {

/// Congruence class of a box: per-axis length plus which of its two
/// boundaries are exposed interfaces. This is all the cost recursion can
/// see, so subtrees of congruent boxes have identical optimal values.
struct AxisState {
  Rational len;
  bool pbc_full = false;  // full span of a periodic axis
  bool exp_lo = false;
  bool exp_hi = false;
};

using BoxState = std::vector<AxisState>;

inline BoxState state_of(const Region& region, const LatticeSpec& lattice) {
  BoxState st(lattice.axes.size());
  for (std::size_t a = 0; a < lattice.axes.size(); ++a) {
    AxisState& ax = st[a];
    ax.len = axis_length(region, a, lattice);
    const AxisInterval& iv = region.intervals[a];
    const AxisSpec& spec = lattice.axes[a];
    if (spec.bc == Bc::Periodic) {
      ax.pbc_full = iv.full;
      ax.exp_lo = ax.exp_hi = !iv.full;
    } else if (iv.full) {
      ax.exp_lo = ax.exp_hi = false;
    } else if (!spec.extent.finite()) {
      ax.exp_lo = ax.exp_hi = true;
    } else {
      ax.exp_lo = iv.lo > 0;
      ax.exp_hi = iv.hi < spec.extent.multiple;
    }
  }
  return st;
}

inline Rational state_area(const BoxState& st) {
  Rational area = 0;
  for (std::size_t a = 0; a < st.size(); ++a) {
    const int faces = st[a].pbc_full
                          ? 0
                          : (st[a].exp_lo ? 1 : 0) + (st[a].exp_hi ? 1 : 0);
    if (!faces) continue;
    Rational cross = faces;
    for (std::size_t b = 0; b < st.size(); ++b)
      if (b != a) cross *= st[b].len;
    area += cross;
  }
  return area;
}

/// Upper bound on every edge area inside the box: the area it would have
/// with all faces exposed. Monotone under taking sub-boxes.
inline Rational state_area_ceiling(const BoxState& st) {
  Rational p = 0;
  for (std::size_t a = 0; a < st.size(); ++a) {
    Rational cross = 2;
    for (std::size_t b = 0; b < st.size(); ++b)
      if (b != a) cross *= st[b].len;
    p += cross;
  }
  return p;
}

inline std::pair<BoxState, BoxState> split_state(const BoxState& st,
                                                 std::size_t axis,
                                                 const Rational& fraction) {
  BoxState lo = st, hi = st;
  AxisState& l = lo[axis];
  AxisState& h = hi[axis];
  const Rational cut = st[axis].len * fraction;
  l.len = cut;
  h.len = st[axis].len - cut;
  if (st[axis].pbc_full) {
    // Splitting the full ring yields an arc and its complementary arc,
    // each with two interfaces.
    l.pbc_full = h.pbc_full = false;
    l.exp_lo = l.exp_hi = true;
    h.exp_lo = h.exp_hi = true;
  } else {
    l.exp_hi = true;
    h.exp_lo = true;
  }
  return {std::move(lo), std::move(hi)};
}

/// Canonical memo key: axes sorted by (len, exposure) with the exposure
/// pair unordered (reflection symmetry).
inline std::string state_key(const BoxState& st) {
  std::vector<std::string> parts;
  parts.reserve(st.size());
  for (const AxisState& ax : st) {
    int lo = ax.exp_lo ? 1 : 0, hi = ax.exp_hi ? 1 : 0;
    if (lo > hi) std::swap(lo, hi);
    parts.push_back(to_fraction_string(ax.len) + ":" +
                    (ax.pbc_full ? "F" : std::to_string(lo) +
                                             std::to_string(hi)));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const std::string& p : parts) key += p + "|";
  return key;
}

}  // namespace detail

class SplitOptimizer {
 public:
  SplitOptimizer(LatticeSpec lattice, Region root, SearchConfig config)
      : lattice_(std::move(lattice)),
        root_(std::move(root)),
        config_(std::move(config)) {
    lattice_.validate();
    validate_region(root_, lattice_);
    if (config_.grid_denominator < 2)
      throw InputError("grid denominator must be >= 2");
    if (config_.max_depth < 1) throw InputError("max_depth must be >= 1");
    for (std::size_t a = 0; a < lattice_.axes.size(); ++a)
      if (!lattice_.axes[a].extent.finite() && root_.intervals[a].full)
        throw InputError("optimization needs a finite root region");
  }

  OptimizeResult run() {
    using detail::BoxState;
    const BoxState top = detail::state_of(root_, lattice_);

    // Top split: the two halves hang off the top edge, which carries no
    // tensor of its own.
    Rational best = -1;
    std::size_t best_axis = 0;
    Rational best_fraction;
    for (const auto& [axis, fraction] : candidates(top)) {
      auto [c1, c2] = detail::split_state(top, axis, fraction);
      count_split();
      const Rational v1 = value(c1, config_.max_depth - 1);
      if (best >= 0 && v1 >= best) continue;
      const Rational v = std::max(v1, value(c2, config_.max_depth - 1));
      if (best < 0 || v < best) {
        best = v;
        best_axis = axis;
        best_fraction = fraction;
        best_so_far_ = best;
      }
    }
    if (best < 0) throw InputError("no legal top split under this grid");

    // Deterministic tie-break for the reported tree: smallest axis index,
    // then smallest fraction, among optimal candidates (memo is warm, so
    // this re-scan is cheap).
    for (const auto& [axis, fraction] : candidates(top)) {
      auto [c1, c2] = detail::split_state(top, axis, fraction);
      const Rational v =
          std::max(value(c1, config_.max_depth - 1),
                   value(c2, config_.max_depth - 1));
      if (v == best) {
        best_axis = axis;
        best_fraction = fraction;
        break;
      }
    }

    OptimizeResult result;
    result.total = {best, lattice_.dim() - 1};
    result.splits_evaluated = splits_;
    result.states_expanded = states_;
    result.tree = reconstruct(best_axis, best_fraction);
    return result;
  }

 private:
  using BoxState = detail::BoxState;

  /// Legal (axis, fraction) candidates, fractions ascending per axis.
  std::vector<std::pair<std::size_t, Rational>> candidates(
      const BoxState& st) const {
    std::vector<std::pair<std::size_t, Rational>> out;
    const std::int64_t g = config_.grid_denominator;
    const Rational min_side(1, g);
    for (std::size_t a = 0; a < st.size(); ++a) {
      if (config_.balanced_only) {
        if (st[a].len / 2 >= min_side)
          out.emplace_back(a, Rational(1, 2));
        continue;
      }
      for (std::int64_t j = 1; j < g; ++j) {
        const Rational f(j, g);
        if (st[a].len * f >= min_side && st[a].len * (1 - f) >= min_side)
          out.emplace_back(a, f);
      }
    }
    return out;
  }

  void count_split() {
    if (++splits_ > config_.budget)
      throw BudgetError("split search budget exceeded",
                        best_so_far_ >= 0 ? best_so_far_ : Rational(-1));
  }

  /// Minimal achievable max per-tensor exponent for decomposing a box,
  /// including the box's own splitting tensor. Depth-exhausted or
  /// unsplittable boxes fall back to the canonical balanced completion.
  Rational value(const BoxState& st, int remaining) {
    const std::string key = detail::state_key(st);
    const auto memo_key = std::make_pair(key, remaining);
    if (const auto it = value_memo_.find(memo_key); it != value_memo_.end())
      return it->second;
    ++states_;

    Rational result;
    const auto cands =
        remaining > 0 ? candidates(st)
                      : std::vector<std::pair<std::size_t, Rational>>{};
    if (cands.empty()) {
      result = balanced_completion_max(st);
    } else {
      const Rational p = detail::state_area(st);
      // Evaluate in ascending order of the immediate tensor exponent; once
      // that exponent reaches the best value found, no later candidate can
      // improve on it.
      std::vector<std::pair<Rational, std::size_t>> ordered;
      std::vector<std::pair<BoxState, BoxState>> children;
      ordered.reserve(cands.size());
      children.reserve(cands.size());
      for (std::size_t i = 0; i < cands.size(); ++i) {
        auto split = detail::split_state(st, cands[i].first, cands[i].second);
        count_split();
        const Rational f = ttns_tensor_exponent(
            p, detail::state_area(split.first),
            detail::state_area(split.second));
        ordered.emplace_back(f, i);
        children.push_back(std::move(split));
      }
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const auto& a, const auto& b) {
                         return a.first < b.first;
                       });
      Rational best = -1;
      for (const auto& [f, i] : ordered) {
        if (best >= 0 && f >= best) break;
        Rational v = std::max(f, value(children[i].first, remaining - 1));
        if (best >= 0 && v >= best) continue;
        v = std::max(v, value(children[i].second, remaining - 1));
        if (best < 0 || v < best) best = v;
      }
      result = best;
    }
    value_memo_.emplace(memo_key, result);
    return result;
  }

  /// Exact maximum tensor exponent of the canonical completion: balanced
  /// halvings of the longest axis. The recursion stops once four times
  /// the all-faces-exposed area (an upper bound on any remaining tensor)
  /// is negligible; that bound is returned for the tail.
  Rational balanced_completion_max(const BoxState& st) {
    const std::string key = detail::state_key(st);
    if (const auto it = balanced_memo_.find(key); it != balanced_memo_.end())
      return it->second;
    const Rational ceiling = detail::state_area_ceiling(st);
    Rational result;
    if (ceiling <= Rational(1, 1024)) {
      result = 4 * ceiling;
    } else {
      std::size_t axis = 0;
      for (std::size_t a = 1; a < st.size(); ++a)
        if (st[a].len > st[axis].len) axis = a;
      auto [c1, c2] = detail::split_state(st, axis, Rational(1, 2));
      count_split();
      const Rational f =
          ttns_tensor_exponent(detail::state_area(st), detail::state_area(c1),
                               detail::state_area(c2));
      result = std::max({f, balanced_completion_max(c1),
                         balanced_completion_max(c2)});
    }
    balanced_memo_.emplace(key, result);
    return result;
  }

  /// Materializes the varied part of the optimal tree as concrete regions,
  /// choosing the smallest (axis, fraction) among optimal splits per node.
  PartitionTree reconstruct(std::size_t top_axis,
                            const Rational& top_fraction) {
    PartitionTree tree;
    tree.lattice = lattice_;
    tree.strategy.max_depth = config_.max_depth;
    tree.strategy.cut_fraction = top_fraction;

    const std::function<int(const Region&, int)> grow =
        [&](const Region& region, int depth) -> int {
      PartitionNode node;
      node.region = region;
      node.area = boundary_area_symbolic(region, lattice_);
      node.layer = depth - 1;
      const int index = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(node);

      const BoxState st = detail::state_of(region, lattice_);
      const int remaining = config_.max_depth - depth;
      std::optional<std::pair<std::size_t, Rational>> choice;
      if (depth == 0) {
        choice = {{top_axis, top_fraction}};
      } else if (remaining > 0) {
        const Rational target = value(st, remaining);
        const Rational p = detail::state_area(st);
        for (const auto& [axis, fraction] : candidates(st)) {
          auto [c1, c2] = detail::split_state(st, axis, fraction);
          const Rational f = ttns_tensor_exponent(p, detail::state_area(c1),
                                                  detail::state_area(c2));
          if (f > target) continue;
          const Rational v =
              std::max({f, value(c1, remaining - 1), value(c2, remaining - 1)});
          if (v == target) {
            choice = {{axis, fraction}};
            break;
          }
        }
      }
      if (!choice) return index;

      auto [low, high] =
          split_region(region, choice->first, choice->second, lattice_);
      const AreaCoefficient la = boundary_area_symbolic(low, lattice_);
      const AreaCoefficient ha = boundary_area_symbolic(high, lattice_);
      bool low_first = la.coeff > ha.coeff;
      if (la.coeff == ha.coeff) low_first = detail::corner_less(low, high);
      const int first = grow(low_first ? low : high, depth + 1);
      const int second = grow(low_first ? high : low, depth + 1);
      tree.nodes[index].first_child = first;
      tree.nodes[index].second_child = second;
      return index;
    };
    grow(root_, 0);
    return tree;
  }

  LatticeSpec lattice_;
  Region root_;
  SearchConfig config_;
  std::map<std::pair<std::string, int>, Rational> value_memo_;
  std::unordered_map<std::string, Rational> balanced_memo_;
  std::uint64_t splits_ = 0;
  std::uint64_t states_ = 0;
  Rational best_so_far_ = -1;
};

/// Searches split axes and cut fractions over the whole system.
inline OptimizeResult optimize_splits(const LatticeSpec& lattice,
                                      const SearchConfig& config) {
  lattice.validate();
  if (!lattice.all_finite())
    throw InputError("optimization requires finite axes (or a finite root)");
  return SplitOptimizer(lattice, Region::full(lattice), config).run();
}

inline OptimizeResult optimize_splits_rooted(const LatticeSpec& lattice,
                                             const Region& root,
                                             const SearchConfig& config) {
  return SplitOptimizer(lattice, root, config).run();
}

/// Optimal-exponent trend over a family of grid resolutions, with the gap
/// to an analytic floor where one is known.
struct GapReport {
  std::vector<std::pair<std::int64_t, Rational>> optima;  // (g, exponent)
  bool non_increasing = true;
  std::optional<Rational> floor;
  std::optional<Rational> min_gap;  // min exponent minus floor
  bool floor_respected = true;
};

inline GapReport lower_bound_gap(
    const std::vector<std::pair<std::int64_t, Rational>>& results,
    const std::optional<Rational>& floor = std::nullopt) {
  if (results.size() < 2)
    throw InputError("gap report needs at least two grid resolutions");
  GapReport report;
  report.optima = results;
  report.floor = floor;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].first <= results[i - 1].first)
      throw InputError("grid resolutions must be strictly increasing");
    if (results[i].second > results[i - 1].second)
      report.non_increasing = false;
  }
  if (floor) {
    Rational best = results.front().second;
    for (const auto& [g, v] : results) {
      best = std::min(best, v);
      if (v < *floor) report.floor_respected = false;
    }
    report.min_gap = best - *floor;
  }
  return report;
}

}  // namespace tncost
