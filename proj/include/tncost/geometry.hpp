#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tncost/rational.hpp"

namespace tncost {

enum class Bc { Open, Periodic };

/// Per-axis extent. Finite axes have length multiple*L (multiple >= 1,
/// in units of the reference scale L); unbounded axes extend indefinitely
/// in both directions and are only allowed with open boundaries.
struct AxisExtent {
  enum class Kind { Finite, Unbounded };
  Kind kind = Kind::Finite;
  Rational multiple = 1;  // meaningful for Finite only

  static AxisExtent unit() { return {Kind::Finite, 1}; }
  static AxisExtent multiple_of(Rational m) { return {Kind::Finite, std::move(m)}; }
  static AxisExtent unbounded() { return {Kind::Unbounded, 0}; }

  bool finite() const { return kind == Kind::Finite; }
};

struct AxisSpec {
  AxisExtent extent;
  Bc bc = Bc::Open;
};

/// Hypercubic lattice in D >= 1 dimensions, one AxisSpec per axis.
/// Axis 0 plays the role of x (the "long"/slow direction), axis 1 is y,
/// axis 2 is z, and so on.
struct LatticeSpec {
  std::vector<AxisSpec> axes;

  int dim() const { return static_cast<int>(axes.size()); }

  void validate() const {
    if (axes.empty()) throw InputError("lattice needs at least one axis");
    for (const AxisSpec& a : axes) {
      if (a.extent.finite()) {
        if (a.extent.multiple < 1)
          throw InputError("finite axis multiple must be >= 1, got " +
                           to_fraction_string(a.extent.multiple));
      } else if (a.bc != Bc::Open) {
        throw InputError("unbounded axis requires open boundaries");
      }
    }
  }

  bool all_finite() const {
    return std::all_of(axes.begin(), axes.end(),
                       [](const AxisSpec& a) { return a.extent.finite(); });
  }
};

/// One axis of a region: either the full span of the axis or a closed
/// interval [lo, hi] in units of L. On a periodic axis a proper interval
/// denotes a contiguous arc.
struct AxisInterval {
  bool full = true;
  Rational lo = 0;
  Rational hi = 0;

  static AxisInterval full_span() { return {}; }
  static AxisInterval between(Rational lo, Rational hi) {
    return {false, std::move(lo), std::move(hi)};
  }
};

/// Axis-aligned box subsystem A of a bipartition A|B. Endpoints are exact
/// rationals in units of L.
struct Region {
  std::vector<AxisInterval> intervals;

  static Region full(const LatticeSpec& lattice) {
    Region r;
    r.intervals.assign(lattice.axes.size(), AxisInterval::full_span());
    return r;
  }

  bool is_full() const {
    return std::all_of(intervals.begin(), intervals.end(),
                       [](const AxisInterval& iv) { return iv.full; });
  }
};

/// Leading-order boundary size: |boundary of A| ~ coeff * L^order with
/// order = D-1. The coefficient is exact.
struct AreaCoefficient {
  Rational coeff = 0;
  int order = 0;

  friend bool operator==(const AreaCoefficient& a, const AreaCoefficient& b) {
    return a.coeff == b.coeff && a.order == b.order;
  }
};

namespace detail {

inline void check_axis_index(const LatticeSpec& lattice, std::size_t axis) {
  if (axis >= lattice.axes.size())
    throw InputError("axis index " + std::to_string(axis) +
                     " out of range for dimension " +
                     std::to_string(lattice.dim()));
}

}  // namespace detail

inline void validate_region(const Region& region, const LatticeSpec& lattice) {
  lattice.validate();
  if (region.intervals.size() != lattice.axes.size())
    throw InputError("region/lattice dimension mismatch");
  for (std::size_t a = 0; a < lattice.axes.size(); ++a) {
    const AxisInterval& iv = region.intervals[a];
    if (iv.full) continue;
    if (!(iv.lo < iv.hi))
      throw InputError("empty interval on axis " + std::to_string(a));
    if (iv.lo < 0) throw InputError("negative interval endpoint");
    const AxisSpec& ax = lattice.axes[a];
    if (ax.extent.finite() && iv.hi > ax.extent.multiple)
      throw InputError("interval exceeds axis extent on axis " +
                       std::to_string(a));
  }
}

/// Length of the region along one axis, in units of L.
/// Full span of an unbounded axis has no finite length.
inline Rational axis_length(const Region& region, std::size_t axis,
                            const LatticeSpec& lattice) {
  detail::check_axis_index(lattice, axis);
  const AxisInterval& iv = region.intervals[axis];
  if (!iv.full) return iv.hi - iv.lo;
  const AxisSpec& ax = lattice.axes[axis];
  if (!ax.extent.finite())
    throw InputError("full span of an unbounded axis has undefined length");
  return ax.extent.multiple;
}

/// Number of exposed faces of the region perpendicular to `axis`:
/// interfaces separating the region from the rest of the system.
///   periodic axis: 0 for full span, 2 for a proper arc;
///   open finite axis: endpoints strictly inside (0, multiple) count;
///   unbounded axis: both endpoints of a proper interval are interior.
inline int exposed_faces(const Region& region, std::size_t axis,
                         const LatticeSpec& lattice) {
  detail::check_axis_index(lattice, axis);
  const AxisInterval& iv = region.intervals[axis];
  const AxisSpec& ax = lattice.axes[axis];
  if (ax.bc == Bc::Periodic) return iv.full ? 0 : 2;
  if (iv.full) return 0;
  if (!ax.extent.finite()) return 2;
  int faces = 0;
  if (iv.lo > 0) ++faces;
  if (iv.hi < ax.extent.multiple) ++faces;
  return faces;
}

/// Area of one face perpendicular to `axis`: the product of the region's
/// lengths along all other axes, in units of L^(D-1).
inline Rational face_cross_section(const Region& region, std::size_t axis,
                                   const LatticeSpec& lattice) {
  Rational prod = 1;
  for (std::size_t b = 0; b < lattice.axes.size(); ++b)
    if (b != axis) prod *= axis_length(region, b, lattice);
  return prod;
}

/// Exact leading-order boundary area of the region:
///   coeff = sum over axes of exposed_faces(axis) * cross_section(axis).
/// Generalizes the closed-box formula 2(ly*lz + lx*lz + lx*ly) to arbitrary
/// per-face exposure under open/periodic boundaries.
inline AreaCoefficient boundary_area_symbolic(const Region& region,
                                              const LatticeSpec& lattice) {
  validate_region(region, lattice);
  int unbounded_axes = 0;
  for (std::size_t a = 0; a < lattice.axes.size(); ++a) {
    if (lattice.axes[a].extent.finite()) continue;
    ++unbounded_axes;
    if (region.intervals[a].full)
      throw InputError(
          "area undefined: region spans an unbounded axis in full");
  }
  if (unbounded_axes > 1)
    throw InputError("at most one unbounded axis is supported");
  Rational coeff = 0;
  for (std::size_t a = 0; a < lattice.axes.size(); ++a) {
    const int faces = exposed_faces(region, a, lattice);
    if (faces == 0) continue;
    coeff += faces * face_cross_section(region, a, lattice);
  }
  return {coeff, lattice.dim() - 1};
}

/// Splits the region along `axis` at lo + fraction*(hi - lo), reduced to
/// lowest terms. The full span of a periodic axis splits into an arc and
/// its complementary arc (the cut introduces two interfaces); the full
/// span of an open finite axis is treated as the interval [0, multiple].
/// Children are returned in (low side, high side) order.
inline std::pair<Region, Region> split_region(const Region& region,
                                              std::size_t axis,
                                              const Rational& fraction,
                                              const LatticeSpec& lattice) {
  validate_region(region, lattice);
  detail::check_axis_index(lattice, axis);
  if (!(fraction > 0 && fraction < 1))
    throw InputError("cut fraction must lie strictly inside (0,1), got " +
                     to_fraction_string(fraction));
  const AxisInterval& iv = region.intervals[axis];
  Rational lo, hi;
  if (iv.full) {
    const AxisSpec& ax = lattice.axes[axis];
    if (!ax.extent.finite())
      throw InputError("cannot split the full span of an unbounded axis");
    lo = 0;
    hi = ax.extent.multiple;
  } else {
    lo = iv.lo;
    hi = iv.hi;
  }
  const Rational cut = lo + fraction * (hi - lo);
  if (!(cut > lo && cut < hi)) throw InputError("split produces empty child");
  Region low = region, high = region;
  low.intervals[axis] = AxisInterval::between(lo, cut);
  high.intervals[axis] = AxisInterval::between(cut, hi);
  return {std::move(low), std::move(high)};
}

// ---------------------------------------------------------------------------
// Numeric oracle: brute-force edge counting on the discrete lattice.
// ---------------------------------------------------------------------------

namespace detail {

/// Scaled integer bounds of a region interval on one axis: sites with
/// coordinate c satisfy lo*L <= c < hi*L.
struct SiteRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // exclusive
  bool full = false;
};

inline SiteRange site_range(const AxisInterval& iv, const AxisSpec& ax,
                            std::int64_t L) {
  SiteRange r;
  if (iv.full) {
    r.full = true;
    r.lo = 0;
    r.hi = to_int64_exact(ax.extent.multiple * L, "axis extent * L");
    return r;
  }
  r.lo = to_int64_exact(iv.lo * L, "region endpoint * L");
  r.hi = to_int64_exact(iv.hi * L, "region endpoint * L");
  return r;
}

}  // namespace detail

/// Counts nearest-neighbor lattice edges with exactly one endpoint inside
/// the region, on the finite lattice with scale L (periodic axes include
/// the wrap-around edge). This is the independent oracle for
/// boundary_area_symbolic: count == coeff * L^(D-1) whenever all scaled
/// endpoints are integers.
inline std::int64_t boundary_area_numeric(const Region& region,
                                          const LatticeSpec& lattice,
                                          std::int64_t L) {
  validate_region(region, lattice);
  if (L < 1) throw InputError("L must be >= 1");
  if (!lattice.all_finite())
    throw InputError("numeric area requires finite axis extents");
  const int d = lattice.dim();
  std::vector<std::int64_t> n(d);
  std::vector<detail::SiteRange> range(d);
  for (int a = 0; a < d; ++a) {
    n[a] = to_int64_exact(lattice.axes[a].extent.multiple * L,
                          "axis extent * L");
    if (n[a] < 1) throw InputError("axis has no sites at this L");
    range[a] = detail::site_range(region.intervals[a], lattice.axes[a], L);
  }

  const auto inside_axis = [&](int a, std::int64_t c) {
    return range[a].full || (c >= range[a].lo && c < range[a].hi);
  };

  std::vector<std::int64_t> site(d, 0);
  std::int64_t crossings = 0;
  for (;;) {
    bool in = true;
    for (int a = 0; a < d && in; ++a) in = inside_axis(a, site[a]);
    // Enumerate each edge once, from its lower endpoint along +a. A ring of
    // two sites carries a double bond, matching the two symbolic interfaces.
    for (int a = 0; a < d; ++a) {
      std::int64_t neighbor;
      if (site[a] + 1 < n[a]) {
        neighbor = site[a] + 1;
      } else if (lattice.axes[a].bc == Bc::Periodic && n[a] >= 2) {
        neighbor = 0;  // wrap edge (n-1, 0)
      } else {
        continue;
      }
      bool neighbor_in = inside_axis(a, neighbor);
      for (int b = 0; b < d && neighbor_in; ++b)
        if (b != a) neighbor_in = inside_axis(b, site[b]);
      if (in != neighbor_in) ++crossings;
    }
    int a = 0;
    while (a < d && ++site[a] == n[a]) site[a++] = 0;
    if (a == d) break;
  }
  return crossings;
}

inline std::string bc_string(Bc bc) {
  return bc == Bc::Periodic ? "pbc" : "obc";
}

inline std::string describe(const LatticeSpec& lattice) {
  std::string s = std::to_string(lattice.dim()) + "D [";
  for (std::size_t a = 0; a < lattice.axes.size(); ++a) {
    if (a) s += " x ";
    const AxisSpec& ax = lattice.axes[a];
    s += ax.extent.finite() ? to_fraction_string(ax.extent.multiple) + "L"
                            : "inf";
    s += "(" + bc_string(ax.bc) + ")";
  }
  return s + "]";
}

}  // namespace tncost
