#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegan/error.hpp"
#include "omegan/region.hpp"

namespace omegan {

/// Thrown by make_partition; carries a region witnessing the defect.
class PartitionError : public Error {
 public:
  enum class Kind { EmptyCell, Overlap, CoverageGap, Excess };

  PartitionError(Kind kind, Region witness, const std::string& what)
      : Error(what), kind_(kind), witness_(std::move(witness)) {}

  Kind kind() const { return kind_; }
  const Region& witness() const { return witness_; }

 private:
  Kind kind_;
  Region witness_;
};

/// Finite partition of a carrier region.  Cells are kept normalized and in
/// ascending order of their lexicographically least points.
class Partition {
 public:
  Partition() = default;

  std::size_t dim() const { return carrier_.dim(); }
  const Region& carrier() const { return carrier_; }
  const std::vector<Region>& cells() const { return cells_; }
  const Region& cell(std::size_t i) const { return cells_[i]; }
  std::size_t size() const { return cells_.size(); }

  // Builds without validation; callers guarantee the partition invariants.
  static Partition assemble(Region carrier, std::vector<Region> cells) {
    Partition p;
    p.carrier_ = normalize(carrier);
    std::vector<std::pair<Point, Region>> keyed;
    keyed.reserve(cells.size());
    for (auto& c : cells) {
      require_same_dim(c.dim(), p.carrier_.dim(), "Partition");
      Region n = normalize(c);
      Point key = lex_min(n);
      keyed.emplace_back(std::move(key), std::move(n));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, c] : keyed) p.cells_.push_back(std::move(c));
    return p;
  }

 private:
  Region carrier_;
  std::vector<Region> cells_;
};

/// Throws PartitionError if cells are not nonempty, pairwise disjoint and
/// exactly covering the carrier.
inline void validate_partition(const Region& carrier, const std::vector<Region>& cells) {
  if (cells.empty()) {
    throw PartitionError(PartitionError::Kind::EmptyCell, carrier, "partition has no cells");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    require_same_dim(cells[i].dim(), carrier.dim(), "make_partition");
    if (is_empty(cells[i])) {
      throw PartitionError(PartitionError::Kind::EmptyCell, cells[i], "cell " + std::to_string(i) + " is empty");
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      Region common = intersect(cells[i], cells[j]);
      if (!is_empty(common)) {
        throw PartitionError(PartitionError::Kind::Overlap, common,
                             "cells " + std::to_string(i) + " and " + std::to_string(j) + " overlap at " +
                                 lex_min(common).str());
      }
    }
  }
  Region all_cells(carrier.dim());
  for (const auto& c : cells) all_cells = unite(all_cells, c);
  Region gap = subtract(carrier, all_cells);
  if (!is_empty(gap)) {
    throw PartitionError(PartitionError::Kind::CoverageGap, gap, "coverage gap at " + lex_min(gap).str());
  }
  Region excess = subtract(all_cells, carrier);
  if (!is_empty(excess)) {
    throw PartitionError(PartitionError::Kind::Excess, excess,
                         "cells leave the carrier at " + lex_min(excess).str());
  }
}

inline Partition make_partition(Region carrier, std::vector<Region> cells) {
  validate_partition(carrier, cells);
  return Partition::assemble(std::move(carrier), std::move(cells));
}

inline void validate(const Partition& p) { validate_partition(p.carrier(), p.cells()); }

/// { A n V | A in P, A n V nonempty }
inline Partition restrict(const Partition& p, const Region& v) {
  require_same_dim(p.dim(), v.dim(), "restrict");
  Region carrier = intersect(p.carrier(), v);
  if (is_empty(carrier)) throw PreconditionError("restrict: empty carrier");
  std::vector<Region> cells;
  for (const auto& c : p.cells()) {
    Region r = intersect(c, v);
    if (!is_empty(r)) cells.push_back(std::move(r));
  }
  return Partition::assemble(std::move(carrier), std::move(cells));
}

/// Nonempty atoms of the Boolean combinations of family inside carrier.
inline Partition induced(const Region& carrier, const std::vector<Region>& family) {
  if (is_empty(carrier)) throw PreconditionError("induced: empty carrier");
  std::vector<Region> cells{normalize(carrier)};
  for (const auto& f : family) {
    require_same_dim(f.dim(), carrier.dim(), "induced");
    std::vector<Region> next;
    next.reserve(cells.size() * 2);
    for (const auto& c : cells) {
      Region in = intersect(c, f);
      if (is_empty(in)) {
        next.push_back(c);
        continue;
      }
      Region out = subtract(c, f);
      next.push_back(normalize(in));
      if (!is_empty(out)) next.push_back(normalize(out));
    }
    cells = std::move(next);
  }
  return Partition::assemble(carrier, std::move(cells));
}

/// Every cell of fine lies inside a cell of coarse.
inline bool refines(const Partition& fine, const Partition& coarse) {
  if (!set_equal(fine.carrier(), coarse.carrier())) {
    throw PreconditionError("refines: carriers differ");
  }
  for (const auto& f : fine.cells()) {
    const Point probe = lex_min(f);
    bool found = false;
    for (const auto& c : coarse.cells()) {
      if (member(probe, c)) {
        found = is_subset(f, c);
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Index of the cell containing x.
inline std::size_t cell_of(const Partition& p, const Point& x) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (member(x, p.cell(i))) return i;
  }
  throw PreconditionError("cell_of: point " + x.str() + " is outside the carrier");
}

// ---------------------------------------------------------------------------
// Tuned partitions

struct TunedViolation {
  std::size_t from = 0;  // U
  std::size_t to = 0;    // V
  Point witness;         // least u in U that sees nothing in V
};

struct TunedCheck {
  std::optional<TunedViolation> violation;
  bool tuned() const { return !violation.has_value(); }
  explicit operator bool() const { return tuned(); }
};

namespace detail {

// Componentwise least lo over a region's boxes; cheap rejection filter.
inline std::vector<std::uint64_t> lo_corner(const Region& r) {
  std::vector<std::uint64_t> lo(r.dim(), ~0ULL);
  for (const auto& b : r.boxes()) {
    for (std::size_t i = 0; i < r.dim(); ++i) lo[i] = std::min(lo[i], b[i].lo());
  }
  return lo;
}

inline std::vector<Extent> hi_corner(const Region& r) {
  std::vector<Extent> hi(r.dim(), Extent(0));
  for (const auto& b : r.boxes()) {
    for (std::size_t i = 0; i < r.dim(); ++i) hi[i] = std::max(hi[i], b[i].hi());
  }
  return hi;
}

inline bool corners_disjoint(const std::vector<std::uint64_t>& lo, const std::vector<Extent>& hi) {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) return true;
  }
  return false;
}

}  // namespace detail

/// For every ordered pair of cells (U, V), U = V included: if some point of U
/// sees V then every point of U does.
inline TunedCheck is_tuned(const Partition& p, OrderKind order) {
  const std::size_t m = p.size();
  std::vector<Region> down;
  std::vector<bool> down_full;
  std::vector<std::vector<Extent>> down_hi;
  std::vector<std::vector<std::uint64_t>> cell_lo;
  down.reserve(m);
  for (const auto& c : p.cells()) {
    down.push_back(downset(c, order));
    // downset boxes start at the origin, so one unbounded box covers everything
    down_full.push_back(is_cofinal_in_space(down.back()));
    down_hi.push_back(detail::hi_corner(down.back()));
    cell_lo.push_back(detail::lo_corner(c));
  }
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (down_full[v] || is_empty(down[v])) continue;
      if (detail::corners_disjoint(cell_lo[u], down_hi[v])) continue;
      if (!intersects(p.cell(u), down[v])) continue;
      if (is_subset(p.cell(u), down[v])) continue;
      return {TunedViolation{u, v, lex_min(subtract(p.cell(u), down[v]))}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Monotone partitions

struct MonotoneViolation {
  enum class Kind { NotPrecofinal, JSetOrder };
  Kind kind = Kind::NotPrecofinal;
  std::size_t cell = 0;   // [x]
  std::size_t above = 0;  // [y]; equals cell for NotPrecofinal
  Point x;  // NotPrecofinal: least hull point not below the cell; JSetOrder: x <= y
  Point y;
};

struct MonotoneCheck {
  std::optional<MonotoneViolation> violation;
  bool monotone() const { return !violation.has_value(); }
  explicit operator bool() const { return monotone(); }
};

namespace detail {

// Some point of v above x (x must lie in downset(v, Reflexive)).
inline Point point_above(const Point& x, const Region& v) {
  for (const auto& b : v.boxes()) {
    bool below = true;
    for (std::size_t i = 0; i < x.dim() && below; ++i) below = x[i] <= b[i].hi();
    if (!below) continue;
    Point y = x;
    for (std::size_t i = 0; i < x.dim(); ++i) y[i] = std::max(x[i], b[i].lo());
    return y;
  }
  throw PreconditionError("point_above: no box above the point");
}

}  // namespace detail

/// Every cell cofinal in its hull, and J([x]) within J([y]) whenever x <= y.
/// Hulls and J-sets are taken in the ambient omega^dim.
inline MonotoneCheck is_monotone(const Partition& p) {
  const std::size_t m = p.size();
  std::vector<CoordSet> js;
  std::vector<Region> down;
  js.reserve(m);
  down.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Region& c = p.cell(i);
    down.push_back(downset(c, OrderKind::Reflexive));
    Region missing = subtract(hull(c), down.back());
    if (!is_empty(missing)) {
      Point x = lex_min(missing);
      return {MonotoneViolation{MonotoneViolation::Kind::NotPrecofinal, i, i, x, x}};
    }
    js.push_back(j_set(c));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (js[a].subset_of(js[b])) continue;
      Region below = intersect(p.cell(a), down[b]);
      if (is_empty(below)) continue;
      Point x = lex_min(below);
      Point y = detail::point_above(x, p.cell(b));
      return {MonotoneViolation{MonotoneViolation::Kind::JSetOrder, a, b, x, y}};
    }
  }
  return {};
}

}  // namespace omegan
