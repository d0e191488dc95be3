#pragma once

// Definable subsets of omega^n: finite unions of products of intervals
// [lo, hi] with hi possibly unbounded.  Every set the refinement machinery
// produces from such inputs stays inside this class.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegan/error.hpp"

namespace omegan {

/// Upper bound of an interval: a natural number or OMEGA (unbounded).
class Extent {
 public:
  constexpr Extent() = default;
  constexpr Extent(std::uint64_t v) : value_(v) {}  // NOLINT: implicit from naturals

  static constexpr Extent omega() {
    Extent e;
    e.omega_ = true;
    return e;
  }

  constexpr bool is_omega() const { return omega_; }
  constexpr bool is_finite() const { return !omega_; }

  std::uint64_t value() const {
    if (omega_) throw PreconditionError("Extent::value() on OMEGA");
    return value_;
  }

  // OMEGA sorts after every finite value.
  constexpr auto operator<=>(const Extent&) const = default;

  friend constexpr bool operator<(std::uint64_t k, const Extent& e) { return e.omega_ || k < e.value_; }
  friend constexpr bool operator<=(std::uint64_t k, const Extent& e) { return e.omega_ || k <= e.value_; }

 private:
  // declaration order matters for the defaulted comparison
  bool omega_ = false;
  std::uint64_t value_ = 0;
};

inline constexpr Extent OMEGA = Extent::omega();

/// Nonempty set { k | lo <= k <= hi } (hi may be OMEGA).
class Interval {
 public:
  Interval() = default;
  Interval(std::uint64_t lo, Extent hi) : lo_(lo), hi_(hi) {
    if (hi.is_finite() && lo > hi.value()) {
      throw PreconditionError("interval [" + std::to_string(lo) + "," + std::to_string(hi.value()) + "] is empty");
    }
  }

  static Interval single(std::uint64_t k) { return {k, k}; }
  static Interval from(std::uint64_t lo) { return {lo, OMEGA}; }
  static Interval all() { return {0, OMEGA}; }

  std::uint64_t lo() const { return lo_; }
  Extent hi() const { return hi_; }

  bool contains(std::uint64_t k) const { return lo_ <= k && k <= hi_; }
  bool is_singleton() const { return hi_.is_finite() && hi_.value() == lo_; }
  bool is_unbounded() const { return hi_.is_omega(); }
  bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }

  std::optional<Interval> intersect(const Interval& o) const {
    const std::uint64_t lo = std::max(lo_, o.lo_);
    const Extent hi = std::min(hi_, o.hi_);
    if (hi.is_finite() && lo > hi.value()) return std::nullopt;
    return Interval(lo, hi);
  }

  // Overlapping or adjacent, so the union is again an interval.
  bool touches(const Interval& o) const {
    const Interval& a = lo_ <= o.lo_ ? *this : o;
    const Interval& b = lo_ <= o.lo_ ? o : *this;
    return a.hi_.is_omega() || b.lo_ == 0 || b.lo_ - 1 <= a.hi_.value();
  }

  Interval hull_with(const Interval& o) const { return {std::min(lo_, o.lo_), std::max(hi_, o.hi_)}; }

  auto operator<=>(const Interval&) const = default;

 private:
  std::uint64_t lo_ = 0;
  Extent hi_ = OMEGA;
};

/// A point of omega^n.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<std::uint64_t> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<std::uint64_t> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  std::uint64_t operator[](std::size_t i) const { return coords_[i]; }
  std::uint64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::uint64_t>& coords() const { return coords_; }

  auto operator<=>(const Point&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<std::uint64_t> coords_;
};

/// REFLEXIVE is the direct power of <=, STRICT the direct power of <.
enum class OrderKind { Reflexive, Strict };

inline bool related(const Point& x, const Point& y, OrderKind order) {
  require_same_dim(x.dim(), y.dim(), "related");
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (order == OrderKind::Reflexive ? x[i] > y[i] : x[i] >= y[i]) return false;
  }
  return true;
}

/// Subset of {0, ..., dim-1}; dimensions are limited to 64.
class CoordSet {
 public:
  constexpr CoordSet() = default;
  constexpr explicit CoordSet(std::uint64_t bits) : bits_(bits) {}
  CoordSet(std::initializer_list<std::size_t> coords) {
    for (auto c : coords) insert(c);
  }

  static CoordSet all(std::size_t dim) { return CoordSet(dim >= 64 ? ~0ULL : (1ULL << dim) - 1); }

  void insert(std::size_t i) { bits_ |= 1ULL << i; }
  bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  bool subset_of(CoordSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool proper_subset_of(CoordSet o) const { return subset_of(o) && bits_ != o.bits_; }
  CoordSet complement(std::size_t dim) const { return CoordSet(~bits_ & all(dim).bits_); }
  std::uint64_t bits() const { return bits_; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  auto operator<=>(const CoordSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Product of dim intervals; never empty.  Dimension 0 is the single empty tuple.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> intervals) : iv_(std::move(intervals)) {}
  Box(std::initializer_list<Interval> intervals) : iv_(intervals) {}

  static Box full(std::size_t dim) { return Box(std::vector<Interval>(dim, Interval::all())); }
  static Box point(const Point& p) {
    std::vector<Interval> iv;
    iv.reserve(p.dim());
    for (auto c : p.coords()) iv.push_back(Interval::single(c));
    return Box(std::move(iv));
  }

  std::size_t dim() const { return iv_.size(); }
  const Interval& operator[](std::size_t i) const { return iv_[i]; }
  Interval& operator[](std::size_t i) { return iv_[i]; }
  const std::vector<Interval>& intervals() const { return iv_; }

  bool contains(const Point& p) const {
    for (std::size_t i = 0; i < iv_.size(); ++i) {
      if (!iv_[i].contains(p[i])) return false;
    }
    return true;
  }

  bool subset_of(const Box& o) const {
    for (std::size_t i = 0; i < iv_.size(); ++i) {
      if (!iv_[i].subset_of(o.iv_[i])) return false;
    }
    return true;
  }

  std::optional<Box> intersect(const Box& o) const {
    std::vector<Interval> out;
    out.reserve(iv_.size());
    for (std::size_t i = 0; i < iv_.size(); ++i) {
      auto r = iv_[i].intersect(o.iv_[i]);
      if (!r) return std::nullopt;
      out.push_back(*r);
    }
    return Box(std::move(out));
  }

  // Lexicographically least member.
  Point lo_point() const {
    std::vector<std::uint64_t> c;
    c.reserve(iv_.size());
    for (const auto& iv : iv_) c.push_back(iv.lo());
    return Point(std::move(c));
  }

  bool unbounded_everywhere() const {
    return std::all_of(iv_.begin(), iv_.end(), [](const Interval& iv) { return iv.is_unbounded(); });
  }

  // Normalized order: by the lo vector, then by the hi vector (OMEGA last).
  friend bool operator<(const Box& a, const Box& b) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a[i].lo() != b[i].lo()) return a[i].lo() < b[i].lo();
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a[i].hi() != b[i].hi()) return a[i].hi() < b[i].hi();
    }
    return false;
  }
  friend bool operator==(const Box& a, const Box& b) { return a.iv_ == b.iv_; }

 private:
  std::vector<Interval> iv_;
};

/// Finite union of boxes.  Not canonical: compare with set_equal().
class Region {
 public:
  Region() = default;
  explicit Region(std::size_t dim) : dim_(dim) {}
  Region(std::size_t dim, std::vector<Box> boxes) : dim_(dim), boxes_(std::move(boxes)) {
    for (const auto& b : boxes_) require_same_dim(b.dim(), dim_, "Region");
  }

  static Region empty_set(std::size_t dim) { return Region(dim); }
  static Region full(std::size_t dim) { return Region(dim, {Box::full(dim)}); }
  static Region of(Box b) {
    const auto d = b.dim();
    return Region(d, {std::move(b)});
  }
  static Region point(const Point& p) { return of(Box::point(p)); }
  static Region points(std::size_t dim, std::initializer_list<Point> pts) {
    Region r(dim);
    for (const auto& p : pts) r.add(Box::point(p));
    return r;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  void add(Box b) {
    require_same_dim(b.dim(), dim_, "Region::add");
    boxes_.push_back(std::move(b));
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Box> boxes_;
};

// ---------------------------------------------------------------------------
// Boolean structure

inline bool is_empty(const Region& r) { return r.empty(); }

inline bool member(const Point& p, const Region& r) {
  require_same_dim(p.dim(), r.dim(), "member");
  return std::any_of(r.boxes().begin(), r.boxes().end(), [&](const Box& b) { return b.contains(p); });
}

inline Region unite(const Region& a, const Region& b) {
  require_same_dim(a.dim(), b.dim(), "unite");
  std::vector<Box> boxes = a.boxes();
  boxes.insert(boxes.end(), b.boxes().begin(), b.boxes().end());
  return Region(a.dim(), std::move(boxes));
}

inline Region intersect(const Region& a, const Region& b) {
  require_same_dim(a.dim(), b.dim(), "intersect");
  Region out(a.dim());
  for (const auto& x : a.boxes()) {
    for (const auto& y : b.boxes()) {
      if (auto z = x.intersect(y)) out.add(std::move(*z));
    }
  }
  return out;
}

namespace detail {

// a \ b as pairwise disjoint boxes, at most 2*dim of them.
inline void subtract_box(const Box& a, const Box& b, std::vector<Box>& out) {
  auto common = a.intersect(b);
  if (!common) {
    out.push_back(a);
    return;
  }
  Box rest = a;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Interval ai = rest[i];
    const Interval bi = b[i];
    if (ai.lo() < bi.lo()) {
      Box piece = rest;
      piece[i] = Interval(ai.lo(), bi.lo() - 1);
      out.push_back(std::move(piece));
    }
    if (bi.hi().is_finite() && bi.hi() < ai.hi()) {
      Box piece = rest;
      piece[i] = Interval(checked_add(bi.hi().value(), 1), ai.hi());
      out.push_back(std::move(piece));
    }
    rest[i] = (*common)[i];
  }
}

inline std::vector<Box> subtract_boxes(std::vector<Box> from, const Box& b) {
  std::vector<Box> out;
  out.reserve(from.size());
  for (const auto& a : from) subtract_box(a, b, out);
  return out;
}

inline bool box_covered(const Box& a, const std::vector<Box>& cover) {
  for (const auto& c : cover) {
    if (a.subset_of(c)) return true;
  }
  std::vector<Box> rest{a};
  for (const auto& c : cover) {
    rest = subtract_boxes(std::move(rest), c);
    if (rest.empty()) return true;
  }
  return rest.empty();
}

}  // namespace detail

inline Region subtract(const Region& a, const Region& b) {
  require_same_dim(a.dim(), b.dim(), "subtract");
  std::vector<Box> rest = a.boxes();
  for (const auto& y : b.boxes()) {
    if (rest.empty()) break;
    rest = detail::subtract_boxes(std::move(rest), y);
  }
  return Region(a.dim(), std::move(rest));
}

/// Complement within omega^dim.
inline Region complement(const Region& a) { return subtract(Region::full(a.dim()), a); }

inline bool is_subset(const Region& a, const Region& b) {
  require_same_dim(a.dim(), b.dim(), "is_subset");
  return std::all_of(a.boxes().begin(), a.boxes().end(),
                     [&](const Box& x) { return detail::box_covered(x, b.boxes()); });
}

inline bool set_equal(const Region& a, const Region& b) { return is_subset(a, b) && is_subset(b, a); }

inline bool intersects(const Region& a, const Region& b) {
  require_same_dim(a.dim(), b.dim(), "intersects");
  for (const auto& x : a.boxes()) {
    for (const auto& y : b.boxes()) {
      if (x.intersect(y)) return true;
    }
  }
  return false;
}

/// Lexicographically least point; the region must be nonempty.
inline Point lex_min(const Region& r) {
  if (r.empty()) throw PreconditionError("lex_min of the empty region");
  Point best = r.boxes().front().lo_point();
  for (const auto& b : r.boxes()) best = std::min(best, b.lo_point());
  return best;
}

/// Drops subsumed boxes, merges boxes whose union is a box, and sorts.
/// Semantics are preserved; the result is deterministic for a given input.
inline Region normalize(const Region& r) {
  std::vector<Box> boxes = r.boxes();
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(boxes.begin(), boxes.end());
    boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());

    std::vector<bool> dead(boxes.size(), false);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for (std::size_t j = 0; j < boxes.size() && !dead[i]; ++j) {
        if (i != j && !dead[j] && boxes[i].subset_of(boxes[j])) dead[i] = true;
      }
    }
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (dead[i]) continue;
      for (std::size_t j = i + 1; j < boxes.size(); ++j) {
        if (dead[j]) continue;
        std::size_t diff = 0;
        std::size_t where = 0;
        for (std::size_t k = 0; k < r.dim() && diff < 2; ++k) {
          if (boxes[i][k] != boxes[j][k]) {
            ++diff;
            where = k;
          }
        }
        if (diff == 1 && boxes[i][where].touches(boxes[j][where])) {
          boxes[i][where] = boxes[i][where].hull_with(boxes[j][where]);
          dead[j] = true;
          changed = true;
        }
      }
    }
    std::vector<Box> kept;
    kept.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (!dead[i]) kept.push_back(std::move(boxes[i]));
    }
    boxes = std::move(kept);
  }
  std::sort(boxes.begin(), boxes.end());
  return Region(r.dim(), std::move(boxes));
}

/// Disjoint-box form of r, normalized.
inline Region disjoint_form(const Region& r) {
  std::vector<Box> out;
  for (const auto& b : r.boxes()) {
    std::vector<Box> piece{b};
    for (const auto& o : out) {
      if (piece.empty()) break;
      piece = detail::subtract_boxes(std::move(piece), o);
    }
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return normalize(Region(r.dim(), std::move(out)));
}

// ---------------------------------------------------------------------------
// Modal operator of the complex algebra: { u | exists v in V, u R v }.

inline Region downset(const Region& v, OrderKind order) {
  Region out(v.dim());
  for (const auto& b : v.boxes()) {
    std::vector<Interval> iv;
    iv.reserve(b.dim());
    bool empty_piece = false;
    for (std::size_t i = 0; i < b.dim(); ++i) {
      const Extent hi = b[i].hi();
      if (order == OrderKind::Reflexive || hi.is_omega()) {
        iv.emplace_back(0, hi);
      } else if (hi.value() == 0) {
        empty_piece = true;
        break;
      } else {
        iv.emplace_back(0, hi.value() - 1);
      }
    }
    if (!empty_piece) out.add(Box(std::move(iv)));
  }
  return normalize(out);
}

// ---------------------------------------------------------------------------
// Coordinate analysis

/// Image of v on coordinate i, as a one-dimensional region.
inline Region proj(const Region& v, std::size_t i) {
  if (i >= v.dim()) throw PreconditionError("proj: coordinate out of range");
  Region out(1);
  for (const auto& b : v.boxes()) out.add(Box{b[i]});
  return normalize(out);
}

/// Coordinates on which v takes at least two values.
inline CoordSet j_set(const Region& v) {
  if (v.empty()) throw PreconditionError("j_set of the empty region");
  CoordSet out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const Interval& first = v.boxes().front()[i];
    for (const auto& b : v.boxes()) {
      if (!b[i].is_singleton() || b[i].lo() != first.lo() || !first.is_singleton()) {
        out.insert(i);
        break;
      }
    }
  }
  return out;
}

/// Coordinates on which v is constant.
inline CoordSet i_set(const Region& v) { return j_set(v).complement(v.dim()); }

/// Frees the varying coordinates and pins the constant ones.
inline Region hull(const Region& v) {
  const CoordSet j = j_set(v);
  std::vector<Interval> iv;
  iv.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    iv.push_back(j.contains(i) ? Interval::all() : v.boxes().front()[i]);
  }
  return Region::of(Box(std::move(iv)));
}

// ---------------------------------------------------------------------------
// Cofinality (always with respect to the reflexive order)

/// Every point of b lies below some point of a.
inline bool is_cofinal_in(const Region& a, const Region& b) {
  return is_subset(b, downset(a, OrderKind::Reflexive));
}

inline bool is_precofinal(const Region& v) { return is_cofinal_in(v, hull(v)); }

inline bool is_cofinal_in_space(const Region& v) {
  return std::any_of(v.boxes().begin(), v.boxes().end(), [](const Box& b) { return b.unbounded_everywhere(); });
}

// ---------------------------------------------------------------------------
// Geometry used by the refinement construction

/// [k, OMEGA)^n
inline Region u_k(std::size_t n, std::uint64_t k) {
  return Region::of(Box(std::vector<Interval>(n, Interval::from(k))));
}

/// Points whose zero coordinates are exactly those in face.
inline Region v_face(std::size_t n, CoordSet face) {
  std::vector<Interval> iv;
  iv.reserve(n);
  for (std::size_t i = 0; i < n; ++i) iv.push_back(face.contains(i) ? Interval::single(0) : Interval::from(1));
  return Region::of(Box(std::move(iv)));
}

/// Replaces every coordinate in fixed by the constant c.
inline Region pr_fix(const Region& v, CoordSet fixed, std::uint64_t c) {
  if (!fixed.subset_of(CoordSet::all(v.dim()))) throw PreconditionError("pr_fix: coordinate out of range");
  Region out(v.dim());
  for (auto b : v.boxes()) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (fixed.contains(i)) b[i] = Interval::single(c);
    }
    out.add(std::move(b));
  }
  return normalize(out);
}

enum class Direction { Up, Down };

inline Region translate(const Region& v, std::uint64_t delta, Direction dir) {
  Region out(v.dim());
  for (const auto& b : v.boxes()) {
    std::vector<Interval> iv;
    iv.reserve(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
      const Interval& x = b[i];
      if (dir == Direction::Up) {
        iv.emplace_back(checked_add(x.lo(), delta),
                        x.hi().is_omega() ? OMEGA : Extent(checked_add(x.hi().value(), delta)));
      } else {
        if (x.lo() < delta) throw PreconditionError("translate down: region reaches below the shift");
        iv.emplace_back(x.lo() - delta, x.hi().is_omega() ? OMEGA : Extent(x.hi().value() - delta));
      }
    }
    out.add(Box(std::move(iv)));
  }
  return out;
}

/// Removes the coordinates in drop; each must be constant on v.
inline Region drop_coords(const Region& v, CoordSet drop) {
  if (!drop.subset_of(CoordSet::all(v.dim()))) throw PreconditionError("drop_coords: coordinate out of range");
  if (!v.empty() && !drop.subset_of(i_set(v))) {
    throw PreconditionError("drop_coords: dropped coordinate is not constant");
  }
  Region out(v.dim() - drop.size());
  for (const auto& b : v.boxes()) {
    std::vector<Interval> iv;
    for (std::size_t i = 0; i < b.dim(); ++i) {
      if (!drop.contains(i)) iv.push_back(b[i]);
    }
    out.add(Box(std::move(iv)));
  }
  return out;
}

/// Inverse of drop_coords: the result has dimension v.dim() + at.size() and
/// coordinate c at every position in at.
inline Region insert_coords(const Region& v, CoordSet at, std::uint64_t c) {
  const std::size_t n = v.dim() + at.size();
  if (!at.subset_of(CoordSet::all(n))) throw PreconditionError("insert_coords: coordinate out of range");
  Region out(n);
  for (const auto& b : v.boxes()) {
    std::vector<Interval> iv;
    iv.reserve(n);
    std::size_t src = 0;
    for (std::size_t i = 0; i < n; ++i) iv.push_back(at.contains(i) ? Interval::single(c) : b[src++]);
    out.add(Box(std::move(iv)));
  }
  return out;
}

/// Largest finite bound occurring in v (0 for the empty region).
inline std::uint64_t max_constant(const Region& v) {
  std::uint64_t m = 0;
  for (const auto& b : v.boxes()) {
    for (const auto& iv : b.intervals()) {
      m = std::max(m, iv.lo());
      if (iv.hi().is_finite()) m = std::max(m, iv.hi().value());
    }
  }
  return m;
}

inline std::string to_string(const Region& r) {
  if (r.empty()) return "{}";
  std::string s;
  for (std::size_t k = 0; k < r.boxes().size(); ++k) {
    if (k) s += " u ";
    const Box& b = r.boxes()[k];
    for (std::size_t i = 0; i < b.dim(); ++i) {
      if (i) s += "x";
      s += "[" + std::to_string(b[i].lo()) + ",";
      s += b[i].hi().is_omega() ? std::string("w)") : std::to_string(b[i].hi().value()) + "]";
    }
    if (b.dim() == 0) s += "()";
  }
  return s;
}

}  // namespace omegan
