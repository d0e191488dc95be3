#pragma once

// Finite monotone refinements of finite partitions of omega^n.
//
// The construction works top-down from a shifted quadrant U_k0 = [k0, w)^n on
// which every cell is cofinal, and extends the partition one layer at a time:
// U_k is grown to U_{k-1} by translating the instance so that U_{k-1} becomes
// omega^n, then covering the faces V_I (the points whose zero coordinates are
// exactly I) in order of increasing |I|.  Each face is order-isomorphic to
// omega^(n-|I|), so it is handled by a recursive call on the atoms induced by
// the input cells and by the projections of the cells already placed on the
// faces V_K, K a proper subset of I.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omegan/error.hpp"
#include "omegan/partition.hpp"
#include "omegan/region.hpp"

namespace omegan {

/// An internal consistency check of the construction failed.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RefinementTrace;

struct FaceRecord {
  CoordSet face;
  std::size_t family_size = 0;    // regions the face atoms were induced from
  std::size_t induced_cells = 0;  // atoms before the recursive refinement
  std::size_t cells = 0;          // cells placed on the face
  std::shared_ptr<const RefinementTrace> sub;  // null for the origin face
};

struct StepRecord {
  std::uint64_t k = 0;  // extends U_k to U_{k-1}
  std::size_t cells_before = 0;
  std::size_t cells_after = 0;
  std::vector<FaceRecord> faces;
};

struct RefinementTrace {
  std::size_t dim = 0;
  std::uint64_t k0 = 0;
  bool one_dimensional = false;
  std::size_t cells_in = 0;
  std::size_t cells_out = 0;
  std::vector<StepRecord> steps;

  // Nesting depth of recursive calls, counting this level.
  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& s : steps) {
      for (const auto& f : s.faces) {
        if (f.sub) d = std::max(d, f.sub->depth());
      }
    }
    return d + 1;
  }

  friend bool operator==(const RefinementTrace& a, const RefinementTrace& b);
};

inline bool operator==(const FaceRecord& a, const FaceRecord& b) {
  if (a.face != b.face || a.family_size != b.family_size || a.induced_cells != b.induced_cells ||
      a.cells != b.cells || static_cast<bool>(a.sub) != static_cast<bool>(b.sub)) {
    return false;
  }
  return !a.sub || *a.sub == *b.sub;
}

inline bool operator==(const StepRecord& a, const StepRecord& b) {
  return a.k == b.k && a.cells_before == b.cells_before && a.cells_after == b.cells_after && a.faces == b.faces;
}

inline bool operator==(const RefinementTrace& a, const RefinementTrace& b) {
  return a.dim == b.dim && a.k0 == b.k0 && a.one_dimensional == b.one_dimensional && a.cells_in == b.cells_in &&
         a.cells_out == b.cells_out && a.steps == b.steps;
}

struct Refinement {
  Partition partition;
  RefinementTrace trace;
};

namespace detail {

inline void require_full_carrier(const Partition& p, const char* what) {
  if (p.size() == 0 || !set_equal(p.carrier(), Region::full(p.dim()))) {
    throw PreconditionError(std::string(what) + ": carrier must be omega^n");
  }
}

inline Partition translate(const Partition& p, std::uint64_t delta, Direction dir) {
  if (delta == 0) return p;
  std::vector<Region> cells;
  cells.reserve(p.size());
  for (const auto& c : p.cells()) cells.push_back(omegan::translate(c, delta, dir));
  return Partition::assemble(omegan::translate(p.carrier(), delta, dir), std::move(cells));
}

// Nonempty faces ordered by size, then lexicographically by member list.
inline std::vector<CoordSet> face_order(std::size_t n) {
  std::vector<CoordSet> faces;
  for (std::uint64_t bits = 1; bits < (1ULL << n); ++bits) faces.emplace_back(bits);
  std::sort(faces.begin(), faces.end(), [](CoordSet a, CoordSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return faces;
}

}  // namespace detail

/// Refinement of a finite partition of omega into singletons below the
/// largest element of the finite cells, and the infinite cells above it.
inline Partition refine_monotone_1d(const Partition& p, std::uint64_t* k0_out = nullptr) {
  if (p.dim() != 1) throw DimensionError("refine_monotone_1d: partition is not one-dimensional");
  detail::require_full_carrier(p, "refine_monotone_1d");
  bool any_finite = false;
  std::uint64_t k0 = 0;
  for (const auto& c : p.cells()) {
    if (is_cofinal_in_space(c)) continue;
    any_finite = true;
    k0 = std::max(k0, max_constant(c));
  }
  if (k0_out) *k0_out = any_finite ? k0 : 0;
  if (!any_finite) return p;

  std::vector<Region> cells;
  for (std::uint64_t k = 0; k <= k0; ++k) cells.push_back(Region::point(Point{k}));
  const Region tail = u_k(1, checked_add(k0, 1));
  for (const auto& c : p.cells()) {
    if (is_cofinal_in_space(c)) cells.push_back(intersect(c, tail));
  }
  return Partition::assemble(p.carrier(), std::move(cells));
}

/// Least k0 such that every cell meeting [k0, w)^n is cofinal in omega^n.
inline std::uint64_t choose_k0(const Partition& p) {
  detail::require_full_carrier(p, "choose_k0");
  std::uint64_t k0 = 0;
  for (const auto& c : p.cells()) {
    if (is_cofinal_in_space(c)) continue;
    for (const auto& b : c.boxes()) {
      Extent least = OMEGA;
      for (const auto& iv : b.intervals()) least = std::min(least, iv.hi());
      // a box of a non-cofinal cell is bounded somewhere
      k0 = std::max(k0, checked_add(least.value(), 1));
    }
  }
  const Region top = u_k(p.dim(), k0);
  for (const auto& c : p.cells()) {
    if (intersects(c, top) && !is_cofinal_in_space(c)) {
      throw InternalError("choose_k0: non-cofinal cell meets U_k0");
    }
  }
  return k0;
}

inline Refinement refine_monotone(const Partition& p);

namespace detail {

inline Partition claim_a(const Partition& a, const Partition& b, std::vector<FaceRecord>& records) {
  const std::size_t n = a.dim();
  std::vector<std::pair<CoordSet, std::vector<Region>>> placed;
  placed.emplace_back(CoordSet{}, b.cells());

  for (CoordSet face : face_order(n)) {
    const Region carrier = v_face(n, face);
    std::vector<Region> family;
    for (const auto& c : a.cells()) {
      Region r = intersect(c, carrier);
      if (!is_empty(r)) family.push_back(std::move(r));
    }
    for (const auto& [k, cells] : placed) {
      if (!k.proper_subset_of(face)) continue;
      for (const auto& c : cells) family.push_back(pr_fix(c, face, 0));
    }
    const Partition atoms = induced(carrier, family);

    FaceRecord rec;
    rec.face = face;
    rec.family_size = family.size();
    rec.induced_cells = atoms.size();

    std::vector<Region> out;
    const std::size_t m = n - face.size();
    if (m == 0) {
      out.push_back(carrier);
    } else {
      std::vector<Region> moved;
      moved.reserve(atoms.size());
      for (const auto& c : atoms.cells()) moved.push_back(omegan::translate(drop_coords(c, face), 1, Direction::Down));
      Refinement sub = refine_monotone(Partition::assemble(Region::full(m), std::move(moved)));
      for (const auto& c : sub.partition.cells()) {
        out.push_back(insert_coords(omegan::translate(c, 1, Direction::Up), face, 0));
      }
      rec.sub = std::make_shared<const RefinementTrace>(std::move(sub.trace));
    }
    rec.cells = out.size();
    records.push_back(std::move(rec));
    placed.emplace_back(face, std::move(out));
  }

  std::vector<Region> cells;
  for (auto& [k, cs] : placed) cells.insert(cells.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
  return Partition::assemble(Region::full(n), std::move(cells));
}

}  // namespace detail

/// Extends a monotone partition b of U_1 refining a|U_1 to a monotone
/// partition of omega^n that refines a and keeps every cell of b.
inline Partition claim_a_extend(const Partition& a, const Partition& b, std::vector<FaceRecord>* records = nullptr) {
  require_same_dim(a.dim(), b.dim(), "claim_a_extend");
  if (a.dim() == 0) throw PreconditionError("claim_a_extend: dimension must be positive");
  detail::require_full_carrier(a, "claim_a_extend");
  if (!set_equal(b.carrier(), u_k(a.dim(), 1))) throw PreconditionError("claim_a_extend: b must partition U_1");
  if (!is_monotone(b)) throw PreconditionError("claim_a_extend: b is not monotone");
  if (!refines(b, restrict(a, u_k(a.dim(), 1)))) throw PreconditionError("claim_a_extend: b does not refine a|U_1");
  std::vector<FaceRecord> local;
  return detail::claim_a(a, b, records ? *records : local);
}

/// Finite monotone refinement of a finite partition of omega^n, with the
/// trace of the construction.  Monotone partitions of omega^n are tuned for
/// both the reflexive and the strict order.
inline Refinement refine_monotone(const Partition& p) {
  detail::require_full_carrier(p, "refine_monotone");
  RefinementTrace trace;
  trace.dim = p.dim();
  trace.cells_in = p.size();

  if (p.dim() == 0) {
    trace.cells_out = p.size();
    return {p, std::move(trace)};
  }
  if (p.dim() == 1) {
    trace.one_dimensional = true;
    Partition q = refine_monotone_1d(p, &trace.k0);
    trace.cells_out = q.size();
    return {std::move(q), std::move(trace)};
  }

  const std::size_t n = p.dim();
  trace.k0 = choose_k0(p);
  Partition current = restrict(p, u_k(n, trace.k0));
  for (const auto& c : current.cells()) {
    if (!is_cofinal_in_space(c)) throw InternalError("refine_monotone: cell of A|U_k0 is not cofinal");
  }

  for (std::uint64_t k = trace.k0; k >= 1; --k) {
    const std::uint64_t shift = k - 1;
    StepRecord step;
    step.k = k;
    step.cells_before = current.size();
    const Partition a = detail::translate(restrict(p, u_k(n, shift)), shift, Direction::Down);
    const Partition b = detail::translate(current, shift, Direction::Down);
    current = detail::translate(detail::claim_a(a, b, step.faces), shift, Direction::Up);
    step.cells_after = current.size();
    if (step.faces.size() != (1ULL << n) - 1) throw InternalError("refine_monotone: face loop length");
    trace.steps.push_back(std::move(step));
  }
  if (trace.steps.size() != trace.k0 || trace.depth() > n) throw InternalError("refine_monotone: trace shape");
  trace.cells_out = current.size();
  return {std::move(current), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Products with a finite frame

/// Partition of omega^n x G for a finite frame (G, S): one partition of
/// omega^n per world, each cell being fiber x {world}.
struct FiberedPartition {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // S
  std::vector<Partition> fibers;                           // indexed like worlds

  std::size_t dim() const { return fibers.empty() ? 0 : fibers.front().dim(); }
  std::size_t cell_count() const {
    std::size_t c = 0;
    for (const auto& f : fibers) c += f.size();
    return c;
  }
  bool has_edge(std::size_t g, std::size_t h) const {
    return std::find(edges.begin(), edges.end(), std::make_pair(g, h)) != edges.end();
  }
};

inline void validate(const FiberedPartition& fp) {
  if (fp.worlds.empty()) throw PreconditionError("fibered partition: no worlds");
  if (fp.fibers.size() != fp.worlds.size()) throw PreconditionError("fibered partition: one fiber per world required");
  for (std::size_t g = 0; g < fp.worlds.size(); ++g) {
    require_same_dim(fp.fibers[g].dim(), fp.dim(), "fibered partition");
    detail::require_full_carrier(fp.fibers[g], "fibered partition");
    validate(fp.fibers[g]);
  }
  for (const auto& [g, h] : fp.edges) {
    if (g >= fp.worlds.size() || h >= fp.worlds.size()) throw PreconditionError("fibered partition: edge out of range");
  }
}

struct ProductTunedViolation {
  std::size_t from_world = 0, from_cell = 0;
  std::size_t to_world = 0, to_cell = 0;
  Point witness;
};

struct ProductTunedCheck {
  std::optional<ProductTunedViolation> violation;
  bool tuned() const { return !violation.has_value(); }
  explicit operator bool() const { return tuned(); }
};

/// Tuned check in the product frame: (x,g) R (y,h) iff x R y and g S h.
inline ProductTunedCheck is_product_tuned(const FiberedPartition& fp, OrderKind order) {
  for (const auto& [g, h] : fp.edges) {
    const Partition& from = fp.fibers[g];
    const Partition& to = fp.fibers[h];
    for (std::size_t j = 0; j < to.size(); ++j) {
      const Region down = downset(to.cell(j), order);
      for (std::size_t i = 0; i < from.size(); ++i) {
        if (!intersects(from.cell(i), down) || is_subset(from.cell(i), down)) continue;
        return {ProductTunedViolation{g, i, h, j, lex_min(subtract(from.cell(i), down))}};
      }
    }
  }
  return {};
}

inline bool product_refines(const FiberedPartition& fine, const FiberedPartition& coarse) {
  if (fine.worlds != coarse.worlds) throw PreconditionError("product_refines: world sets differ");
  for (std::size_t g = 0; g < fine.worlds.size(); ++g) {
    if (!refines(fine.fibers[g], coarse.fibers[g])) return false;
  }
  return true;
}

struct ProductRefinement {
  FiberedPartition product;
  Partition base;  // common fiber partition
  RefinementTrace trace;
};

/// Tuned refinement of a partition of omega^n x G: refine the atoms of all
/// fibers of all worlds once, then use that partition in every world.
inline ProductRefinement refine_product_finite(const FiberedPartition& fp) {
  validate(fp);
  std::vector<Region> family;
  for (const auto& f : fp.fibers) family.insert(family.end(), f.cells().begin(), f.cells().end());
  Refinement r = refine_monotone(induced(Region::full(fp.dim()), family));
  ProductRefinement out;
  out.product.worlds = fp.worlds;
  out.product.edges = fp.edges;
  out.product.fibers.assign(fp.worlds.size(), r.partition);
  out.base = std::move(r.partition);
  out.trace = std::move(r.trace);
  return out;
}

}  // namespace omegan
