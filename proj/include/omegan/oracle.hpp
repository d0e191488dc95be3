#pragma once

// Brute-force ground truth on bounded grids [0, B]^n.
//
// Bound policy.  Let C be the largest constant of the inputs.  Coordinate
// values above C are interchangeable: clamping every coordinate to at most
// C + 1 is a bisimulation of (omega^n, R) for both orders.  Hence a point
// u of the grid sees V iff it sees V through a witness whose coordinates are
// at most max(u_i + 1, C + 1) <= max(B, C) + 1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegan/error.hpp"
#include "omegan/formula.hpp"
#include "omegan/modal.hpp"
#include "omegan/partition.hpp"
#include "omegan/region.hpp"

namespace omegan {

class BoundError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kGridPointCap = 10'000'000;

/// Points of [0, bound]^dim in lexicographic order.
class Grid {
 public:
  Grid(std::size_t dim, std::uint64_t bound, std::uint64_t cap = kGridPointCap) : dim_(dim), bound_(bound) {
    if (bound == 0) throw BoundError("grid bound must be at least 1");
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      if (n > cap / (bound + 1)) {
        throw BoundError("grid [0," + std::to_string(bound) + "]^" + std::to_string(dim) + " exceeds " +
                         std::to_string(cap) + " points");
      }
      n *= bound + 1;
    }
    size_ = n;
  }

  std::size_t dim() const { return dim_; }
  std::uint64_t bound() const { return bound_; }
  std::uint64_t size() const { return size_; }

  Point point(std::uint64_t index) const {
    std::vector<std::uint64_t> c(dim_);
    for (std::size_t i = dim_; i-- > 0;) {
      c[i] = index % (bound_ + 1);
      index /= bound_ + 1;
    }
    return Point(std::move(c));
  }

  std::uint64_t index(const Point& p) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < dim_; ++i) idx = idx * (bound_ + 1) + p[i];
    return idx;
  }

  bool contains(const Point& p) const {
    return std::all_of(p.coords().begin(), p.coords().end(), [&](std::uint64_t c) { return c <= bound_; });
  }

 private:
  std::size_t dim_;
  std::uint64_t bound_;
  std::uint64_t size_ = 1;
};

/// Subset of a grid.
struct GridSet {
  Grid grid;
  std::vector<bool> in;

  explicit GridSet(Grid g) : grid(g), in(g.size(), false) {}

  std::vector<Point> points() const {
    std::vector<Point> out;
    for (std::uint64_t i = 0; i < grid.size(); ++i) {
      if (in[i]) out.push_back(grid.point(i));
    }
    return out;
  }
  std::size_t count() const { return static_cast<std::size_t>(std::count(in.begin(), in.end(), true)); }
};

/// r restricted to the grid, by pointwise membership.
inline GridSet grid_members(const Region& r, const Grid& g) {
  require_same_dim(r.dim(), g.dim(), "grid_members");
  GridSet s(g);
  for (std::uint64_t i = 0; i < g.size(); ++i) s.in[i] = member(g.point(i), r);
  return s;
}

/// Witness bound for grid_downset.
inline std::uint64_t witness_bound(std::uint64_t bound, std::uint64_t max_const) {
  return checked_add(std::max(bound, max_const), 1);
}

/// { u in [0,B]^n | some v in V n [0,M]^n has u R v }; M defaults to the
/// witness bound, and any M at or above it gives the same answer.
inline GridSet grid_downset(const Region& v, OrderKind order, std::uint64_t bound,
                            std::optional<std::uint64_t> witness_limit = std::nullopt) {
  const Grid g(v.dim(), bound);
  const std::uint64_t m = witness_limit.value_or(witness_bound(bound, max_constant(v)));
  const Grid wg(v.dim(), std::max<std::uint64_t>(m, 1));
  std::vector<Point> witnesses;
  for (std::uint64_t i = 0; i < wg.size(); ++i) {
    Point w = wg.point(i);
    if (member(w, v)) witnesses.push_back(std::move(w));
  }
  GridSet out(g);
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    const Point u = g.point(i);
    out.in[i] = std::any_of(witnesses.begin(), witnesses.end(), [&](const Point& w) { return related(u, w, order); });
  }
  return out;
}

inline std::uint64_t max_constant(const Partition& p) {
  std::uint64_t c = max_constant(p.carrier());
  for (const auto& cell : p.cells()) c = std::max(c, max_constant(cell));
  return c;
}

struct GridTunedResult {
  bool tuned = true;
  std::size_t from = 0, to = 0;
  Point witness;
};

/// Tuned check by enumeration; requires bound >= max_constant(p) + 1.
inline GridTunedResult grid_tuned(const Partition& p, OrderKind order, std::uint64_t bound) {
  const std::uint64_t c = max_constant(p);
  if (bound < checked_add(c, 1)) {
    throw BoundError("grid_tuned: bound " + std::to_string(bound) + " below max constant + 1 = " +
                     std::to_string(c + 1));
  }
  const Grid g(p.dim(), bound);
  std::vector<GridSet> cells, downs;
  for (const auto& cell : p.cells()) {
    cells.push_back(grid_members(cell, g));
    downs.push_back(grid_downset(cell, order, bound));
  }
  for (std::size_t u = 0; u < p.size(); ++u) {
    for (std::size_t v = 0; v < p.size(); ++v) {
      bool some = false;
      std::optional<std::uint64_t> miss;
      for (std::uint64_t i = 0; i < g.size(); ++i) {
        if (!cells[u].in[i]) continue;
        if (downs[v].in[i]) {
          some = true;
        } else if (!miss) {
          miss = i;
        }
      }
      if (some && miss) return {false, u, v, g.point(*miss)};
    }
  }
  return {};
}

struct GridTruth {
  GridSet points;              // truth on [0, B]^n
  std::uint64_t internal_bound;  // grid actually evaluated
};

/// Pointwise Kripke evaluation.  The formula is evaluated on [0, K]^n with
/// K = max(B, C + 1); a witness coordinate K + 1 is read as K, which is
/// exact because K and K + 1 both lie above every constant.
inline GridTruth grid_truth(const Formula& f, const Valuation& v, std::uint64_t bound) {
  validate(v);
  std::uint64_t c = 0;
  for (const auto& name : f.variables()) c = std::max(c, max_constant(v.at(name)));
  const std::uint64_t k = std::max(bound, checked_add(c, 1));
  const Grid g(v.dim, k);
  const Grid out_grid(v.dim, bound);

  // u sees the grid point w iff some v with clamp_K(v) = w has u R v
  auto sees = [&](const Point& u, const Point& w) {
    for (std::size_t i = 0; i < u.dim(); ++i) {
      if (w[i] == k) continue;
      if (v.order == OrderKind::Reflexive ? u[i] > w[i] : u[i] >= w[i]) return false;
    }
    return true;
  };

  std::vector<Point> pts;
  pts.reserve(g.size());
  for (std::uint64_t i = 0; i < g.size(); ++i) pts.push_back(g.point(i));

  std::map<std::string, std::vector<bool>> memo;
  for (const auto& sub : f.subformulas()) {
    std::vector<bool> t(g.size(), false);
    std::vector<const std::vector<bool>*> argv;
    for (const auto& a : sub.args()) argv.push_back(&memo.at(a.str()));
    const auto arg = [&](std::size_t i) -> const std::vector<bool>& { return *argv[i]; };
    for (std::uint64_t i = 0; i < g.size(); ++i) {
      switch (sub.op()) {
        case Op::Var: t[i] = member(pts[i], v.at(sub.name())); break;
        case Op::False: t[i] = false; break;
        case Op::True: t[i] = true; break;
        case Op::Not: t[i] = !arg(0)[i]; break;
        case Op::And: t[i] = arg(0)[i] && arg(1)[i]; break;
        case Op::Or: t[i] = arg(0)[i] || arg(1)[i]; break;
        case Op::Implies: t[i] = !arg(0)[i] || arg(1)[i]; break;
        case Op::Diamond:
        case Op::Box: {
          const bool dia = sub.op() == Op::Diamond;
          bool result = !dia;
          for (std::uint64_t j = 0; j < g.size(); ++j) {
            if (!sees(pts[i], pts[j])) continue;
            if (dia && arg(0)[j]) {
              result = true;
              break;
            }
            if (!dia && !arg(0)[j]) {
              result = false;
              break;
            }
          }
          t[i] = result;
          break;
        }
      }
    }
    memo.emplace(sub.str(), std::move(t));
  }

  GridSet out(out_grid);
  const auto& top = memo.at(f.str());
  for (std::uint64_t i = 0; i < out_grid.size(); ++i) out.in[i] = top[g.index(out_grid.point(i))];
  return {std::move(out), k};
}

/// Points where a grid set and a region disagree.
inline std::vector<Point> grid_diff(const GridSet& s, const Region& r) {
  std::vector<Point> out;
  for (std::uint64_t i = 0; i < s.grid.size(); ++i) {
    const Point p = s.grid.point(i);
    if (s.in[i] != member(p, r)) out.push_back(p);
  }
  return out;
}

}  // namespace omegan
