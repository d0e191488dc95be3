#pragma once

// Seeded generators for test corpora.  std::mt19937_64 is fully specified by
// the standard, and all draws go through draw() below, so a seed reproduces
// the same objects on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "omegan/error.hpp"
#include "omegan/formula.hpp"
#include "omegan/modal.hpp"
#include "omegan/partition.hpp"
#include "omegan/refiner.hpp"
#include "omegan/region.hpp"

namespace omegan {

using Rng = std::mt19937_64;

/// Uniform-ish draw from [0, k).
inline std::uint64_t draw(Rng& rng, std::uint64_t k) { return k == 0 ? 0 : rng() % k; }

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

namespace detail {

// Intervals of omega cut after every threshold: [0,t1], [t1+1,t2], ..., [tm+1, w).
inline std::vector<Interval> cut(const std::vector<std::uint64_t>& thresholds) {
  std::vector<Interval> out;
  std::uint64_t lo = 0;
  for (auto t : thresholds) {
    out.emplace_back(lo, t);
    lo = t + 1;
  }
  out.push_back(Interval::from(lo));
  return out;
}

inline std::vector<Box> product_boxes(const std::vector<std::vector<Interval>>& axes) {
  std::vector<Box> out{Box{}};
  for (const auto& axis : axes) {
    std::vector<Box> next;
    for (const auto& b : out) {
      for (const auto& iv : axis) {
        std::vector<Interval> ivs = b.intervals();
        ivs.push_back(iv);
        next.emplace_back(std::move(ivs));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Random partition of omega^n: per-coordinate threshold sets cut omega^n
/// into grid atoms, which are then merged at random into `cells` cells.
inline Partition gen_random(std::size_t n, std::size_t cells, std::uint64_t max_const, std::uint64_t seed) {
  if (n < 1 || n > 3) throw PreconditionError("gen: n must be 1, 2 or 3");
  if (cells < 1 || cells > 8) throw PreconditionError("gen: cells must be between 1 and 8");
  if (max_const > 8) throw PreconditionError("gen: max-const must be at most 8");
  std::uint64_t most = 1;
  for (std::size_t i = 0; i < n; ++i) most *= max_const + 2;
  if (cells > most) {
    throw PreconditionError("gen: " + std::to_string(cells) + " cells need more than " + std::to_string(most) +
                            " atoms");
  }

  Rng rng(seed);
  std::vector<std::vector<std::uint64_t>> thresholds(n);
  for (int attempt = 0;; ++attempt) {
    std::uint64_t atoms = 1;
    for (auto& t : thresholds) {
      t.clear();
      for (std::uint64_t c = 0; c <= max_const; ++c) {
        if (attempt >= 64 || coin(rng)) t.push_back(c);
      }
      atoms *= t.size() + 1;
    }
    if (atoms >= cells) break;
  }

  std::vector<std::vector<Interval>> axes;
  for (const auto& t : thresholds) axes.push_back(detail::cut(t));
  std::vector<Box> atoms = detail::product_boxes(axes);
  shuffle(atoms, rng);

  std::vector<Region> groups(cells, Region(n));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::size_t g = i < cells ? i : static_cast<std::size_t>(draw(rng, cells));
    groups[g].add(atoms[i]);
  }
  return make_partition(Region::full(n), std::move(groups));
}

/// Union of up to max_boxes random boxes with constants at most max_const;
/// possibly empty.
inline Region random_region(std::size_t dim, std::uint64_t max_const, std::size_t max_boxes, Rng& rng) {
  Region r(dim);
  const std::size_t count = static_cast<std::size_t>(draw(rng, max_boxes + 1));
  for (std::size_t b = 0; b < count; ++b) {
    std::vector<Interval> iv;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint64_t lo = draw(rng, max_const + 1);
      if (draw(rng, 3) == 0) {
        iv.push_back(Interval::from(lo));
      } else {
        iv.emplace_back(lo, lo + draw(rng, max_const - lo + 1));
      }
    }
    r.add(Box(std::move(iv)));
  }
  return r;
}

inline Formula random_formula(const std::vector<std::string>& vars, std::size_t depth, Rng& rng) {
  if (depth == 0 || draw(rng, 5) == 0) {
    const std::uint64_t k = draw(rng, vars.size() + 1);
    if (k < vars.size()) return Formula::var(vars[k]);
    return coin(rng) ? Formula::verum() : Formula::falsum();
  }
  switch (draw(rng, 7)) {
    case 0: return Formula::negation(random_formula(vars, depth - 1, rng));
    case 1: return Formula::diamond(random_formula(vars, depth - 1, rng));
    case 2: return Formula::box(random_formula(vars, depth - 1, rng));
    case 3: return Formula::conj(random_formula(vars, depth - 1, rng), random_formula(vars, depth - 1, rng));
    case 4: return Formula::disj(random_formula(vars, depth - 1, rng), random_formula(vars, depth - 1, rng));
    case 5: return Formula::implies(random_formula(vars, depth - 1, rng), random_formula(vars, depth - 1, rng));
    default: return coin(rng) ? Formula::diamond(random_formula(vars, depth - 1, rng))
                              : Formula::box(random_formula(vars, depth - 1, rng));
  }
}

inline Valuation random_valuation(std::size_t dim, OrderKind order, std::size_t var_count, std::uint64_t max_const,
                                  Rng& rng) {
  Valuation v;
  v.dim = dim;
  v.order = order;
  static const char* const names[] = {"p", "q", "r", "s", "t"};
  for (std::size_t i = 0; i < var_count && i < 5; ++i) v.vars.emplace(names[i], random_region(dim, max_const, 3, rng));
  return v;
}

/// Random finite frame with one random partition of omega^n per world.
inline FiberedPartition random_fibered(std::size_t n, std::size_t worlds, std::uint64_t max_const, Rng& rng) {
  FiberedPartition fp;
  for (std::size_t g = 0; g < worlds; ++g) {
    fp.worlds.push_back(std::string(1, static_cast<char>('a' + g)));
    std::size_t cells = 1 + static_cast<std::size_t>(draw(rng, 3));
    if (n == 1 && max_const == 0) cells = std::min<std::size_t>(cells, 2);
    fp.fibers.push_back(gen_random(n, cells, max_const, rng()));
  }
  for (std::size_t g = 0; g < worlds; ++g) {
    for (std::size_t h = 0; h < worlds; ++h) {
      if (coin(rng)) fp.edges.emplace_back(g, h);
    }
  }
  return fp;
}

}  // namespace omegan
