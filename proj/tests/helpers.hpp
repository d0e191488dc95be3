#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "omegan/omegan.hpp"

namespace omegan::test {

// stands for OMEGA in interval literals
inline constexpr std::uint64_t W = std::numeric_limits<std::uint64_t>::max();

inline Interval iv(std::uint64_t lo, std::uint64_t hi) { return hi == W ? Interval::from(lo) : Interval(lo, hi); }

inline Box bx(const std::vector<std::array<std::uint64_t, 2>>& ivs) {
  std::vector<Interval> out;
  for (const auto& [lo, hi] : ivs) out.push_back(iv(lo, hi));
  return Box(std::move(out));
}

// rg(2, {{{0, 0}, {1, W}}}) is [0,0]x[1,w)
inline Region rg(std::size_t dim, const std::vector<std::vector<std::array<std::uint64_t, 2>>>& boxes) {
  Region r(dim);
  for (const auto& b : boxes) r.add(bx(b));
  return r;
}

inline Region pts(std::size_t dim, const std::vector<std::vector<std::uint64_t>>& points) {
  Region r(dim);
  for (const auto& p : points) r.add(Box::point(Point(p)));
  return r;
}

inline Partition part(std::size_t dim, std::vector<Region> cells) {
  return make_partition(Region::full(dim), std::move(cells));
}

inline Region origin2() { return pts(2, {{0, 0}}); }

// {(0,0)}, [0,0]x[1,w), [1,w)x[0,0], [1,w)^2
inline Partition four_cells() {
  return part(2, {origin2(), rg(2, {{{0, 0}, {1, W}}}), rg(2, {{{1, W}, {0, 0}}}), rg(2, {{{1, W}, {1, W}}})});
}

inline bool same_partition(const Partition& a, const Partition& b) {
  if (a.size() != b.size() || !set_equal(a.carrier(), b.carrier())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!set_equal(a.cell(i), b.cell(i))) return false;
  }
  return true;
}

// Exhaustive over [0, bound]^dim.
template <typename F>
void for_each_point(std::size_t dim, std::uint64_t bound, F&& f) {
  const Grid g(dim, bound);
  for (std::uint64_t i = 0; i < g.size(); ++i) f(g.point(i));
}

}  // namespace omegan::test
