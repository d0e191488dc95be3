#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace omegan;
using namespace omegan::test;

namespace {

Valuation val(std::size_t dim, OrderKind order, std::map<std::string, Region> vars) {
  Valuation v;
  v.dim = dim;
  v.order = order;
  v.vars = std::move(vars);
  return v;
}

}  // namespace

TEST(Grid, IndexRoundTrip) {
  const Grid g(3, 4);
  EXPECT_EQ(g.size(), 125U);
  for (std::uint64_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.index(g.point(i)), i);
  EXPECT_EQ(g.point(0), (Point{0, 0, 0}));
  EXPECT_EQ(g.point(1), (Point{0, 0, 1}));
  EXPECT_TRUE(g.contains(Point{4, 4, 4}));
  EXPECT_FALSE(g.contains(Point{0, 5, 0}));
}

TEST(Grid, Limits) {
  EXPECT_THROW(Grid(2, 0), BoundError);
  EXPECT_THROW(Grid(3, 1000), BoundError);
  EXPECT_NO_THROW(Grid(2, 1000));
}

TEST(GridDownset, Examples) {
  const GridSet d = grid_downset(rg(2, {{{2, W}, {3, 5}}}), OrderKind::Reflexive, 6);
  for (std::uint64_t i = 0; i < d.grid.size(); ++i) EXPECT_EQ(d.in[i], d.grid.point(i)[1] <= 5);
  EXPECT_EQ(grid_downset(Region(2), OrderKind::Reflexive, 4).count(), 0U);
  EXPECT_EQ(grid_downset(origin2(), OrderKind::Strict, 5).count(), 0U);
}

TEST(GridDownset, WitnessBoundNeedsOnePastGrid) {
  // under < the grid point B sees [0,w) only through B + 1
  const Region line = Region::full(1);
  EXPECT_EQ(grid_downset(line, OrderKind::Strict, 3).count(), 4U);
  EXPECT_EQ(grid_downset(line, OrderKind::Strict, 3, 3).count(), 3U);
  EXPECT_EQ(witness_bound(3, 0), 4U);
  EXPECT_EQ(witness_bound(2, 7), 8U);
}

TEST(GridDownset, AgreesWithSymbolicAndIsStable) {
  Rng rng(8);
  for (int round = 0; round < 80; ++round) {
    const std::size_t dim = 1 + round % 3;
    const Region v = random_region(dim, 5, 3, rng);
    const std::uint64_t b = 1 + draw(rng, 7);
    for (OrderKind order : {OrderKind::Reflexive, OrderKind::Strict}) {
      const GridSet g = grid_downset(v, order, b);
      EXPECT_TRUE(grid_diff(g, downset(v, order)).empty());
      const std::uint64_t m = witness_bound(b, max_constant(v));
      EXPECT_EQ(grid_downset(v, order, b, m + 3).in, g.in);
    }
  }
}

TEST(GridTuned, Examples) {
  EXPECT_TRUE(grid_tuned(four_cells(), OrderKind::Reflexive, 3).tuned);
  EXPECT_TRUE(grid_tuned(four_cells(), OrderKind::Strict, 3).tuned);
  const Region a = pts(2, {{0, 0}, {1, 1}});
  const Region b = pts(2, {{0, 1}});
  const GridTunedResult bad = grid_tuned(part(2, {a, b, complement(unite(a, b))}), OrderKind::Reflexive, 3);
  EXPECT_FALSE(bad.tuned);
  EXPECT_EQ(bad.witness, (Point{1, 1}));
  EXPECT_TRUE(grid_tuned(part(2, {Region::full(2)}), OrderKind::Strict, 2).tuned);
  EXPECT_THROW(grid_tuned(four_cells(), OrderKind::Reflexive, 1), BoundError);
}

TEST(GridTuned, AgreesWithSymbolic) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 1 + seed % 2;
    const Partition p = gen_random(n, 1 + seed % 3, 1 + seed % 4, seed);
    for (OrderKind order : {OrderKind::Reflexive, OrderKind::Strict}) {
      const TunedCheck s = is_tuned(p, order);
      const GridTunedResult g = grid_tuned(p, order, max_constant(p) + 1);
      ASSERT_EQ(s.tuned(), g.tuned) << seed;
      if (!s.tuned()) {
        EXPECT_EQ(s.violation->from, g.from);
        EXPECT_EQ(s.violation->to, g.to);
      }
    }
  }
}

TEST(GridTruth, Examples) {
  const GridTruth a = grid_truth(parse_formula("<>p"), val(2, OrderKind::Reflexive, {{"p", origin2()}}), 3);
  EXPECT_EQ(a.points.points(), std::vector<Point>{(Point{0, 0})});

  const GridTruth b = grid_truth(parse_formula("[]false"), val(2, OrderKind::Strict, {}), 3);
  EXPECT_EQ(b.points.count(), 0U);

  const GridTruth c =
      grid_truth(parse_formula("<>p"), val(2, OrderKind::Reflexive, {{"p", rg(2, {{{3, W}, {3, W}}})}}), 2);
  EXPECT_EQ(c.points.count(), 9U);
  EXPECT_GE(c.internal_bound, 4U);
}

TEST(GridTruth, NoBoundaryArtifactsUnderStrictOrder) {
  // every point has a successor, so <>[]false is false everywhere
  const GridTruth g = grid_truth(parse_formula("<>[]false"), val(2, OrderKind::Strict, {}), 3);
  EXPECT_EQ(g.points.count(), 0U);
  const GridTruth h = grid_truth(parse_formula("[]<>true"), val(1, OrderKind::Strict, {}), 5);
  EXPECT_EQ(h.points.count(), 6U);
}

TEST(GridTruth, AgreesWithSymbolic) {
  Rng rng(123);
  for (int round = 0; round < 120; ++round) {
    const std::size_t dim = 1 + round % 2;
    const OrderKind order = round % 2 ? OrderKind::Strict : OrderKind::Reflexive;
    const Valuation v = random_valuation(dim, order, 1 + round % 3, 5, rng);
    std::vector<std::string> names;
    for (const auto& [name, r] : v.vars) names.push_back(name);
    const Formula f = random_formula(names, 4, rng);
    const std::uint64_t b = 1 + draw(rng, 7);
    const GridTruth g = grid_truth(f, v, b);
    EXPECT_TRUE(grid_diff(g.points, truth_region(f, v)).empty()) << f.str();
  }
}
