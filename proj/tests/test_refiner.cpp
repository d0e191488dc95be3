#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace omegan;
using namespace omegan::test;

namespace {

// gen_random arguments clipped to what the atoms allow
Partition random_partition(std::size_t n, std::size_t cells, std::uint64_t max_const, std::uint64_t seed) {
  std::uint64_t atoms = 1;
  for (std::size_t i = 0; i < n; ++i) atoms *= max_const + 2;
  return gen_random(n, std::min<std::uint64_t>(cells, atoms), max_const, seed);
}

Partition one_d(std::vector<Region> cells) { return part(1, std::move(cells)); }

void expect_sound(const Partition& p, const Partition& q) {
  EXPECT_TRUE(refines(q, p));
  EXPECT_TRUE(is_monotone(q).monotone());
  EXPECT_TRUE(is_tuned(q, OrderKind::Reflexive).tuned());
  EXPECT_TRUE(is_tuned(q, OrderKind::Strict).tuned());
}

}  // namespace

TEST(Refine1d, SplitsFiniteCells) {
  const Partition p = one_d({pts(1, {{0}, {2}}), pts(1, {{1}}), rg(1, {{{3, W}}})});
  std::uint64_t k0 = 99;
  const Partition q = refine_monotone_1d(p, &k0);
  EXPECT_EQ(k0, 2U);
  EXPECT_TRUE(same_partition(q, one_d({pts(1, {{0}}), pts(1, {{1}}), pts(1, {{2}}), rg(1, {{{3, W}}})})));
  expect_sound(p, q);
}

TEST(Refine1d, AllInfiniteIsUnchanged) {
  // in one dimension only the whole line has every cell infinite
  const Partition whole = one_d({Region::full(1)});
  const Partition q = refine_monotone_1d(whole);
  EXPECT_TRUE(same_partition(q, whole));
  EXPECT_TRUE(is_tuned(q, OrderKind::Reflexive).tuned());
  EXPECT_TRUE(is_tuned(q, OrderKind::Strict).tuned());

  const Partition split = one_d({rg(1, {{{0, 3}}}), rg(1, {{{4, W}}})});
  EXPECT_EQ(refine_monotone_1d(split).size(), 5U);
}

TEST(Refine1d, SingletonCutOut) {
  const Partition p = one_d({pts(1, {{5}}), complement(pts(1, {{5}}))});
  const Partition q = refine_monotone_1d(p);
  ASSERT_EQ(q.size(), 7U);
  for (std::uint64_t k = 0; k <= 5; ++k) EXPECT_TRUE(set_equal(q.cell(k), pts(1, {{k}})));
  EXPECT_TRUE(set_equal(q.cell(6), rg(1, {{{6, W}}})));
}

TEST(Refine1d, RejectsWrongInput) {
  EXPECT_THROW(refine_monotone_1d(four_cells()), DimensionError);
  EXPECT_THROW(refine_monotone_1d(make_partition(rg(1, {{{0, 4}}}), {rg(1, {{{0, 4}}})})), PreconditionError);
}

TEST(ChooseK0, Examples) {
  EXPECT_EQ(choose_k0(part(2, {origin2(), complement(origin2())})), 1U);
  EXPECT_EQ(choose_k0(part(2, {Region::full(2)})), 0U);
  const Region block = rg(2, {{{0, 3}, {0, 5}}});
  const std::uint64_t k0 = choose_k0(part(2, {block, complement(block)}));
  EXPECT_EQ(k0, 4U);
  EXPECT_TRUE(is_empty(intersect(block, u_k(2, 4))));
  EXPECT_FALSE(is_empty(intersect(block, u_k(2, 3))));
}

TEST(ChooseK0, IsLeastValid) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Partition p = random_partition(2 + seed % 2, 2 + seed % 3, 1 + seed % 5, seed);
    const std::uint64_t k0 = choose_k0(p);
    auto valid = [&](std::uint64_t k) {
      for (const auto& c : p.cells()) {
        if (intersects(c, u_k(p.dim(), k)) && !is_cofinal_in_space(c)) return false;
      }
      return true;
    };
    EXPECT_TRUE(valid(k0)) << seed;
    if (k0 > 0) {
      EXPECT_FALSE(valid(k0 - 1)) << seed;
    }
  }
}

TEST(ClaimAExtend, OriginExample) {
  const Partition a = part(2, {origin2(), complement(origin2())});
  const Partition b = make_partition(u_k(2, 1), {u_k(2, 1)});
  std::vector<FaceRecord> faces;
  const Partition c = claim_a_extend(a, b, &faces);
  EXPECT_TRUE(same_partition(c, four_cells()));
  ASSERT_EQ(faces.size(), 3U);
  EXPECT_EQ(faces[0].face.members(), std::vector<std::size_t>{0});
  EXPECT_EQ(faces[1].face.members(), std::vector<std::size_t>{1});
  EXPECT_EQ(faces[2].face.members(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(faces[0].cells, 1U);
  EXPECT_EQ(faces[2].sub, nullptr);
}

TEST(ClaimAExtend, TrivialA) {
  const Partition a = part(2, {Region::full(2)});
  const Partition b = make_partition(u_k(2, 1), {u_k(2, 1)});
  EXPECT_TRUE(same_partition(claim_a_extend(a, b), four_cells()));
}

TEST(ClaimAExtend, OneDimensional) {
  const Partition a = one_d({Region::full(1)});
  const Partition b = make_partition(u_k(1, 1), {u_k(1, 1)});
  EXPECT_TRUE(same_partition(claim_a_extend(a, b), one_d({pts(1, {{0}}), rg(1, {{{1, W}}})})));
}

TEST(ClaimAExtend, KeepsCellsOfB) {
  // b cuts a|U_1 into vertical lines and a quadrant
  const Partition a = part(2, {rg(2, {{{0, 3}, {0, W}}}), rg(2, {{{4, W}, {0, W}}})});
  const Partition b = make_partition(u_k(2, 1), {rg(2, {{{1, 1}, {1, W}}}), rg(2, {{{2, 2}, {1, W}}}),
                                                 rg(2, {{{3, 3}, {1, W}}}), rg(2, {{{4, W}, {1, W}}})});
  ASSERT_TRUE(is_monotone(b).monotone());
  const Partition c = claim_a_extend(a, b);
  expect_sound(a, c);
  for (const auto& cell : b.cells()) {
    bool found = false;
    for (const auto& d : c.cells()) found = found || set_equal(d, cell);
    EXPECT_TRUE(found) << to_string(cell);
  }
}

TEST(ClaimAExtend, RejectsBadPreconditions) {
  const Partition a = part(2, {origin2(), complement(origin2())});
  EXPECT_THROW(claim_a_extend(a, make_partition(u_k(2, 2), {u_k(2, 2)})), PreconditionError);
  const Region diag = intersect(pts(2, {{1, 1}, {2, 2}}), u_k(2, 1));
  const Partition not_mono = make_partition(u_k(2, 1), {diag, subtract(u_k(2, 1), diag)});
  EXPECT_THROW(claim_a_extend(a, not_mono), PreconditionError);
  const Region half = rg(2, {{{0, 2}, {0, W}}});
  const Partition a2 = part(2, {half, complement(half)});
  EXPECT_THROW(claim_a_extend(a2, make_partition(u_k(2, 1), {u_k(2, 1)})), PreconditionError);
}

TEST(RefineMonotone, OriginInstance) {
  const Partition p = part(2, {origin2(), complement(origin2())});
  const Refinement r = refine_monotone(p);
  EXPECT_EQ(r.trace.k0, 1U);
  EXPECT_TRUE(same_partition(r.partition, four_cells()));
  expect_sound(p, r.partition);
  ASSERT_EQ(r.trace.steps.size(), 1U);
  EXPECT_EQ(r.trace.steps[0].cells_before, 1U);
  EXPECT_EQ(r.trace.steps[0].cells_after, 4U);
}

TEST(RefineMonotone, WholeSpaceUnchanged) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Partition p = part(n, {Region::full(n)});
    const Refinement r = refine_monotone(p);
    EXPECT_EQ(r.trace.k0, 0U);
    EXPECT_TRUE(r.trace.steps.empty());
    EXPECT_TRUE(same_partition(r.partition, p));
  }
}

TEST(RefineMonotone, TwoStrips) {
  const Partition p = part(2, {rg(2, {{{0, 1}, {0, W}}}), rg(2, {{{2, W}, {0, W}}})});
  const Refinement r = refine_monotone(p);
  EXPECT_EQ(r.trace.k0, 2U);
  expect_sound(p, r.partition);
  const Refinement again = refine_monotone(p);
  EXPECT_EQ(r.trace, again.trace);
  EXPECT_TRUE(same_partition(r.partition, again.partition));
}

TEST(RefineMonotone, TraceShape) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const Partition p = random_partition(n, 1 + seed % 5, seed % 6, seed);
    const Refinement r = refine_monotone(p);
    EXPECT_EQ(r.trace.steps.size(), r.trace.k0);
    EXPECT_LE(r.trace.depth(), n);
    for (const auto& s : r.trace.steps) EXPECT_EQ(s.faces.size(), (1U << n) - 1);
    EXPECT_EQ(r.trace.cells_in, p.size());
    EXPECT_EQ(r.trace.cells_out, r.partition.size());
  }
}

class RefineSound : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RefineSound, RandomPartitions) {
  const std::size_t n = GetParam();
  const std::uint64_t seeds = n == 3 ? 15 : 60;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const Partition p = random_partition(n, 1 + seed % 5, 1 + seed % 6, seed * 7 + n);
    const Refinement r = refine_monotone(p);
    expect_sound(p, r.partition);
    // brute force on a grid reaching one past every constant
    const GridTunedResult g = grid_tuned(r.partition, OrderKind::Strict, max_constant(r.partition) + 1);
    EXPECT_TRUE(g.tuned) << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, RefineSound, ::testing::Values(1, 2, 3));

TEST(Product, SpecExample) {
  FiberedPartition fp;
  fp.worlds = {"a", "b"};
  fp.edges = {{0, 1}};
  fp.fibers = {one_d({Region::full(1)}), one_d({pts(1, {{0}, {2}}), pts(1, {{1}}), rg(1, {{{3, W}}})})};
  EXPECT_FALSE(is_product_tuned(fp, OrderKind::Reflexive).tuned());
  const ProductRefinement r = refine_product_finite(fp);
  EXPECT_TRUE(same_partition(r.base, one_d({pts(1, {{0}}), pts(1, {{1}}), pts(1, {{2}}), rg(1, {{{3, W}}})})));
  EXPECT_EQ(r.product.cell_count(), 8U);
  EXPECT_TRUE(product_refines(r.product, fp));
  EXPECT_TRUE(is_product_tuned(r.product, OrderKind::Reflexive).tuned());
  EXPECT_TRUE(is_product_tuned(r.product, OrderKind::Strict).tuned());
}

TEST(Product, SingleWorldNoEdges) {
  FiberedPartition fp;
  fp.worlds = {"a"};
  fp.fibers = {part(2, {Region::full(2)})};
  const ProductRefinement r = refine_product_finite(fp);
  EXPECT_EQ(r.product.cell_count(), 1U);
}

TEST(Product, ReflexivePointMatchesRefiner) {
  const Partition p = gen_random(2, 3, 3, 5);
  FiberedPartition fp;
  fp.worlds = {"a"};
  fp.edges = {{0, 0}};
  fp.fibers = {p};
  const ProductRefinement r = refine_product_finite(fp);
  EXPECT_TRUE(same_partition(r.product.fibers[0], refine_monotone(p).partition));
}

TEST(Product, RandomFramesAreTuned) {
  Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    const FiberedPartition fp = random_fibered(1 + round % 2, 2 + round % 2, 3, rng);
    const ProductRefinement r = refine_product_finite(fp);
    EXPECT_TRUE(product_refines(r.product, fp));
    EXPECT_TRUE(is_product_tuned(r.product, OrderKind::Reflexive).tuned());
    EXPECT_TRUE(is_product_tuned(r.product, OrderKind::Strict).tuned());
  }
}

TEST(Product, RejectsBadInput) {
  FiberedPartition fp;
  EXPECT_THROW(refine_product_finite(fp), PreconditionError);
  fp.worlds = {"a", "b"};
  fp.fibers = {part(1, {Region::full(1)}), part(2, {Region::full(2)})};
  EXPECT_THROW(refine_product_finite(fp), DimensionError);
  fp.fibers = {part(1, {Region::full(1)}), part(1, {Region::full(1)})};
  fp.edges = {{0, 2}};
  EXPECT_THROW(refine_product_finite(fp), PreconditionError);
}
