#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "emt/genome.hpp"
#include "emt/mfo.hpp"
#include "emt/operators.hpp"

using namespace emt;

TEST(OrderCrossover, HandTrace) {
  const std::vector<int> p1{1, 2, 3, 4, 5, 6, 7, 8}, p2{2, 4, 6, 8, 7, 5, 3, 1};
  EXPECT_EQ(order_crossover(p1, p2, 4, 6), (Genome{2, 8, 7, 4, 5, 6, 3, 1}));
}

TEST(OrderCrossover, FullSegmentCopiesFirstParent) {
  const std::vector<int> p1{3, 1, 2, 5, 4}, p2{1, 2, 3, 4, 5};
  EXPECT_EQ(order_crossover(p1, p2, 1, 5), Genome(p1.begin(), p1.end()));
}

TEST(OrderCrossover, IdenticalParents) {
  const std::vector<int> p{4, 2, 5, 1, 3};
  for (std::size_t a = 1; a < 5; ++a)
    for (std::size_t b = a + 1; b <= 5; ++b) EXPECT_EQ(order_crossover(p, p, a, b), Genome(p.begin(), p.end()));
}

TEST(OrderCrossover, RejectsBadInput) {
  const std::vector<int> p1{1, 2, 3, 4}, p2{4, 3, 2, 1}, shorter{1, 2, 3};
  EXPECT_THROW(order_crossover(p1, shorter, 1, 2), std::invalid_argument);
  EXPECT_THROW(order_crossover(p1, p2, 3, 2), std::invalid_argument);
  EXPECT_THROW(order_crossover(p1, p2, 0, 2), std::invalid_argument);
  EXPECT_THROW(order_crossover(p1, p2, 2, 5), std::invalid_argument);
}

TEST(TwoOpt, Examples) {
  const std::vector<int> g{1, 2, 3, 4, 5};
  EXPECT_EQ(two_opt_mutation(g, 1, 5), (Genome{5, 4, 3, 2, 1}));
  EXPECT_EQ(two_opt_mutation(g, 2, 4), (Genome{1, 4, 3, 2, 5}));
  EXPECT_EQ(two_opt_mutation(two_opt_mutation(g, 2, 4), 2, 4), Genome(g.begin(), g.end()));
  EXPECT_THROW(two_opt_mutation(g, 3, 3), std::invalid_argument);
  EXPECT_THROW(two_opt_mutation(g, 4, 2), std::invalid_argument);
  EXPECT_THROW(two_opt_mutation(g, 1, 6), std::invalid_argument);
}

TEST(Insertion, Examples) {
  const std::vector<int> g{1, 2, 3, 4, 5};
  EXPECT_EQ(insertion_mutation(g, 1, 5), (Genome{2, 3, 4, 5, 1}));
  EXPECT_EQ(insertion_mutation(g, 3, 1), (Genome{3, 1, 2, 4, 5}));
  EXPECT_EQ(insertion_mutation(insertion_mutation(g, 2, 4), 4, 2), Genome(g.begin(), g.end()));
  EXPECT_THROW(insertion_mutation(g, 0, 2), std::invalid_argument);
  EXPECT_THROW(insertion_mutation(g, 2, 6), std::invalid_argument);
}

TEST(ParentCentricOx, IdenticalParents) {
  Rng rng(5);
  const std::vector<int> p{6, 2, 5, 1, 3, 4};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(parent_centric_ox(p, p, rng), Genome(p.begin(), p.end()));
}

TEST(ParentCentricOx, RejectsLengthMismatch) {
  Rng rng(5);
  EXPECT_THROW(parent_centric_ox(std::vector<int>{1, 2, 3}, std::vector<int>{1, 2}, rng), std::invalid_argument);
}

namespace {

std::size_t inherited(const Genome& child, const std::vector<int>& centric) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < child.size(); ++i) n += child[i] == centric[i];
  return n;
}

}  // namespace

// Independent simulation: the centric parent should contribute more positions
// than plain OX with uniform cuts.
TEST(ParentCentricOx, InheritsMoreThanPlainOx) {
  Rng rng(11);
  const int trials = 10000;
  double pc = 0, ox = 0;
  for (int t = 0; t < trials; ++t) {
    const auto a = random_genome(8, rng), b = random_genome(8, rng);
    pc += static_cast<double>(inherited(parent_centric_ox(a, b, rng), a));
    ox += static_cast<double>(inherited(random_order_crossover(a, b, rng), a));
  }
  EXPECT_GT(pc / trials, ox / trials);
}

TEST(ParentCentricOx, SegmentOfLengthLMinusOneKeepsCentric) {
  // The single free slot can only receive the value the centric parent has there.
  const std::vector<int> a{1, 2, 3, 4, 5, 6}, b{6, 5, 4, 3, 2, 1};
  EXPECT_EQ(inherited(order_crossover(a, b, 1, 5), a), 6u);
  EXPECT_EQ(inherited(order_crossover(a, b, 2, 6), a), 6u);
}

TEST(DrawCuts, UniformOverOrderedPairs) {
  Rng rng(2);
  std::vector<int> hits(16, 0);
  for (int i = 0; i < 60000; ++i) {
    auto [a, b] = draw_cuts(4, rng);
    ASSERT_LT(a, b);
    ASSERT_GE(a, 1u);
    ASSERT_LE(b, 4u);
    ++hits[a * 4 + b - 5];
  }
  // 6 valid pairs, each with expectation 10000.
  int used = 0;
  for (int h : hits)
    if (h) {
      ++used;
      EXPECT_NEAR(h, 10000, 500);
    }
  EXPECT_EQ(used, 6);
}

TEST(OperatorProperties, OutputsAreAlwaysPermutations) {
  Rng rng(2024);
  for (int t = 0; t < 100000; ++t) {
    const auto n = uniform_index(rng, 1, 12);
    const auto a = random_genome(n, rng), b = random_genome(n, rng);
    ASSERT_TRUE(validate(random_order_crossover(a, b, rng)));
    ASSERT_TRUE(validate(parent_centric_ox(a, b, rng)));
    ASSERT_TRUE(validate(random_mutation(a, MutationKind::TwoOpt, rng)));
    ASSERT_TRUE(validate(random_mutation(a, MutationKind::Insertion, rng)));
  }
}
