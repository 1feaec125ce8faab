#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "emt/errors.hpp"
#include "emt/problems.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace emt;
using namespace emt::fixture;

namespace {

template <class Oracle>
void all_permutations(const TaskDefinition& task, Oracle oracle) {
  std::vector<int> perm(task.dimension());
  std::iota(perm.begin(), perm.end(), 1);
  do {
    ASSERT_EQ(task.cost(perm), oracle(perm)) << task.name();
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

TEST(Euc2d, RoundsHalfUp) {
  EXPECT_EQ(euc2d({0, 0}, {3, 4}), 5);
  EXPECT_EQ(euc2d({0, 0}, {1, 1}), 1);
  EXPECT_EQ(euc2d({0, 0}, {0, 2.5}), 3);
}

TEST(TspCost, Examples) {
  TaskDefinition t("two", TspPayload::from_coords({{0, 0}, {3, 4}}));
  EXPECT_EQ(t.cost(std::vector<int>{1, 2}), 10);
  EXPECT_THROW(t.cost(std::vector<int>{1}), std::invalid_argument);
  EXPECT_THROW(t.cost(std::vector<int>{1, 1}), std::invalid_argument);
}

TEST(TspCost, RotationAndReversalInvariant) {
  Rng rng(1);
  const auto t = fixture::random_tsp("r", 9, rng);
  std::vector<int> perm{4, 2, 9, 1, 7, 3, 8, 5, 6};
  const double c = t.cost(perm);
  for (int r = 0; r < 9; ++r) {
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    EXPECT_EQ(t.cost(perm), c);
  }
  std::reverse(perm.begin(), perm.end());
  EXPECT_EQ(t.cost(perm), c);
}

TEST(CvrpCost, SingleCustomerOutAndBack) {
  TaskDefinition t("one", CvrpPayload::from_data({0, 0}, {{3, 4}}, {5}, 10));
  EXPECT_EQ(t.cost(std::vector<int>{1}), 10);
}

TEST(CvrpCost, LargeCapacityDegeneratesToTour) {
  Rng rng(2);
  std::vector<Point> pts;
  for (int i = 0; i < 7; ++i) pts.push_back({double(uniform_index(rng, 0, 50)), double(uniform_index(rng, 0, 50))});
  Point depot{25, 25};
  TaskDefinition v("v", CvrpPayload::from_data(depot, pts, std::vector<std::int64_t>(7, 3), 1000));
  std::vector<Point> with_depot{depot};
  with_depot.insert(with_depot.end(), pts.begin(), pts.end());
  TaskDefinition t("t", TspPayload::from_coords(with_depot));
  const std::vector<int> order{3, 1, 7, 2, 5, 4, 6};
  std::vector<int> tour{1};
  for (int c : order) tour.push_back(c + 1);
  EXPECT_EQ(v.cost(order), t.cost(tour));
}

TEST(CvrpCost, SixCustomerSplitOracle) {
  // Capacity 10, demands force splits: order 1..6 gives routes {1,2},{3,4},{5},{6}.
  const std::vector<Point> c{{1, 0}, {2, 0}, {0, 3}, {0, 4}, {-5, 0}, {0, -6}};
  TaskDefinition t("six", CvrpPayload::from_data({0, 0}, c, {4, 5, 6, 3, 8, 9}, 10));
  // {1,2}: 1+1+2 = 4; {3,4}: 3+1+4 = 8; {5}: 10; {6}: 12.
  EXPECT_EQ(t.cost(std::vector<int>{1, 2, 3, 4, 5, 6}), 34);
  all_permutations(t, [&](const std::vector<int>& p) { return naive_cvrp(p, std::get<CvrpPayload>(t.payload())); });
}

TEST(CvrpCost, InfeasibleDemandRejected) {
  EXPECT_THROW(CvrpPayload::from_data({0, 0}, {{1, 1}}, {11}, 10), InfeasibleInstanceError);
}

TEST(CvrpCost, RoutesCost) {
  const std::vector<Point> c{{1, 0}, {2, 0}, {0, 3}};
  const auto p = CvrpPayload::from_data({0, 0}, c, {1, 1, 1}, 10);
  EXPECT_EQ(cvrp_routes_cost({{1, 2}, {3}}, p), 4 + 6);
}

TEST(QapCost, ZeroFlow) {
  Rng rng(3);
  TaskDefinition t("z", QapPayload{SquareMatrix(4), fixture::random_matrix(4, rng, 9, true)});
  EXPECT_EQ(t.cost(std::vector<int>{2, 4, 1, 3}), 0);
}

TEST(QapCost, ThreeByThreeHandSum) {
  const SquareMatrix flow(3, {0, 1, 2, 3, 0, 4, 5, 6, 0});
  const SquareMatrix dist(3, {0, 7, 8, 7, 0, 9, 8, 9, 0});
  TaskDefinition t("q3", QapPayload{flow, dist});
  // perm [2,3,1]: f01*d(2,3)+f02*d(2,1)+f10*d(3,2)+f12*d(3,1)+f20*d(1,2)+f21*d(1,3)
  //             = 1*9 + 2*7 + 3*9 + 4*8 + 5*7 + 6*8 = 165
  EXPECT_EQ(t.cost(std::vector<int>{2, 3, 1}), 165);
}

TEST(LopCost, IdentityAndReversal) {
  const SquareMatrix w(3, {0, 1, 2, 3, 0, 4, 5, 6, 0});
  TaskDefinition t("l3", LopPayload{w});
  EXPECT_EQ(t.cost(std::vector<int>{1, 2, 3}), -(1 + 2 + 4));
  EXPECT_EQ(t.cost(std::vector<int>{3, 2, 1}), -(3 + 5 + 6));
}

TEST(OracleEquivalence, AllPermutationsUpToEight) {
  Rng rng(42);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto tsp = fixture::random_tsp("tsp", std::max<std::size_t>(n, 2), rng);
    const auto& tp = std::get<TspPayload>(tsp.payload());
    all_permutations(tsp, [&](const std::vector<int>& p) { return naive_tsp(p, tp.coords); });

    const auto vrp = fixture::random_cvrp("vrp", n, rng);
    all_permutations(vrp, [&](const std::vector<int>& p) { return naive_cvrp(p, std::get<CvrpPayload>(vrp.payload())); });

    const auto qap = fixture::random_qap("qap", n, rng);
    all_permutations(qap, [&](const std::vector<int>& p) { return naive_qap(p, std::get<QapPayload>(qap.payload())); });

    const auto lop = fixture::random_lop("lop", n, rng);
    all_permutations(lop, [&](const std::vector<int>& p) { return naive_lop(p, std::get<LopPayload>(lop.payload())); });
  }
}

TEST(Similarity, SelfIsHundred) {
  Rng rng(5);
  for (const auto& t : {fixture::random_tsp("a", 10, rng), fixture::random_cvrp("b", 10, rng),
                        fixture::random_qap("c", 6, rng), fixture::random_lop("d", 6, rng)})
    EXPECT_EQ(similarity(t, t), 100);
}

TEST(Similarity, PointOverlapOverSmallerInstance) {
  TaskDefinition a("a", TspPayload::from_coords({{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  TaskDefinition b("b", TspPayload::from_coords({{0, 0}, {1, 1}, {9, 9}, {8, 8}, {7, 7}, {6, 6}}));
  EXPECT_EQ(similarity(a, b), 50);
  EXPECT_EQ(similarity(b, a), 50);
  TaskDefinition c("c", TspPayload::from_coords({{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(similarity(a, c), 100);
}

TEST(Similarity, CrossFamilyRejected) {
  Rng rng(5);
  EXPECT_THROW(similarity(fixture::random_tsp("a", 5, rng), fixture::random_qap("b", 5, rng)), std::invalid_argument);
}

TEST(EdgeOverlap, SharedEdgesOfTours) {
  TaskDefinition a("a", TspPayload::from_coords({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  const std::vector<int> square{1, 2, 3, 4}, crossed{1, 3, 2, 4};
  EXPECT_EQ(tour_edge_overlap(a, square, a, square), 100);
  EXPECT_EQ(tour_edge_overlap(a, square, a, std::vector<int>{4, 3, 2, 1}), 100);
  EXPECT_EQ(tour_edge_overlap(a, square, a, crossed), 50);
}

TEST(EdgeOverlap, RouteSets) {
  TaskDefinition v("v", CvrpPayload::from_data({0, 0}, {{1, 0}, {2, 0}, {0, 3}}, {1, 1, 1}, 10));
  const std::vector<std::vector<int>> r1{{1, 2}, {3}}, r2{{2, 1}, {3}};
  EXPECT_EQ(route_edge_overlap(v, r1, v, r2), 100);
}
