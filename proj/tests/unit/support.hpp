#pragma once

#include <string>
#include <vector>

#include "emt/problems.hpp"
#include "emt/rng.hpp"

namespace emt::fixture {

inline TaskDefinition random_tsp(const std::string& name, std::size_t n, Rng& rng) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back({static_cast<double>(uniform_index(rng, 0, 1000)), static_cast<double>(uniform_index(rng, 0, 1000))});
  return TaskDefinition(name, TspPayload::from_coords(std::move(pts)));
}

inline TaskDefinition random_cvrp(const std::string& name, std::size_t customers, Rng& rng) {
  std::vector<Point> pts;
  std::vector<std::int64_t> demand;
  for (std::size_t i = 0; i < customers; ++i) {
    pts.push_back({static_cast<double>(uniform_index(rng, 0, 100)), static_cast<double>(uniform_index(rng, 0, 100))});
    demand.push_back(static_cast<std::int64_t>(uniform_index(rng, 1, 30)));
  }
  return TaskDefinition(name, CvrpPayload::from_data({50, 50}, std::move(pts), std::move(demand), 60));
}

inline SquareMatrix random_matrix(std::size_t n, Rng& rng, std::size_t hi, bool zero_diagonal) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = (zero_diagonal && i == j) ? 0 : static_cast<std::int64_t>(uniform_index(rng, 0, hi));
  return m;
}

inline TaskDefinition random_qap(const std::string& name, std::size_t n, Rng& rng) {
  return TaskDefinition(name, QapPayload{random_matrix(n, rng, 9, true), random_matrix(n, rng, 9, true)});
}

inline TaskDefinition random_lop(const std::string& name, std::size_t n, Rng& rng) {
  return TaskDefinition(name, LopPayload{random_matrix(n, rng, 50, true)});
}

// Small mixed-family problem set for solver tests.
inline std::vector<TaskDefinition> small_tasks(std::uint64_t seed = 3) {
  Rng rng(seed);
  std::vector<TaskDefinition> t;
  t.push_back(random_tsp("tsp12", 12, rng));
  t.push_back(random_tsp("tsp10", 10, rng));
  t.push_back(random_qap("qap8", 8, rng));
  return t;
}

}  // namespace emt::fixture
