#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace emt {

enum class Family { TSP, CVRP, QAP, LOP };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// TSPLIB EUC_2D: Euclidean distance rounded half-up to the nearest integer.
std::int64_t euc2d(const Point& a, const Point& b);

// Dense row-major square matrix of integers.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  SquareMatrix(std::size_t n, std::vector<std::int64_t> data);

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const std::int64_t> raw() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

struct TspPayload {
  std::vector<Point> coords;
  SquareMatrix distance;  // precomputed EUC_2D

  static TspPayload from_coords(std::vector<Point> coords);
};

struct CvrpPayload {
  Point depot;
  std::vector<Point> customers;
  std::vector<std::int64_t> demands;
  std::int64_t capacity = 0;
  SquareMatrix distance;  // node 0 is the depot, node i is customer i

  // Throws InfeasibleInstanceError when a demand exceeds the capacity.
  static CvrpPayload from_data(Point depot, std::vector<Point> customers,
                               std::vector<std::int64_t> demands, std::int64_t capacity);
};

struct QapPayload {
  SquareMatrix flow;
  SquareMatrix distance;
};

struct LopPayload {
  SquareMatrix weights;
};

using Payload = std::variant<TspPayload, CvrpPayload, QapPayload, LopPayload>;

// Closed tour length under EUC_2D rounding.
double tsp_cost(std::span<const int> perm, const TspPayload& payload);
// Greedy capacity split in permutation order, summed route lengths.
double cvrp_cost(std::span<const int> perm, const CvrpPayload& payload);
// Sum of depot-anchored route lengths for an explicit route set (customer ids 1..n).
double cvrp_routes_cost(const std::vector<std::vector<int>>& routes, const CvrpPayload& payload);
// sum_i sum_j flow[i][j] * distance[perm[i]][perm[j]].
double qap_cost(std::span<const int> perm, const QapPayload& payload);
// Negated upper-triangle sum after reordering rows and columns by perm.
double lop_cost(std::span<const int> perm, const LopPayload& payload);

class TaskDefinition {
 public:
  TaskDefinition(std::string name, Payload payload, std::optional<double> known_optimum = {});

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  std::size_t dimension() const { return dimension_; }
  const Payload& payload() const { return payload_; }
  const std::optional<double>& known_optimum() const { return known_optimum_; }
  void set_known_optimum(std::optional<double> value) { known_optimum_ = value; }

  // Validates `perm` against the dimension; throws std::invalid_argument.
  double cost(std::span<const int> perm) const;
  // Same as cost() without validation. `perm` must be a permutation of {1..dimension}.
  double cost_unchecked(std::span<const int> perm) const;

 private:
  std::string name_;
  Family family_;
  std::size_t dimension_;
  Payload payload_;
  std::optional<double> known_optimum_;
};

// Overlap percentage in [0, 100], floored. Same-family only.
//   TSP/CVRP: coordinate points of the smaller instance (depot included for
//             CVRP) also present in the larger one, exact equality, multiset.
//   QAP:      equal entries of flow and distance on the shared leading block,
//             over 2 * n_small^2.
//   LOP:      equal weight entries on the shared leading block, over n_small^2.
int similarity(const TaskDefinition& a, const TaskDefinition& b);

// Undirected edge overlap of two closed tours (TSP) or route sets (CVRP, depot
// as node 0) as a floored percentage of the smaller edge count. Edges are
// compared by coordinates, so tours of different instances can be compared.
int tour_edge_overlap(const TaskDefinition& a, std::span<const int> tour_a,
                      const TaskDefinition& b, std::span<const int> tour_b);
int route_edge_overlap(const TaskDefinition& a, const std::vector<std::vector<int>>& routes_a,
                       const TaskDefinition& b, const std::vector<std::vector<int>>& routes_b);

}  // namespace emt
