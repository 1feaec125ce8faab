#include "emt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "emt/errors.hpp"

namespace emt {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::TSP: return "TSP";
    case Family::CVRP: return "CVRP";
    case Family::QAP: return "QAP";
    case Family::LOP: return "LOP";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "TSP" || name == "tsp") return Family::TSP;
  if (name == "CVRP" || name == "cvrp" || name == "VRP" || name == "vrp") return Family::CVRP;
  if (name == "QAP" || name == "qap") return Family::QAP;
  if (name == "LOP" || name == "lop") return Family::LOP;
  throw std::invalid_argument("unknown problem family: " + std::string(name));
}

std::int64_t euc2d(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<std::int64_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<std::int64_t> data)
    : n_(n), data_(std::move(data)) {
  if (data_.size() != n * n) throw std::invalid_argument("matrix data size mismatch");
}

TspPayload TspPayload::from_coords(std::vector<Point> coords) {
  TspPayload p;
  const auto n = coords.size();
  p.distance = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.distance(i, j) = euc2d(coords[i], coords[j]);
  p.coords = std::move(coords);
  return p;
}

CvrpPayload CvrpPayload::from_data(Point depot, std::vector<Point> customers,
                                   std::vector<std::int64_t> demands, std::int64_t capacity) {
  if (customers.size() != demands.size())
    throw std::invalid_argument("customer/demand count mismatch");
  if (capacity <= 0) throw InfeasibleInstanceError("capacity must be positive");
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] < 0) throw InfeasibleInstanceError("negative demand");
    if (demands[i] > capacity)
      throw InfeasibleInstanceError("customer " + std::to_string(i + 1) + " demand " +
                                    std::to_string(demands[i]) + " exceeds capacity " +
                                    std::to_string(capacity));
  }
  CvrpPayload p;
  const auto n = customers.size() + 1;
  p.distance = SquareMatrix(n);
  auto node = [&](std::size_t i) -> const Point& { return i == 0 ? depot : customers[i - 1]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.distance(i, j) = euc2d(node(i), node(j));
  p.depot = depot;
  p.customers = std::move(customers);
  p.demands = std::move(demands);
  p.capacity = capacity;
  return p;
}

namespace {

void require_permutation(std::span<const int> perm, std::size_t dim) {
  if (perm.size() != dim)
    throw std::invalid_argument("permutation length " + std::to_string(perm.size()) +
                                " does not match dimension " + std::to_string(dim));
  std::vector<bool> seen(dim + 1, false);
  for (int v : perm) {
    if (v < 1 || static_cast<std::size_t>(v) > dim || seen[v])
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(dim));
    seen[v] = true;
  }
}

double tsp_cost_raw(std::span<const int> perm, const TspPayload& p) {
  const auto n = perm.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) total += p.distance(perm[i] - 1, perm[i + 1] - 1);
  total += p.distance(perm[n - 1] - 1, perm[0] - 1);
  return static_cast<double>(total);
}

double cvrp_cost_raw(std::span<const int> perm, const CvrpPayload& p) {
  std::int64_t total = 0;
  std::int64_t load = 0;
  int prev = 0;  // depot
  for (int c : perm) {
    const auto demand = p.demands[c - 1];
    if (prev != 0 && load + demand > p.capacity) {
      total += p.distance(prev, 0);
      prev = 0;
      load = 0;
    }
    total += p.distance(prev, c);
    load += demand;
    prev = c;
  }
  total += p.distance(prev, 0);
  return static_cast<double>(total);
}

double qap_cost_raw(std::span<const int> perm, const QapPayload& p) {
  const auto n = perm.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = static_cast<std::size_t>(perm[i] - 1);
    for (std::size_t j = 0; j < n; ++j) {
      total += p.flow(i, j) * p.distance(pi, static_cast<std::size_t>(perm[j] - 1));
    }
  }
  return static_cast<double>(total);
}

double lop_cost_raw(std::span<const int> perm, const LopPayload& p) {
  const auto n = perm.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = static_cast<std::size_t>(perm[i] - 1);
    for (std::size_t j = i + 1; j < n; ++j)
      total += p.weights(pi, static_cast<std::size_t>(perm[j] - 1));
  }
  return -static_cast<double>(total);
}

}  // namespace

double tsp_cost(std::span<const int> perm, const TspPayload& payload) {
  require_permutation(perm, payload.coords.size());
  return tsp_cost_raw(perm, payload);
}

double cvrp_cost(std::span<const int> perm, const CvrpPayload& payload) {
  require_permutation(perm, payload.customers.size());
  return cvrp_cost_raw(perm, payload);
}

double cvrp_routes_cost(const std::vector<std::vector<int>>& routes, const CvrpPayload& payload) {
  std::vector<int> flat;
  for (const auto& r : routes) {
    std::int64_t load = 0;
    for (int c : r) {
      if (c < 1 || static_cast<std::size_t>(c) > payload.customers.size())
        throw std::invalid_argument("route references unknown customer " + std::to_string(c));
      load += payload.demands[c - 1];
      flat.push_back(c);
    }
    if (load > payload.capacity)
      throw std::invalid_argument("route load " + std::to_string(load) + " exceeds capacity");
  }
  require_permutation(flat, payload.customers.size());
  std::int64_t total = 0;
  for (const auto& r : routes) {
    if (r.empty()) continue;
    int prev = 0;
    for (int c : r) {
      total += payload.distance(prev, c);
      prev = c;
    }
    total += payload.distance(prev, 0);
  }
  return static_cast<double>(total);
}

double qap_cost(std::span<const int> perm, const QapPayload& payload) {
  require_permutation(perm, payload.flow.size());
  return qap_cost_raw(perm, payload);
}

double lop_cost(std::span<const int> perm, const LopPayload& payload) {
  require_permutation(perm, payload.weights.size());
  return lop_cost_raw(perm, payload);
}

namespace {

std::size_t payload_dimension(const Payload& payload) {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TspPayload>) return p.coords.size();
        else if constexpr (std::is_same_v<T, CvrpPayload>) return p.customers.size();
        else if constexpr (std::is_same_v<T, QapPayload>) {
          if (p.flow.size() != p.distance.size())
            throw std::invalid_argument("QAP flow and distance sizes differ");
          return p.flow.size();
        } else return p.weights.size();
      },
      payload);
}

}  // namespace

TaskDefinition::TaskDefinition(std::string name, Payload payload, std::optional<double> known_optimum)
    : name_(std::move(name)),
      family_(static_cast<Family>(payload.index())),
      dimension_(payload_dimension(payload)),
      payload_(std::move(payload)),
      known_optimum_(known_optimum) {
  if (dimension_ == 0) throw std::invalid_argument("task " + name_ + " has dimension 0");
}

double TaskDefinition::cost(std::span<const int> perm) const {
  require_permutation(perm, dimension_);
  return cost_unchecked(perm);
}

double TaskDefinition::cost_unchecked(std::span<const int> perm) const {
  switch (family_) {
    case Family::TSP: return tsp_cost_raw(perm, std::get<TspPayload>(payload_));
    case Family::CVRP: return cvrp_cost_raw(perm, std::get<CvrpPayload>(payload_));
    case Family::QAP: return qap_cost_raw(perm, std::get<QapPayload>(payload_));
    case Family::LOP: return lop_cost_raw(perm, std::get<LopPayload>(payload_));
  }
  return 0.0;
}

namespace {

using PointKey = std::pair<double, double>;

std::vector<Point> all_points(const TaskDefinition& t) {
  if (t.family() == Family::TSP) return std::get<TspPayload>(t.payload()).coords;
  const auto& p = std::get<CvrpPayload>(t.payload());
  std::vector<Point> pts{p.depot};
  pts.insert(pts.end(), p.customers.begin(), p.customers.end());
  return pts;
}

// Size of the multiset intersection.
template <typename Key>
std::size_t multiset_overlap(const std::vector<Key>& a, const std::vector<Key>& b) {
  std::map<Key, std::size_t> counts;
  for (const auto& k : b) ++counts[k];
  std::size_t shared = 0;
  for (const auto& k : a) {
    auto it = counts.find(k);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++shared;
    }
  }
  return shared;
}

int floor_percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return 0;
  return static_cast<int>((100 * part) / whole);
}

std::size_t equal_entries(const SquareMatrix& a, const SquareMatrix& b, std::size_t n) {
  std::size_t eq = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eq += a(i, j) == b(i, j);
  return eq;
}

using EdgeKey = std::pair<PointKey, PointKey>;

EdgeKey edge_key(const Point& a, const Point& b) {
  PointKey ka{a.x, a.y}, kb{b.x, b.y};
  if (kb < ka) std::swap(ka, kb);
  return {ka, kb};
}

std::vector<EdgeKey> tour_edges(const TaskDefinition& t, std::span<const int> tour) {
  if (t.family() != Family::TSP) throw std::invalid_argument("tour overlap requires TSP tasks");
  const auto& coords = std::get<TspPayload>(t.payload()).coords;
  std::vector<EdgeKey> edges;
  for (std::size_t i = 0; i < tour.size(); ++i)
    edges.push_back(edge_key(coords[tour[i] - 1], coords[tour[(i + 1) % tour.size()] - 1]));
  return edges;
}

std::vector<EdgeKey> route_edges(const TaskDefinition& t, const std::vector<std::vector<int>>& routes) {
  if (t.family() != Family::CVRP) throw std::invalid_argument("route overlap requires CVRP tasks");
  const auto& p = std::get<CvrpPayload>(t.payload());
  auto node = [&](int i) -> const Point& { return i == 0 ? p.depot : p.customers[i - 1]; };
  std::vector<EdgeKey> edges;
  for (const auto& r : routes) {
    if (r.empty()) continue;
    int prev = 0;
    for (int c : r) {
      edges.push_back(edge_key(node(prev), node(c)));
      prev = c;
    }
    edges.push_back(edge_key(node(prev), node(0)));
  }
  return edges;
}

}  // namespace

int similarity(const TaskDefinition& a, const TaskDefinition& b) {
  if (a.family() != b.family())
    throw std::invalid_argument("similarity across families: " + a.name() + " vs " + b.name());
  switch (a.family()) {
    case Family::TSP:
    case Family::CVRP: {
      auto pa = all_points(a), pb = all_points(b);
      if (pa.size() > pb.size()) std::swap(pa, pb);
      std::vector<PointKey> ka, kb;
      for (const auto& p : pa) ka.emplace_back(p.x, p.y);
      for (const auto& p : pb) kb.emplace_back(p.x, p.y);
      return floor_percent(multiset_overlap(ka, kb), ka.size());
    }
    case Family::QAP: {
      const auto& qa = std::get<QapPayload>(a.payload());
      const auto& qb = std::get<QapPayload>(b.payload());
      const auto n = std::min(qa.flow.size(), qb.flow.size());
      const auto eq = equal_entries(qa.flow, qb.flow, n) + equal_entries(qa.distance, qb.distance, n);
      return floor_percent(eq, 2 * n * n);
    }
    case Family::LOP: {
      const auto& la = std::get<LopPayload>(a.payload());
      const auto& lb = std::get<LopPayload>(b.payload());
      const auto n = std::min(la.weights.size(), lb.weights.size());
      return floor_percent(equal_entries(la.weights, lb.weights, n), n * n);
    }
  }
  return 0;
}

int tour_edge_overlap(const TaskDefinition& a, std::span<const int> tour_a,
                      const TaskDefinition& b, std::span<const int> tour_b) {
  auto ea = tour_edges(a, tour_a), eb = tour_edges(b, tour_b);
  if (ea.size() > eb.size()) std::swap(ea, eb);
  return floor_percent(multiset_overlap(ea, eb), ea.size());
}

int route_edge_overlap(const TaskDefinition& a, const std::vector<std::vector<int>>& routes_a,
                       const TaskDefinition& b, const std::vector<std::vector<int>>& routes_b) {
  auto ea = route_edges(a, routes_a), eb = route_edges(b, routes_b);
  if (ea.size() > eb.size()) std::swap(ea, eb);
  return floor_percent(multiset_overlap(ea, eb), ea.size());
}

}  // namespace emt
