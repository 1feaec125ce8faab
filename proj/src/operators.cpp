#include "emt/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace emt {

std::string_view mutation_name(MutationKind k) {
  return k == MutationKind::TwoOpt ? "2-opt" : "insertion";
}

Genome order_crossover(std::span<const int> p1, std::span<const int> p2, std::size_t cut1,
                       std::size_t cut2) {
  const auto n = p1.size();
  if (p2.size() != n) throw std::invalid_argument("order_crossover: parent length mismatch");
  if (cut1 < 1 || cut1 > cut2 || cut2 > n)
    throw std::invalid_argument("order_crossover: invalid cuts (" + std::to_string(cut1) + ", " +
                                std::to_string(cut2) + ") for length " + std::to_string(n));
  Genome child(n, 0);
  std::vector<bool> used(n + 1, false);
  for (std::size_t k = cut1 - 1; k < cut2; ++k) {
    child[k] = p1[k];
    used[p1[k]] = true;
  }
  std::size_t write = cut2 % n;
  for (std::size_t step = 0; step < n; ++step) {
    const int v = p2[(cut2 + step) % n];
    if (used[v]) continue;
    child[write] = v;
    used[v] = true;
    write = (write + 1) % n;
  }
  return child;
}

Genome two_opt_mutation(std::span<const int> g, std::size_t i, std::size_t j) {
  if (i < 1 || i >= j || j > g.size())
    throw std::invalid_argument("two_opt_mutation: need 1 <= i < j <= length");
  Genome out(g.begin(), g.end());
  std::reverse(out.begin() + (i - 1), out.begin() + j);
  return out;
}

Genome insertion_mutation(std::span<const int> g, std::size_t from, std::size_t to) {
  if (from < 1 || from > g.size() || to < 1 || to > g.size())
    throw std::invalid_argument("insertion_mutation: index out of range");
  if (from == to) throw std::invalid_argument("insertion_mutation: from must differ from to");
  Genome out(g.begin(), g.end());
  const int v = out[from - 1];
  out.erase(out.begin() + (from - 1));
  out.insert(out.begin() + (to - 1), v);
  return out;
}

Genome parent_centric_ox(std::span<const int> centric, std::span<const int> other, Rng& rng) {
  const auto n = centric.size();
  if (other.size() != n) throw std::invalid_argument("parent_centric_ox: parent length mismatch");
  if (n < 2) return Genome(centric.begin(), centric.end());
  const auto len = uniform_index(rng, (n + 1) / 2, n - 1);
  const auto start = uniform_index(rng, 1, n - len + 1);
  return order_crossover(centric, other, start, start + len - 1);
}

std::pair<std::size_t, std::size_t> draw_cuts(std::size_t length, Rng& rng) {
  if (length < 2) throw std::invalid_argument("draw_cuts: length must be at least 2");
  auto a = uniform_index(rng, 1, length);
  auto b = uniform_index(rng, 1, length - 1);
  if (b >= a) ++b;
  if (a > b) std::swap(a, b);
  return {a, b};
}

Genome random_order_crossover(std::span<const int> p1, std::span<const int> p2, Rng& rng) {
  if (p1.size() < 2) return Genome(p1.begin(), p1.end());
  const auto [c1, c2] = draw_cuts(p1.size(), rng);
  return order_crossover(p1, p2, c1, c2);
}

Genome random_mutation(std::span<const int> g, MutationKind kind, Rng& rng) {
  if (g.size() < 2) return Genome(g.begin(), g.end());
  const auto [a, b] = draw_cuts(g.size(), rng);
  if (kind == MutationKind::TwoOpt) return two_opt_mutation(g, a, b);
  return coin(rng) ? insertion_mutation(g, a, b) : insertion_mutation(g, b, a);
}

}  // namespace emt
