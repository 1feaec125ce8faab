#include "emt/genome.hpp"

#include <sstream>
#include <stdexcept>

namespace emt {

bool validate(std::span<const int> values) {
  const auto n = values.size();
  std::vector<bool> seen(n + 1, false);
  for (int v : values) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void decode_into(std::span<const int> genome, std::size_t task_dim, Permutation& out) {
  if (task_dim < 1 || task_dim > genome.size()) {
    throw std::invalid_argument("invalid task dimension " + std::to_string(task_dim) +
                                " for genome of length " + std::to_string(genome.size()));
  }
  out.clear();
  out.reserve(task_dim);
  const int limit = static_cast<int>(task_dim);
  for (int v : genome) {
    if (v <= limit) out.push_back(v);
  }
}

Permutation decode(std::span<const int> genome, std::size_t task_dim) {
  Permutation out;
  decode_into(genome, task_dim, out);
  return out;
}

std::string to_csv_list(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<int> parse_csv_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer in list: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace emt
