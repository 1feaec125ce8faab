#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace emt {

// A permutation of {1, ..., D_max} in the unified search space. Values are
// 1-based everywhere, including exports.
using Genome = std::vector<int>;

// A task-specific permutation of {1, ..., D_k}.
using Permutation = std::vector<int>;

// True iff `values` is a permutation of {1, ..., values.size()}.
bool validate(std::span<const int> values);

// Keeps the values <= task_dim in the order they occur in the genome.
// Throws std::invalid_argument when task_dim is outside [1, genome.size()].
Permutation decode(std::span<const int> genome, std::size_t task_dim);

// Allocation-free variant for hot loops; `out` is resized to task_dim.
// No range checks beyond what decode() performs.
void decode_into(std::span<const int> genome, std::size_t task_dim, Permutation& out);

std::string to_csv_list(std::span<const int> values);
std::vector<int> parse_csv_list(const std::string& text);

}  // namespace emt
