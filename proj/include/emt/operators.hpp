#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

#include "emt/genome.hpp"
#include "emt/rng.hpp"

namespace emt {

enum class MutationKind { TwoOpt, Insertion };

std::string_view mutation_name(MutationKind k);

// All index arguments are 1-based and inclusive, matching how positions are
// written in the exported genomes.

// Davis order crossover. Keeps p1[cut1..cut2] in place and fills the rest,
// starting after cut2 and wrapping, with p2's values in p2's cyclic order
// from cut2+1.
Genome order_crossover(std::span<const int> p1, std::span<const int> p2, std::size_t cut1,
                       std::size_t cut2);

// Reverses g[i..j]; requires i < j.
Genome two_opt_mutation(std::span<const int> g, std::size_t i, std::size_t j);

// Moves the value at `from` so that it ends up at position `to`.
Genome insertion_mutation(std::span<const int> g, std::size_t from, std::size_t to);

// Order crossover whose retained segment comes from `centric` and has a
// length uniform in [ceil(L/2), L-1] with a uniform non-wrapping start.
Genome parent_centric_ox(std::span<const int> centric, std::span<const int> other, Rng& rng);

// Uniform (cut1, cut2) with 1 <= cut1 < cut2 <= length; length >= 2.
std::pair<std::size_t, std::size_t> draw_cuts(std::size_t length, Rng& rng);

// OX with cuts from draw_cuts. Genomes shorter than 2 are copied from p1.
Genome random_order_crossover(std::span<const int> p1, std::span<const int> p2, Rng& rng);

// Applies `kind` at uniformly drawn valid indices. Genomes shorter than 2 are copied.
Genome random_mutation(std::span<const int> g, MutationKind kind, Rng& rng);

}  // namespace emt
