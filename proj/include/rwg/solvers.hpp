// SPDX-License-Identifier: Apache-2.0
//
// Exact maximum-weight structure solvers over a realized instance, plus
// the brute-force enumeration oracle for tiny n and the independent
// structure validator. All solvers are deterministic: ties break towards
// the lexicographically earliest choice everywhere.

#pragma once

#include <vector>

#include "rwg/instance.hpp"
#include "rwg/structures.hpp"

namespace rwg {

struct Solution {
  FamilyKind family{};
  std::vector<std::pair<int, int>> edges;
  double weight = 0.0;
  std::vector<int> vertex_map;  // CopyOf: image of pattern vertex k
};

inline constexpr int kSubsetDpCap = 20;  // 2^n * n doubles; ~168 MB at the cap

// Exact max-weight perfect matching in K_{n,n} via shortest augmenting
// paths with dual potentials on negated weights (cubic time).
Solution max_matching(const WeightedInstance& inst);

// Exact max spanning tree: greedy in decreasing weight order with
// disjoint-set cycle detection; ties by canonical edge index.
Solution max_spanning_tree(const WeightedInstance& inst);

// Exact max Hamilton cycle via Held-Karp subset DP; rejects n > cap.
Solution max_hamilton_cycle(const WeightedInstance& inst, int cap = kSubsetDpCap);

// Exact max-weight simple path from vertex 0 to vertex 1 over all lengths,
// subset DP with endpoint tracking; includes the direct edge.
Solution max_path_1_2(const WeightedInstance& inst, int cap = kSubsetDpCap);

// Exact max-weight copy of a balanced pattern via backtracking with an
// optimistic-completion branch-and-bound cut. Rejects pattern.v > 6 or
// n > 64.
Solution max_copy(const WeightedInstance& inst, const GraphPattern& pattern);

// Dispatch on the family; enforces each solver's cap up front.
Solution solve_family(const StructureFamily& f, const WeightedInstance& inst,
                      int cap = kSubsetDpCap);

// Exhaustive enumeration oracle. Caps: matchings n <= 7, other spanning
// families n <= 8, patterns v <= 4.
double brute_force(const StructureFamily& f, const WeightedInstance& inst);

// Independent re-check of structure membership (degrees, connectivity,
// simplicity, injectivity) and of the reported weight. Throws on failure.
void validate_solution(const StructureFamily& f, const WeightedInstance& inst,
                       const Solution& sol);

}  // namespace rwg
