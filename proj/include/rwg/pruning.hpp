// SPDX-License-Identifier: Apache-2.0
//
// The lower-bound constructions: prune the instance down to edges above a
// threshold level and exhibit the wanted structure inside the surviving
// binomial random graph. A certificate is only ever issued with an explicit
// witness; a search miss is reported as absent, never as a bound.

#pragma once

#include <optional>
#include <vector>

#include "rwg/instance.hpp"
#include "rwg/solvers.hpp"
#include "rwg/structures.hpp"

namespace rwg {

struct ThresholdGraph {
  GraphShape shape = GraphShape::Complete;
  int n = 0;
  double level = 0.0;
  std::size_t edge_count = 0;
  // bipartite: adj[i] lists right vertices of left i; complete: symmetric
  std::vector<std::vector<int>> adj;
};

// Subgraph of edges with weight strictly above level.
ThresholdGraph threshold_graph(const WeightedInstance& inst, double level);

// Maximum bipartite matching by Hopcroft-Karp over an explicit adjacency;
// match[j] = left vertex matched to right j, or -1.
struct BipartiteMatching {
  std::vector<int> match_of_right;
  int size = 0;
  bool perfect(int n) const { return size == n; }
};
BipartiteMatching hopcroft_matching(const std::vector<std::vector<int>>& adj_left, int n_right);

struct Certificate {
  FamilyKind family{};
  double level = 0.0;        // pruning threshold (1-delta) * x_n
  double x_n = 0.0;          // threshold sequence value
  double delta = 0.0;
  double p_prime = 0.0;      // P(X > level), the surviving edge probability
  std::size_t threshold_edges = 0;
  bool found = false;
  std::vector<std::pair<int, int>> edges;      // witness (when found)
  std::vector<int> vertex_map;                 // CopyOf witness embedding
  std::optional<double> certified_bound;        // size * level, only with a witness
  std::size_t structure_size = 0;
};

// Build the threshold graph at level (1-delta) * x_n and search it for the
// family's structure: perfect matching / spanning tree / Hamilton cycle /
// 1-2 path / pattern embedding. Exact subset DP under the solver cap for
// cycles and paths, rotation-extension heuristic beyond it.
Certificate certify_lower_bound(const StructureFamily& f, const WeightedInstance& inst,
                                double delta, const Distribution& d,
                                int dp_cap = kSubsetDpCap);

// Re-checks a certificate against its instance: witness validity, per-edge
// level exceedance, bound consistency. Throws on any discrepancy.
void validate_certificate(const StructureFamily& f, const WeightedInstance& inst,
                          const Certificate& cert);

// One certification run per trial, with the exact optimum alongside when the
// family's exact solver applies at this scale. Trials parallelize across
// workers; rows always come back in ascending trial order.
struct CertifyTrialRow {
  int trial = 0;
  double level = 0.0;
  bool found = false;
  std::optional<double> certified_bound;
  std::optional<double> exact_optimum;
  std::optional<double> ratio_to_prediction;  // exact / prediction
};

struct CertifyRun {
  double prediction = 0.0;
  double x_n = 0.0;
  std::vector<CertifyTrialRow> rows;
};

CertifyRun certify_trials(const StructureFamily& f, const Distribution& d, double delta,
                          int trials, std::uint64_t seed, int workers = 1,
                          int dp_cap = kSubsetDpCap);

}  // namespace rwg
