// SPDX-License-Identifier: Apache-2.0
//
// Structure families C_n, their exact or upper-bound log-counts from the
// union-bound arguments, balanced-graph machinery, and the closed-form
// leading-order predictions for the optimal weight.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwg/ratefn.hpp"

namespace rwg {

// Exact reduced fraction; density bookkeeping must not round.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// A small fixed pattern graph H_0 (vertices 0..v-1, simple undirected edges).
struct GraphPattern {
  int v = 0;
  std::vector<std::pair<int, int>> edges;

  std::string name;  // optional display label from the CLI shortcuts

  static GraphPattern triangle();
  static GraphPattern cycle(int length);
  static GraphPattern complete(int vertices);
  // CLI grammar: "v=4;edges=1-2,2-3,3-1,1-4" (1-indexed) or a named
  // shortcut: triangle | c4 | k4.
  static GraphPattern parse(std::string_view text);

  void validate() const;  // simple graph, vertices in range
};

// d(H) = |E| / |V| as an exact rational.
Rational density(const GraphPattern& p);

// True iff no induced subgraph is denser than the whole pattern; brute
// force over vertex subsets (edge deletions only lower density at fixed
// vertex count, so induced subgraphs suffice). Rejects v > 12.
bool is_balanced(const GraphPattern& p);

enum class FamilyKind { Matching, SpanningTree, HamiltonCycle, PathOneTwo, CopyOf };

struct StructureFamily {
  FamilyKind kind;
  int n;                 // vertex scale (K_{n,n} for matchings, K_n otherwise)
  GraphPattern pattern;  // CopyOf only

  static StructureFamily matching(int n);
  static StructureFamily spanning_tree(int n);
  static StructureFamily hamilton_cycle(int n);
  static StructureFamily path_one_two(int n);
  static StructureFamily copy_of(GraphPattern pattern, int n);  // requires balanced

  std::string display_name() const;
};

struct LogCount {
  double value;
  bool is_upper_bound;  // PathOneTwo and CopyOf report a counting bound only
};

// log |C_n|: exact for matchings (log n!), spanning trees ((n-2) log n) and
// Hamilton cycles (log((n-1)!/2)); counting upper bounds 1 + log(n-2)! and
// v log n for the 1-2 paths and H_0-copies. Downstream code must treat the
// flagged values as bounds, never as exact counts.
LogCount log_count(const StructureFamily& f);

// Maximal edge count l over the family, as used by the expectation bound
// (n, n-1, n, n, l for matching/tree/cycle/path/copy).
long long bound_edge_count(const StructureFamily& f);

// Exact number of edges in a full-size member structure (path: longest).
long long structure_edge_count(const StructureFamily& f);

// Leading-order w.h.p. value: n * inv_rate(log n) for the spanning
// structures (the shared n-scale normalization, even for trees with n-1
// edges), l * inv_rate(d^{-1} log n) for copies of a balanced pattern.
double predict(const StructureFamily& f, const RateFunction& rate);

// eq-style expectation bound l * inv_rate(log|C_n| / l).
double expectation_bound(const StructureFamily& f, const RateFunction& rate);

}  // namespace rwg
