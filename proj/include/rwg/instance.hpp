// SPDX-License-Identifier: Apache-2.0
//
// One realized weighted complete (or complete bipartite) graph. Weights are
// a pure function of (distribution, seed, trial, edge index): the instance
// is reproducible edge by edge, across runs, platforms and worker counts.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rwg/dist.hpp"
#include "rwg/structures.hpp"

namespace rwg {

enum class GraphShape { BipartiteComplete, Complete };

struct Provenance {
  std::string dist_spec;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

struct WeightedInstance {
  GraphShape shape = GraphShape::Complete;
  int n = 0;
  std::vector<double> w;
  Provenance prov;

  // canonical index of the unordered pair {i, j}, i < j, in K_n
  static std::size_t pair_index(int n, int i, int j);

  std::size_t edge_count() const;
  // bipartite: weight of (left i, right j); complete: weight of {i, j}
  double at(int i, int j) const;
};

// Shape for a family: matchings live on K_{n,n}, everything else on K_n.
GraphShape family_shape(const StructureFamily& f);

// Draw the instance for (family, distribution, seed, trial).
WeightedInstance gen_instance(const StructureFamily& f, const Distribution& d,
                              std::uint64_t seed, std::uint64_t trial);

}  // namespace rwg
