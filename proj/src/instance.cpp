// SPDX-License-Identifier: Apache-2.0

#include "rwg/instance.hpp"

#include <stdexcept>

namespace rwg {

std::size_t WeightedInstance::pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  // row-major upper triangle: offset of row i plus distance to j
  const std::size_t ni = static_cast<std::size_t>(n);
  const std::size_t si = static_cast<std::size_t>(i);
  return si * ni - si * (si + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

std::size_t WeightedInstance::edge_count() const {
  const std::size_t ni = static_cast<std::size_t>(n);
  return shape == GraphShape::BipartiteComplete ? ni * ni : ni * (ni - 1) / 2;
}

double WeightedInstance::at(int i, int j) const {
  if (shape == GraphShape::BipartiteComplete) {
    return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  }
  if (i == j) throw std::invalid_argument("complete graphs have no loops");
  return w[pair_index(n, i, j)];
}

GraphShape family_shape(const StructureFamily& f) {
  return f.kind == FamilyKind::Matching ? GraphShape::BipartiteComplete : GraphShape::Complete;
}

WeightedInstance gen_instance(const StructureFamily& f, const Distribution& d,
                              std::uint64_t seed, std::uint64_t trial) {
  WeightedInstance inst;
  inst.shape = family_shape(f);
  inst.n = f.n;
  inst.prov = Provenance{d.spec_string(), seed, trial};
  inst.w.resize(inst.edge_count());
  d.fill(inst.w, seed, trial, 0);
  return inst;
}

}  // namespace rwg
