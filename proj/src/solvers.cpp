// SPDX-License-Identifier: Apache-2.0

#include "rwg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rwg/kernels.hpp"

namespace rwg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

void require_shape(const WeightedInstance& inst, GraphShape shape, const char* who) {
  if (inst.shape != shape) reject(std::string(who) + ": wrong instance shape");
}

std::vector<std::pair<int, int>> complete_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

double edge_sum(const WeightedInstance& inst, const std::vector<std::pair<int, int>>& edges) {
  double total = 0.0;
  for (auto [a, b] : edges) total += inst.at(a, b);
  return total;
}

}  // namespace

Solution max_matching(const WeightedInstance& inst) {
  require_shape(inst, GraphShape::BipartiteComplete, "max_matching");
  const int n = inst.n;
  const auto scan = kernels::active().matching_relax_scan;
  const double* w = inst.w.data();

  // Shortest augmenting paths on negated weights, with the potential
  // updates settled lazily from join-time records so the inner Dijkstra
  // pass is a single data-parallel scan per tree growth step.
  std::vector<int> match_row(static_cast<std::size_t>(n) + 1, -1);  // [n] = virtual root
  std::vector<double> u(n, 0.0), v(n, 0.0);
  std::vector<double> minv(n), way(n), used_mask(n), join_d(n);
  std::vector<int> used_cols;
  used_cols.reserve(n);

  for (int i = 0; i < n; ++i) {
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(way.begin(), way.end(), -1.0);
    std::fill(used_mask.begin(), used_mask.end(), 0.0);
    used_cols.clear();
    double dist = 0.0;  // cumulative dual adjustment
    double join_virtual = 0.0;
    int j0 = n;
    match_row[n] = i;
    for (;;) {
      int i0;
      if (j0 == n) {
        join_virtual = dist;
        i0 = i;
      } else {
        used_mask[j0] = kInf;
        join_d[j0] = dist;
        used_cols.push_back(j0);
        i0 = match_row[j0];
      }
      double delta = 0.0;
      const double add = dist - u[i0];
      const std::size_t j1 =
          scan(w + static_cast<std::size_t>(i0) * static_cast<std::size_t>(n), add, v.data(),
               used_mask.data(), minv.data(), way.data(), static_cast<double>(j0),
               static_cast<std::size_t>(n), &delta);
      dist = delta;
      j0 = static_cast<int>(j1);
      if (match_row[j0] < 0) break;
    }
    u[i] += dist - join_virtual;
    for (const int jc : used_cols) {
      const double amt = dist - join_d[jc];
      u[match_row[jc]] += amt;
      v[jc] -= amt;
    }
    int jcur = j0;
    for (;;) {
      const int jprev = static_cast<int>(way[jcur]);
      match_row[jcur] = (jprev == n) ? i : match_row[jprev];
      if (jprev == n) break;
      jcur = jprev;
    }
  }

  Solution sol;
  sol.family = FamilyKind::Matching;
  std::vector<int> col_of_row(n, -1);
  for (int j = 0; j < n; ++j) col_of_row[match_row[j]] = j;
  for (int i = 0; i < n; ++i) sol.edges.emplace_back(i, col_of_row[i]);
  sol.weight = edge_sum(inst, sol.edges);
  return sol;
}

Solution max_spanning_tree(const WeightedInstance& inst) {
  require_shape(inst, GraphShape::Complete, "max_spanning_tree");
  const int n = inst.n;
  if (n < 2) reject("max_spanning_tree needs n >= 2");
  const auto pairs = complete_pairs(n);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (inst.w[a] != inst.w[b]) return inst.w[a] > inst.w[b];
    return a < b;
  });

  DisjointSet dsu(n);
  Solution sol;
  sol.family = FamilyKind::SpanningTree;
  for (const std::size_t e : order) {
    if (dsu.unite(pairs[e].first, pairs[e].second)) {
      sol.edges.push_back(pairs[e]);
      if (static_cast<int>(sol.edges.size()) == n - 1) break;
    }
  }
  std::sort(sol.edges.begin(), sol.edges.end());
  sol.weight = edge_sum(inst, sol.edges);
  return sol;
}

namespace {

// Shared subset-DP plumbing for the Hamilton cycle / 1-2 path solvers.
// Vertex k in 1..n-1 maps to bit k-1; dp is indexed dp[set * m + bit].
struct SubsetDp {
  int n, m;
  std::vector<double> dp;
  explicit SubsetDp(int n_)
      : n(n_),
        m(n_ - 1),
        dp((std::size_t{1} << (n_ - 1)) * static_cast<std::size_t>(n_ - 1), -kInf) {}
  double& at(std::uint32_t set, int bit) {
    return dp[static_cast<std::size_t>(set) * static_cast<std::size_t>(m) +
              static_cast<std::size_t>(bit)];
  }
  double get(std::uint32_t set, int bit) const {
    return dp[static_cast<std::size_t>(set) * static_cast<std::size_t>(m) +
              static_cast<std::size_t>(bit)];
  }
};

}  // namespace

Solution max_hamilton_cycle(const WeightedInstance& inst, int cap) {
  require_shape(inst, GraphShape::Complete, "max_hamilton_cycle");
  const int n = inst.n;
  if (n < 3) reject("max_hamilton_cycle needs n >= 3");
  if (n > cap) {
    reject("max_hamilton_cycle: n = " + std::to_string(n) + " exceeds the subset-DP cap " +
           std::to_string(cap));
  }

  SubsetDp state(n);
  const int m = n - 1;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  for (int v = 1; v < n; ++v) state.at(std::uint32_t{1} << (v - 1), v - 1) = inst.at(0, v);
  for (std::uint32_t set = 1; set <= full; ++set) {
    for (int vb = 0; vb < m; ++vb) {
      if (!(set >> vb & 1u)) continue;
      const double cur = state.get(set, vb);
      if (cur == -kInf) continue;
      for (int ub = 0; ub < m; ++ub) {
        if (set >> ub & 1u) continue;
        const std::uint32_t next = set | (std::uint32_t{1} << ub);
        const double cand = cur + inst.at(vb + 1, ub + 1);
        if (cand > state.get(next, ub)) state.at(next, ub) = cand;
      }
    }
  }

  double best = -kInf;
  int best_end = 0;
  for (int vb = 0; vb < m; ++vb) {
    const double cand = state.get(full, vb) + inst.at(vb + 1, 0);
    if (cand > best) {
      best = cand;
      best_end = vb;
    }
  }

  std::vector<int> order;  // vertices 1..n-1 from the path end back to the start
  std::uint32_t set = full;
  int vb = best_end;
  while (true) {
    order.push_back(vb + 1);
    const std::uint32_t rest = set & ~(std::uint32_t{1} << vb);
    if (rest == 0) break;
    const double target = state.get(set, vb);
    for (int ub = 0; ub < m; ++ub) {
      if (!(rest >> ub & 1u)) continue;
      if (state.get(rest, ub) + inst.at(ub + 1, vb + 1) == target) {
        set = rest;
        vb = ub;
        break;
      }
    }
  }
  std::reverse(order.begin(), order.end());  // path 0 -> order[0] -> ... -> order[m-1] -> 0
  if (order.back() < order.front()) std::reverse(order.begin(), order.end());

  Solution sol;
  sol.family = FamilyKind::HamiltonCycle;
  int prev = 0;
  for (const int vtx : order) {
    sol.edges.emplace_back(prev, vtx);
    prev = vtx;
  }
  sol.edges.emplace_back(prev, 0);
  sol.weight = edge_sum(inst, sol.edges);
  return sol;
}

Solution max_path_1_2(const WeightedInstance& inst, int cap) {
  require_shape(inst, GraphShape::Complete, "max_path_1_2");
  const int n = inst.n;
  if (n < 2) reject("max_path_1_2 needs n >= 2");
  if (n > cap) {
    reject("max_path_1_2: n = " + std::to_string(n) + " exceeds the subset-DP cap " +
           std::to_string(cap));
  }
  if (n == 2) {
    Solution sol;
    sol.family = FamilyKind::PathOneTwo;
    sol.edges = {{0, 1}};
    sol.weight = inst.at(0, 1);
    return sol;
  }

  SubsetDp state(n);
  const int m = n - 1;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  for (int v = 1; v < n; ++v) state.at(std::uint32_t{1} << (v - 1), v - 1) = inst.at(0, v);
  for (std::uint32_t set = 1; set <= full; ++set) {
    for (int vb = 1; vb < m; ++vb) {  // never extend from vertex 1 (bit 0)
      if (!(set >> vb & 1u)) continue;
      const double cur = state.get(set, vb);
      if (cur == -kInf) continue;
      for (int ub = 0; ub < m; ++ub) {
        if (set >> ub & 1u) continue;
        const std::uint32_t next = set | (std::uint32_t{1} << ub);
        const double cand = cur + inst.at(vb + 1, ub + 1);
        if (cand > state.get(next, ub)) state.at(next, ub) = cand;
      }
    }
  }

  double best = -kInf;
  std::uint32_t best_set = 1;
  for (std::uint32_t set = 1; set <= full; ++set) {
    if (!(set & 1u)) continue;  // must contain vertex 1
    const double cand = state.get(set, 0);
    if (cand > best) {
      best = cand;
      best_set = set;
    }
  }

  std::vector<int> order;  // path vertices after 0, ending at vertex 1
  std::uint32_t set = best_set;
  int vb = 0;
  while (true) {
    order.push_back(vb + 1);
    const std::uint32_t rest = set & ~(std::uint32_t{1} << vb);
    if (rest == 0) break;
    const double target = state.get(set, vb);
    for (int ub = 1; ub < m; ++ub) {  // vertex 1 is never an interior vertex
      if (!(rest >> ub & 1u)) continue;
      if (state.get(rest, ub) + inst.at(ub + 1, vb + 1) == target) {
        set = rest;
        vb = ub;
        break;
      }
    }
  }
  std::reverse(order.begin(), order.end());

  Solution sol;
  sol.family = FamilyKind::PathOneTwo;
  int prev = 0;
  for (const int vtx : order) {
    sol.edges.emplace_back(prev, vtx);
    prev = vtx;
  }
  sol.weight = edge_sum(inst, sol.edges);
  return sol;
}

namespace {

struct CopySearch {
  const WeightedInstance& inst;
  const GraphPattern& pattern;
  std::vector<int> order;               // pattern vertices, most-constrained first
  std::vector<std::vector<int>> back;   // per step: earlier order positions adjacent to it
  std::vector<double> top_prefix;       // prefix sums of sorted edge weights
  std::vector<int> assign;              // order pos -> host vertex
  std::vector<char> used;
  std::vector<int> best_map;  // pattern vertex -> host vertex
  double best = -kInf;

  CopySearch(const WeightedInstance& i, const GraphPattern& p) : inst(i), pattern(p) {
    const int v = p.v;
    std::vector<char> chosen(v, 0);
    std::vector<int> degree(v, 0);
    for (auto [a, b] : p.edges) {
      ++degree[a];
      ++degree[b];
    }
    for (int step = 0; step < v; ++step) {
      int pick = -1, pick_links = -1;
      for (int c = 0; c < v; ++c) {
        if (chosen[c]) continue;
        int links = 0;
        for (auto [a, b] : p.edges) {
          if ((a == c && chosen[b]) || (b == c && chosen[a])) ++links;
        }
        // most already-placed neighbours first, then raw degree, then index
        if (pick < 0 || links > pick_links ||
            (links == pick_links && degree[c] > degree[pick])) {
          pick = c;
          pick_links = links;
        }
      }
      chosen[pick] = 1;
      order.push_back(pick);
    }
    std::vector<int> pos(v, -1);
    for (int s = 0; s < v; ++s) pos[order[s]] = s;
    back.resize(v);
    for (auto [a, b] : p.edges) {
      const int sa = pos[a], sb = pos[b];
      back[std::max(sa, sb)].push_back(std::min(sa, sb));
    }
    std::vector<double> sorted_w(inst.w);
    std::sort(sorted_w.begin(), sorted_w.end(), std::greater<>());
    top_prefix.assign(sorted_w.size() + 1, 0.0);
    for (std::size_t k = 0; k < sorted_w.size(); ++k) {
      top_prefix[k + 1] = top_prefix[k] + sorted_w[k];
    }
    assign.assign(v, -1);
    used.assign(static_cast<std::size_t>(inst.n), 0);
  }

  int edges_remaining(int next_step) const {
    int placed = 0;
    for (int s = 0; s < next_step; ++s) placed += static_cast<int>(back[s].size());
    return static_cast<int>(pattern.edges.size()) - placed;
  }

  void dfs(int step, double partial) {
    const int v = pattern.v;
    if (step == v) {
      if (partial > best) {
        best = partial;
        best_map.assign(v, -1);
        for (int s = 0; s < v; ++s) best_map[order[s]] = assign[s];
      }
      return;
    }
    const int rem = edges_remaining(step);
    if (best > -kInf && partial + top_prefix[static_cast<std::size_t>(rem)] <= best) return;
    for (int host = 0; host < inst.n; ++host) {
      if (used[host]) continue;
      double gained = 0.0;
      for (const int prev_pos : back[step]) gained += inst.at(assign[prev_pos], host);
      assign[step] = host;
      used[host] = 1;
      dfs(step + 1, partial + gained);
      used[host] = 0;
      assign[step] = -1;
    }
  }
};

}  // namespace

Solution max_copy(const WeightedInstance& inst, const GraphPattern& pattern) {
  require_shape(inst, GraphShape::Complete, "max_copy");
  pattern.validate();
  if (pattern.v > 6) reject("max_copy: pattern has more than 6 vertices");
  if (inst.n > 64) reject("max_copy: instance larger than 64 vertices");
  if (inst.n < pattern.v) reject("max_copy: instance smaller than the pattern");

  CopySearch search(inst, pattern);
  search.dfs(0, 0.0);

  Solution sol;
  sol.family = FamilyKind::CopyOf;
  sol.vertex_map = search.best_map;
  for (auto [a, b] : pattern.edges) {
    sol.edges.emplace_back(search.best_map[a], search.best_map[b]);
  }
  sol.weight = edge_sum(inst, sol.edges);
  return sol;
}

Solution solve_family(const StructureFamily& f, const WeightedInstance& inst, int cap) {
  switch (f.kind) {
    case FamilyKind::Matching:
      return max_matching(inst);
    case FamilyKind::SpanningTree:
      return max_spanning_tree(inst);
    case FamilyKind::HamiltonCycle:
      return max_hamilton_cycle(inst, cap);
    case FamilyKind::PathOneTwo:
      return max_path_1_2(inst, cap);
    case FamilyKind::CopyOf:
      return max_copy(inst, f.pattern);
  }
  reject("unknown family");
}

namespace {

// Prufer-sequence decoder; the oracle's independent tree enumerator.
std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(n, 1);
  for (const int s : seq) ++degree[s];
  std::vector<std::pair<int, int>> edges;
  std::vector<char> done(n, 0);
  for (const int s : seq) {
    int leaf = -1;
    for (int v = 0; v < n; ++v) {
      if (!done[v] && degree[v] == 1) {
        leaf = v;
        break;
      }
    }
    edges.emplace_back(leaf, s);
    done[leaf] = 1;
    --degree[s];
  }
  int a = -1, b = -1;
  for (int v = 0; v < n; ++v) {
    if (!done[v] && degree[v] == 1) (a < 0 ? a : b) = v;
  }
  edges.emplace_back(a, b);
  return edges;
}

double brute_matching(const WeightedInstance& inst) {
  const int n = inst.n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -kInf;
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += inst.at(i, perm[i]);
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double brute_tree(const WeightedInstance& inst) {
  const int n = inst.n;
  if (n == 2) return inst.at(0, 1);
  // all n^{n-2} Prufer sequences
  const int len = n - 2;
  std::vector<int> seq(len, 0);
  double best = -kInf;
  for (;;) {
    best = std::max(best, edge_sum(inst, prufer_decode(seq, n)));
    int pos = len - 1;
    while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  return best;
}

double brute_hamilton(const WeightedInstance& inst) {
  const int n = inst.n;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  double best = -kInf;
  do {
    if (perm.front() > perm.back()) continue;  // one orientation per cycle
    double total = inst.at(0, perm.front()) + inst.at(perm.back(), 0);
    for (int i = 0; i + 1 < n - 1; ++i) total += inst.at(perm[i], perm[i + 1]);
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double brute_path(const WeightedInstance& inst) {
  const int n = inst.n;
  double best = inst.at(0, 1);
  std::vector<int> pool;
  for (int v = 2; v < n; ++v) pool.push_back(v);
  const int k = static_cast<int>(pool.size());
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    std::vector<int> members;
    for (int b = 0; b < k; ++b) {
      if (mask >> b & 1u) members.push_back(pool[b]);
    }
    std::sort(members.begin(), members.end());
    do {
      double total = inst.at(0, members.front()) + inst.at(members.back(), 1);
      for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        total += inst.at(members[i], members[i + 1]);
      }
      best = std::max(best, total);
    } while (std::next_permutation(members.begin(), members.end()));
  }
  return best;
}

double brute_copy(const WeightedInstance& inst, const GraphPattern& p) {
  const int n = inst.n;
  const int v = p.v;
  std::vector<int> map(v, 0);
  std::vector<char> used(n, 0);
  double best = -kInf;
  // odometer over all injective assignments
  const auto run = [&](auto&& self, int depth) -> void {
    if (depth == v) {
      double total = 0.0;
      for (auto [a, b] : p.edges) total += inst.at(map[a], map[b]);
      best = std::max(best, total);
      return;
    }
    for (int host = 0; host < n; ++host) {
      if (used[host]) continue;
      used[host] = 1;
      map[depth] = host;
      self(self, depth + 1);
      used[host] = 0;
    }
  };
  run(run, 0);
  return best;
}

}  // namespace

double brute_force(const StructureFamily& f, const WeightedInstance& inst) {
  switch (f.kind) {
    case FamilyKind::Matching:
      if (inst.n > 7) reject("brute_force matching capped at n <= 7");
      return brute_matching(inst);
    case FamilyKind::SpanningTree:
      if (inst.n > 8) reject("brute_force tree capped at n <= 8");
      return brute_tree(inst);
    case FamilyKind::HamiltonCycle:
      if (inst.n > 8) reject("brute_force hamilton cycle capped at n <= 8");
      return brute_hamilton(inst);
    case FamilyKind::PathOneTwo:
      if (inst.n > 8) reject("brute_force path capped at n <= 8");
      return brute_path(inst);
    case FamilyKind::CopyOf:
      if (inst.n > 8 || f.pattern.v > 4) reject("brute_force copy capped at v <= 4, n <= 8");
      return brute_copy(inst, f.pattern);
  }
  reject("unknown family");
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw std::logic_error("invalid solution: " + what); }

void check_weight(const WeightedInstance& inst, const Solution& sol) {
  double total = 0.0;
  for (auto [a, b] : sol.edges) total += inst.at(a, b);
  if (std::fabs(total - sol.weight) > 1e-9) invalid("reported weight does not match the edges");
}

void check_range(const WeightedInstance& inst, const Solution& sol, bool bipartite) {
  for (auto [a, b] : sol.edges) {
    if (a < 0 || b < 0 || a >= inst.n || b >= inst.n) invalid("edge endpoint out of range");
    if (!bipartite && a == b) invalid("loop edge");
  }
}

}  // namespace

void validate_solution(const StructureFamily& f, const WeightedInstance& inst,
                       const Solution& sol) {
  const int n = inst.n;
  switch (f.kind) {
    case FamilyKind::Matching: {
      check_range(inst, sol, true);
      if (static_cast<int>(sol.edges.size()) != n) invalid("matching must have n edges");
      std::vector<char> row(n, 0), col(n, 0);
      for (auto [i, j] : sol.edges) {
        if (row[i]++ || col[j]++) invalid("matching repeats a row or column");
      }
      break;
    }
    case FamilyKind::SpanningTree: {
      check_range(inst, sol, false);
      if (static_cast<int>(sol.edges.size()) != n - 1) invalid("tree must have n-1 edges");
      std::vector<std::vector<int>> adj(n);
      for (auto [a, b] : sol.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::vector<char> seen(n, 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int reached = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const int u : adj[v]) {
          if (!seen[u]) {
            seen[u] = 1;
            ++reached;
            stack.push_back(u);
          }
        }
      }
      if (reached != n) invalid("tree is not connected");
      break;
    }
    case FamilyKind::HamiltonCycle: {
      check_range(inst, sol, false);
      if (static_cast<int>(sol.edges.size()) != n) invalid("cycle must have n edges");
      std::vector<std::vector<int>> adj(n);
      for (auto [a, b] : sol.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      for (int v = 0; v < n; ++v) {
        if (adj[v].size() != 2) invalid("cycle vertex degree differs from 2");
      }
      int prev = -1, cur = 0, steps = 0;
      do {
        const int next = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++steps;
      } while (cur != 0 && steps <= n);
      if (cur != 0 || steps != n) invalid("edges do not close a single Hamilton cycle");
      break;
    }
    case FamilyKind::PathOneTwo: {
      check_range(inst, sol, false);
      if (sol.edges.empty()) invalid("path must have at least one edge");
      std::vector<std::vector<int>> adj(n);
      for (auto [a, b] : sol.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      if (adj[0].size() != 1 || adj[1].size() != 1) invalid("path endpoints must be 1 and 2");
      for (int v = 2; v < n; ++v) {
        if (!adj[v].empty() && adj[v].size() != 2) invalid("path interior degree differs from 2");
      }
      std::vector<char> seen(n, 0);
      int prev = -1, cur = 0;
      std::size_t steps = 0;
      seen[0] = 1;
      while (cur != 1) {
        int next = -1;
        for (const int u : adj[cur]) {
          if (u != prev) next = u;
        }
        if (next < 0 || seen[next]) invalid("path walk stalls or revisits a vertex");
        seen[next] = 1;
        prev = cur;
        cur = next;
        ++steps;
      }
      if (steps != sol.edges.size()) invalid("path has stray edges");
      break;
    }
    case FamilyKind::CopyOf: {
      check_range(inst, sol, false);
      const auto& p = f.pattern;
      if (static_cast<int>(sol.vertex_map.size()) != p.v) invalid("copy has no vertex map");
      std::vector<char> used(n, 0);
      for (const int host : sol.vertex_map) {
        if (host < 0 || host >= n) invalid("copy maps outside the instance");
        if (used[host]++) invalid("copy vertex map is not injective");
      }
      if (sol.edges.size() != p.edges.size()) invalid("copy edge count differs from pattern");
      std::vector<std::pair<int, int>> expect, got;
      for (auto [a, b] : p.edges) {
        auto e = std::minmax(sol.vertex_map[a], sol.vertex_map[b]);
        expect.emplace_back(e.first, e.second);
      }
      for (auto [a, b] : sol.edges) {
        auto e = std::minmax(a, b);
        got.emplace_back(e.first, e.second);
      }
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      if (expect != got) invalid("copy edges differ from the mapped pattern");
      break;
    }
  }
  check_weight(inst, sol);
}

}  // namespace rwg
