// SPDX-License-Identifier: Apache-2.0

#include "rwg/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <thread>

#include "rwg/ratefn.hpp"

namespace rwg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

ThresholdGraph threshold_graph(const WeightedInstance& inst, double level) {
  ThresholdGraph g;
  g.shape = inst.shape;
  g.n = inst.n;
  g.level = level;
  g.adj.assign(inst.n, {});
  if (inst.shape == GraphShape::BipartiteComplete) {
    for (int i = 0; i < inst.n; ++i) {
      for (int j = 0; j < inst.n; ++j) {
        if (inst.at(i, j) > level) {
          g.adj[i].push_back(j);
          ++g.edge_count;
        }
      }
    }
  } else {
    for (int i = 0; i < inst.n; ++i) {
      for (int j = i + 1; j < inst.n; ++j) {
        if (inst.at(i, j) > level) {
          g.adj[i].push_back(j);
          g.adj[j].push_back(i);
          ++g.edge_count;
        }
      }
    }
  }
  return g;
}

BipartiteMatching hopcroft_matching(const std::vector<std::vector<int>>& adj_left, int n_right) {
  const int n_left = static_cast<int>(adj_left.size());
  constexpr int kFree = -1;
  std::vector<int> match_left(n_left, kFree), match_right(n_right, kFree);
  std::vector<int> dist(n_left);

  const auto bfs = [&]() {
    std::deque<int> queue;
    bool reachable_free = false;
    for (int u = 0; u < n_left; ++u) {
      if (match_left[u] == kFree) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = -1;
      }
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const int v : adj_left[u]) {
        const int w = match_right[v];
        if (w == kFree) {
          reachable_free = true;
        } else if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return reachable_free;
  };

  const auto dfs = [&](auto&& self, int u) -> bool {
    for (const int v : adj_left[u]) {
      const int w = match_right[v];
      if (w == kFree || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    dist[u] = -1;
    return false;
  };

  BipartiteMatching result;
  while (bfs()) {
    for (int u = 0; u < n_left; ++u) {
      if (match_left[u] == kFree && dfs(dfs, u)) ++result.size;
    }
  }
  result.match_of_right = std::move(match_right);
  return result;
}

namespace {

// Spanning tree of the threshold graph by BFS from vertex 0, if connected.
std::optional<std::vector<std::pair<int, int>>> spanning_tree_of(const ThresholdGraph& g) {
  std::vector<int> parent(g.n, -2);
  std::deque<int> queue{0};
  parent[0] = -1;
  int reached = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const int u : g.adj[v]) {
      if (parent[u] == -2) {
        parent[u] = v;
        ++reached;
        queue.push_back(u);
      }
    }
  }
  if (reached != g.n) return std::nullopt;
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < g.n; ++v) edges.emplace_back(parent[v], v);
  return edges;
}

// Reachability subset DP: witnesses for Hamilton cycles / longest 1-2
// paths inside a sparse threshold graph (n under the solver cap).
struct BoolDp {
  int m;
  std::vector<char> dp;
  explicit BoolDp(int n) : m(n - 1), dp((std::size_t{1} << (n - 1)) * std::size_t(n - 1), 0) {}
  char& at(std::uint32_t set, int bit) {
    return dp[static_cast<std::size_t>(set) * static_cast<std::size_t>(m) +
              static_cast<std::size_t>(bit)];
  }
};

bool adjacent(const ThresholdGraph& g, int a, int b) {
  const auto& list = g.adj[a];
  return std::find(list.begin(), list.end(), b) != list.end();
}

std::optional<std::vector<std::pair<int, int>>> exact_hamilton_cycle(const ThresholdGraph& g) {
  const int n = g.n;
  const int m = n - 1;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  BoolDp state(n);
  for (const int v : g.adj[0]) state.at(std::uint32_t{1} << (v - 1), v - 1) = 1;
  for (std::uint32_t set = 1; set <= full; ++set) {
    for (int vb = 0; vb < m; ++vb) {
      if (!(set >> vb & 1u) || !state.at(set, vb)) continue;
      for (const int u : g.adj[vb + 1]) {
        if (u == 0) continue;
        const int ub = u - 1;
        if (set >> ub & 1u) continue;
        state.at(set | (std::uint32_t{1} << ub), ub) = 1;
      }
    }
  }
  int end = -1;
  for (const int v : g.adj[0]) {
    if (state.at(full, v - 1)) {
      end = v;
      break;
    }
  }
  if (end < 0) return std::nullopt;
  // walk back through predecessors
  std::vector<int> order;
  std::uint32_t set = full;
  int vb = end - 1;
  while (true) {
    order.push_back(vb + 1);
    const std::uint32_t rest = set & ~(std::uint32_t{1} << vb);
    if (rest == 0) break;
    bool stepped = false;
    for (const int u : g.adj[vb + 1]) {
      if (u == 0) continue;
      const int ub = u - 1;
      if ((rest >> ub & 1u) && state.at(rest, ub)) {
        set = rest;
        vb = ub;
        stepped = true;
        break;
      }
    }
    if (!stepped) return std::nullopt;  // unreachable by construction
  }
  std::reverse(order.begin(), order.end());
  std::vector<std::pair<int, int>> edges;
  int prev = 0;
  for (const int v : order) {
    edges.emplace_back(prev, v);
    prev = v;
  }
  edges.emplace_back(prev, 0);
  return edges;
}

// Longest path from vertex 0 to vertex 1 using only threshold edges.
std::optional<std::vector<std::pair<int, int>>> exact_longest_path_1_2(const ThresholdGraph& g) {
  const int n = g.n;
  if (n == 2) {
    if (adjacent(g, 0, 1)) return std::vector<std::pair<int, int>>{{0, 1}};
    return std::nullopt;
  }
  const int m = n - 1;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  BoolDp state(n);
  for (const int v : g.adj[0]) state.at(std::uint32_t{1} << (v - 1), v - 1) = 1;
  for (std::uint32_t set = 1; set <= full; ++set) {
    for (int vb = 1; vb < m; ++vb) {  // vertex 1 (bit 0) is terminal
      if (!(set >> vb & 1u) || !state.at(set, vb)) continue;
      for (const int u : g.adj[vb + 1]) {
        if (u == 0) continue;
        const int ub = u - 1;
        if (set >> ub & 1u) continue;
        state.at(set | (std::uint32_t{1} << ub), ub) = 1;
      }
    }
  }
  int best_bits = -1;
  std::uint32_t best_set = 0;
  for (std::uint32_t set = 1; set <= full; ++set) {
    if (!(set & 1u) || !state.at(set, 0)) continue;
    const int bits = __builtin_popcount(set);
    if (bits > best_bits) {
      best_bits = bits;
      best_set = set;
    }
  }
  if (best_bits < 0) return std::nullopt;
  std::vector<int> order;
  std::uint32_t set = best_set;
  int vb = 0;
  while (true) {
    order.push_back(vb + 1);
    const std::uint32_t rest = set & ~(std::uint32_t{1} << vb);
    if (rest == 0) break;
    bool stepped = false;
    for (const int u : g.adj[vb + 1]) {
      if (u == 0) continue;
      const int ub = u - 1;
      if (ub == 0) continue;  // vertex 1 cannot be interior
      if ((rest >> ub & 1u) && state.at(rest, ub)) {
        set = rest;
        vb = ub;
        stepped = true;
        break;
      }
    }
    if (!stepped) return std::nullopt;
  }
  std::reverse(order.begin(), order.end());
  std::vector<std::pair<int, int>> edges;
  int prev = 0;
  for (const int v : order) {
    edges.emplace_back(prev, v);
    prev = v;
  }
  return edges;
}

// Rotation-extension heuristic for Hamilton cycles / 1-2 Hamilton paths
// beyond the DP cap. Deterministic restarts; a miss is only a miss.
class RotationSearch {
 public:
  explicit RotationSearch(const ThresholdGraph& g) : g_(g), n_(g.n), pos_(g.n, -1) {}

  std::optional<std::vector<int>> hamilton_cycle_order() {
    const long long restarts = 50LL * n_;
    for (long long r = 0; r < restarts; ++r) {
      if (auto path = grow_path(static_cast<int>(r % n_), -1, r)) {
        // path covers all vertices; try to close it, rotating if needed
        for (int attempt = 0; attempt < n_; ++attempt) {
          const int end = path->back();
          if (adjacent(g_, end, path->front())) return *path;
          if (!rotate_once(*path)) break;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<int>> hamilton_path_1_2_order() {
    const long long restarts = 50LL * n_;
    for (long long r = 0; r < restarts; ++r) {
      if (auto path = grow_path(0, 1, r)) {
        for (int attempt = 0; attempt < n_; ++attempt) {
          const int end = path->back();
          if (adjacent(g_, end, 1)) {
            path->push_back(1);
            return *path;
          }
          if (!rotate_once(*path)) break;
        }
      }
    }
    return std::nullopt;
  }

 private:
  // Grow a simple path from start, avoiding `excluded`, with rotations when
  // stuck. Returns a path over all eligible vertices or nothing.
  std::optional<std::vector<int>> grow_path(int start, int excluded, long long salt) {
    if (start == excluded) start = (start + 1) % n_;
    const int want = (excluded < 0) ? n_ : n_ - 1;
    std::vector<int> path{start};
    std::fill(pos_.begin(), pos_.end(), -1);
    pos_[start] = 0;
    long long budget = 4LL * n_ * n_;
    while (static_cast<int>(path.size()) < want && budget-- > 0) {
      const int end = path.back();
      int next = -1;
      const auto& nbrs = g_.adj[end];
      const std::size_t offset = nbrs.empty() ? 0 : static_cast<std::size_t>(salt) % nbrs.size();
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const int cand = nbrs[(k + offset) % nbrs.size()];
        if (cand != excluded && pos_[cand] < 0) {
          next = cand;
          break;
        }
      }
      if (next >= 0) {
        pos_[next] = static_cast<int>(path.size());
        path.push_back(next);
        continue;
      }
      if (!rotate_once(path)) return std::nullopt;
    }
    if (static_cast<int>(path.size()) == want) return path;
    return std::nullopt;
  }

  // Posa rotation: for an end-neighbour u inside the path at position i,
  // reverse the tail beyond i; the new end is the old successor of u.
  bool rotate_once(std::vector<int>& path) {
    const int end = path.back();
    for (const int u : g_.adj[end]) {
      const int i = pos_[u];
      if (i < 0 || i + 2 >= static_cast<int>(path.size())) continue;
      std::reverse(path.begin() + i + 1, path.end());
      for (int k = i + 1; k < static_cast<int>(path.size()); ++k) pos_[path[k]] = k;
      return true;
    }
    return false;
  }

  const ThresholdGraph& g_;
  int n_;
  std::vector<int> pos_;
};

// Backtracking embedding of a small pattern into the threshold graph.
std::optional<std::vector<int>> embed_pattern(const ThresholdGraph& g, const GraphPattern& p) {
  std::vector<std::vector<char>> host(g.n, std::vector<char>(g.n, 0));
  for (int v = 0; v < g.n; ++v) {
    for (const int u : g.adj[v]) host[v][u] = 1;
  }
  std::vector<std::vector<int>> need(p.v);
  for (auto [a, b] : p.edges) {
    if (a > b) std::swap(a, b);
    need[b].push_back(a);
  }
  std::vector<int> map(p.v, -1);
  std::vector<char> used(g.n, 0);
  const auto dfs = [&](auto&& self, int k) -> bool {
    if (k == p.v) return true;
    for (int cand = 0; cand < g.n; ++cand) {
      if (used[cand]) continue;
      bool ok = true;
      for (const int prev : need[k]) {
        if (!host[cand][map[prev]]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[k] = cand;
      used[cand] = 1;
      if (self(self, k + 1)) return true;
      used[cand] = 0;
      map[k] = -1;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return map;
}

std::vector<std::pair<int, int>> order_to_path_edges(const std::vector<int>& order) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) edges.emplace_back(order[i], order[i + 1]);
  return edges;
}

}  // namespace

Certificate certify_lower_bound(const StructureFamily& f, const WeightedInstance& inst,
                                double delta, const Distribution& d, int dp_cap) {
  if (!(delta >= 0.0 && delta < 1.0)) reject("certify_lower_bound requires delta in [0,1)");

  const long long n = f.n;
  double alpha = 1.0;
  double omega = 2.0 * std::log(static_cast<double>(n));
  if (f.kind == FamilyKind::CopyOf) {
    alpha = 1.0 / density(f.pattern).value();
    omega = std::log(static_cast<double>(n));
  }
  omega = std::max(omega, 1.0);

  Certificate cert;
  cert.family = f.kind;
  cert.delta = delta;
  cert.x_n = threshold_xn(d, alpha, omega, n);
  cert.level = (1.0 - delta) * cert.x_n;
  cert.p_prime = d.tail(cert.level);

  const ThresholdGraph g = threshold_graph(inst, cert.level);
  cert.threshold_edges = g.edge_count;

  switch (f.kind) {
    case FamilyKind::Matching: {
      const BipartiteMatching m = hopcroft_matching(g.adj, g.n);
      if (m.perfect(g.n)) {
        cert.found = true;
        for (int j = 0; j < g.n; ++j) cert.edges.emplace_back(m.match_of_right[j], j);
      }
      break;
    }
    case FamilyKind::SpanningTree: {
      if (auto edges = spanning_tree_of(g)) {
        cert.found = true;
        cert.edges = std::move(*edges);
      }
      break;
    }
    case FamilyKind::HamiltonCycle: {
      if (inst.n <= dp_cap) {
        if (auto edges = exact_hamilton_cycle(g)) {
          cert.found = true;
          cert.edges = std::move(*edges);
        }
      } else if (auto order = RotationSearch(g).hamilton_cycle_order()) {
        cert.found = true;
        cert.edges = order_to_path_edges(*order);
        cert.edges.emplace_back(order->back(), order->front());
      }
      break;
    }
    case FamilyKind::PathOneTwo: {
      if (inst.n <= dp_cap) {
        if (auto edges = exact_longest_path_1_2(g)) {
          cert.found = true;
          cert.edges = std::move(*edges);
        }
      } else if (auto order = RotationSearch(g).hamilton_path_1_2_order()) {
        cert.found = true;
        cert.edges = order_to_path_edges(*order);
      }
      break;
    }
    case FamilyKind::CopyOf: {
      if (auto map = embed_pattern(g, f.pattern)) {
        cert.found = true;
        cert.vertex_map = *map;
        for (auto [a, b] : f.pattern.edges) cert.edges.emplace_back((*map)[a], (*map)[b]);
      }
      break;
    }
  }

  if (cert.found) {
    cert.structure_size = cert.edges.size();
    cert.certified_bound = static_cast<double>(cert.structure_size) * cert.level;
    validate_certificate(f, inst, cert);
  }
  return cert;
}

void validate_certificate(const StructureFamily& f, const WeightedInstance& inst,
                          const Certificate& cert) {
  if (!cert.found) {
    if (cert.certified_bound.has_value()) {
      throw std::logic_error("certificate without witness must not carry a bound");
    }
    return;
  }
  for (auto [a, b] : cert.edges) {
    if (!(inst.at(a, b) > cert.level)) {
      throw std::logic_error("certificate edge does not exceed the threshold level");
    }
  }
  double witness_weight = 0.0;
  for (auto [a, b] : cert.edges) witness_weight += inst.at(a, b);
  if (cert.certified_bound.has_value() && *cert.certified_bound > witness_weight + 1e-9) {
    throw std::logic_error("certified bound exceeds the witness weight");
  }
  // structural membership goes through the same independent validator the
  // exact solvers use
  Solution as_solution;
  as_solution.family = f.kind;
  as_solution.edges = cert.edges;
  as_solution.weight = witness_weight;
  as_solution.vertex_map = cert.vertex_map;
  validate_solution(f, inst, as_solution);
}

CertifyRun certify_trials(const StructureFamily& f, const Distribution& d, double delta,
                          int trials, std::uint64_t seed, int workers, int dp_cap) {
  if (trials < 1) reject("certify_trials needs at least one trial");
  const bool exact_available =
      f.kind == FamilyKind::Matching || f.kind == FamilyKind::SpanningTree ||
      ((f.kind == FamilyKind::HamiltonCycle || f.kind == FamilyKind::PathOneTwo) &&
       f.n <= dp_cap) ||
      (f.kind == FamilyKind::CopyOf && f.pattern.v <= 6 && f.n <= 64);

  CertifyRun run;
  run.prediction = predict(f, RateFunction(d));
  run.rows.resize(trials);

  const auto do_range = [&](int lo, int hi) {
    for (int t = lo; t < hi; ++t) {
      const WeightedInstance inst = gen_instance(f, d, seed, static_cast<std::uint64_t>(t));
      const Certificate cert = certify_lower_bound(f, inst, delta, d, dp_cap);
      CertifyTrialRow& row = run.rows[t];
      row.trial = t;
      row.level = cert.level;
      row.found = cert.found;
      row.certified_bound = cert.certified_bound;
      if (exact_available) {
        const Solution sol = solve_family(f, inst, dp_cap);
        row.exact_optimum = sol.weight;
        if (run.prediction > 0.0) row.ratio_to_prediction = sol.weight / run.prediction;
        if (row.certified_bound.has_value() && *row.certified_bound > sol.weight + 1e-9) {
          throw std::logic_error("certified bound exceeds the exact optimum");
        }
      }
    }
  };

  workers = std::max(1, workers);
  if (workers == 1 || trials == 1) {
    do_range(0, trials);
  } else {
    const int used = std::min(workers, trials);
    std::vector<std::thread> pool;
    const int chunk = (trials + used - 1) / used;
    for (int w = 0; w < used; ++w) {
      const int lo = w * chunk;
      const int hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(do_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  run.x_n = run.rows.empty() ? 0.0 : run.rows.front().level / (1.0 - delta);
  return run;
}

}  // namespace rwg
