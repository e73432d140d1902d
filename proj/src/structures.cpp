// SPDX-License-Identifier: Apache-2.0

#include "rwg/structures.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rwg {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

double log_factorial(long long n) {
  double acc = 0.0;
  for (long long k = 2; k <= n; ++k) acc += std::log(static_cast<double>(k));
  return acc;
}

}  // namespace

GraphPattern GraphPattern::triangle() {
  return GraphPattern{3, {{0, 1}, {1, 2}, {2, 0}}, "triangle"};
}

GraphPattern GraphPattern::cycle(int length) {
  if (length < 3) reject("cycle pattern needs at least 3 vertices");
  GraphPattern p;
  p.v = length;
  for (int i = 0; i < length; ++i) p.edges.emplace_back(i, (i + 1) % length);
  p.name = "c" + std::to_string(length);
  return p;
}

GraphPattern GraphPattern::complete(int vertices) {
  if (vertices < 2) reject("complete pattern needs at least 2 vertices");
  GraphPattern p;
  p.v = vertices;
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) p.edges.emplace_back(i, j);
  }
  p.name = "k" + std::to_string(vertices);
  return p;
}

void GraphPattern::validate() const {
  if (v < 1) reject("pattern must have at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a == b) reject("pattern contains a loop");
    if (a < 0 || b < 0 || a >= v || b >= v) reject("pattern edge endpoint out of range");
    auto key = std::minmax(a, b);
    if (!seen.insert({key.first, key.second}).second) reject("pattern contains a duplicate edge");
  }
}

GraphPattern GraphPattern::parse(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "triangle") return triangle();
  if (lowered == "c4") return cycle(4);
  if (lowered == "k4") return complete(4);

  // "v=4;edges=1-2,2-3,3-1,1-4", vertices 1-indexed
  GraphPattern p;
  const auto semi = lowered.find(';');
  if (semi == std::string::npos || lowered.rfind("v=", 0) != 0) {
    reject("pattern must be a shortcut (triangle|c4|k4) or 'v=N;edges=a-b,...'");
  }
  const std::string_view vpart = std::string_view(lowered).substr(2, semi - 2);
  if (std::from_chars(vpart.data(), vpart.data() + vpart.size(), p.v).ec != std::errc{}) {
    reject("malformed vertex count in pattern");
  }
  std::string_view rest = std::string_view(lowered).substr(semi + 1);
  if (rest.rfind("edges=", 0) != 0) reject("pattern is missing the edges= section");
  rest.remove_prefix(6);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) reject("pattern edge must look like a-b");
    int a{}, b{};
    if (std::from_chars(item.data(), item.data() + dash, a).ec != std::errc{} ||
        std::from_chars(item.data() + dash + 1, item.data() + item.size(), b).ec !=
            std::errc{}) {
      reject("malformed pattern edge '" + std::string(item) + "'");
    }
    p.edges.emplace_back(a - 1, b - 1);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  p.validate();
  return p;
}

Rational density(const GraphPattern& p) {
  if (p.v < 1) reject("density needs at least one vertex");
  const long long num = static_cast<long long>(p.edges.size());
  const long long den = p.v;
  const long long g = std::max<long long>(1, gcd_ll(num, den));
  return Rational{num / g, den / g};
}

bool is_balanced(const GraphPattern& p) {
  p.validate();
  if (p.v > 12) reject("balancedness check is exhaustive and limited to v <= 12");
  const Rational full = density(p);
  // max over induced vertex subsets of |E(S)| / |S| compared as cross products
  for (unsigned mask = 1; mask < (1u << p.v); ++mask) {
    const int verts = __builtin_popcount(mask);
    long long inside = 0;
    for (auto [a, b] : p.edges) {
      if ((mask >> a & 1u) && (mask >> b & 1u)) ++inside;
    }
    if (inside * full.den > full.num * verts) return false;
  }
  return true;
}

StructureFamily StructureFamily::matching(int n) {
  if (n < 1) reject("matching family needs n >= 1");
  return {FamilyKind::Matching, n, {}};
}

StructureFamily StructureFamily::spanning_tree(int n) {
  if (n < 2) reject("spanning-tree family needs n >= 2");
  return {FamilyKind::SpanningTree, n, {}};
}

StructureFamily StructureFamily::hamilton_cycle(int n) {
  if (n < 3) reject("hamilton-cycle family needs n >= 3");
  return {FamilyKind::HamiltonCycle, n, {}};
}

StructureFamily StructureFamily::path_one_two(int n) {
  if (n < 2) reject("1-2 path family needs n >= 2");
  return {FamilyKind::PathOneTwo, n, {}};
}

StructureFamily StructureFamily::copy_of(GraphPattern pattern, int n) {
  pattern.validate();
  if (!is_balanced(pattern)) reject("copy family requires a balanced pattern");
  if (n < pattern.v) reject("copy family needs n >= pattern vertex count");
  return {FamilyKind::CopyOf, n, std::move(pattern)};
}

std::string StructureFamily::display_name() const {
  switch (kind) {
    case FamilyKind::Matching:
      return "matching";
    case FamilyKind::SpanningTree:
      return "tree";
    case FamilyKind::HamiltonCycle:
      return "hamcycle";
    case FamilyKind::PathOneTwo:
      return "path";
    case FamilyKind::CopyOf:
      return "copy:" + (pattern.name.empty() ? std::string("custom") : pattern.name);
  }
  return "?";
}

LogCount log_count(const StructureFamily& f) {
  const long long n = f.n;
  if (n < 3) reject("log_count needs n >= 3");
  switch (f.kind) {
    case FamilyKind::Matching:
      return {log_factorial(n), false};
    case FamilyKind::SpanningTree:
      return {static_cast<double>(n - 2) * std::log(static_cast<double>(n)), false};
    case FamilyKind::HamiltonCycle:
      return {log_factorial(n - 1) - std::log(2.0), false};
    case FamilyKind::PathOneTwo:
      // sum_l C(n-2,l) l! <= e (n-2)!
      return {1.0 + log_factorial(n - 2), true};
    case FamilyKind::CopyOf:
      // |C_n| <= C(n,v) v! <= n^v
      return {static_cast<double>(f.pattern.v) * std::log(static_cast<double>(n)), true};
  }
  return {0.0, false};
}

long long bound_edge_count(const StructureFamily& f) {
  switch (f.kind) {
    case FamilyKind::Matching:
      return f.n;
    case FamilyKind::SpanningTree:
      return f.n - 1;
    case FamilyKind::HamiltonCycle:
      return f.n;
    case FamilyKind::PathOneTwo:
      return f.n;  // bounding edge count; the longest actual path has n-1 edges
    case FamilyKind::CopyOf:
      return static_cast<long long>(f.pattern.edges.size());
  }
  return 0;
}

long long structure_edge_count(const StructureFamily& f) {
  switch (f.kind) {
    case FamilyKind::Matching:
      return f.n;
    case FamilyKind::SpanningTree:
      return f.n - 1;
    case FamilyKind::HamiltonCycle:
      return f.n;
    case FamilyKind::PathOneTwo:
      return f.n - 1;
    case FamilyKind::CopyOf:
      return static_cast<long long>(f.pattern.edges.size());
  }
  return 0;
}

double predict(const StructureFamily& f, const RateFunction& rate) {
  const double n = static_cast<double>(f.n);
  if (f.kind == FamilyKind::CopyOf) {
    const Rational d = density(f.pattern);
    const double ell = static_cast<double>(f.pattern.edges.size());
    return ell * rate.rate_inverse(std::log(n) / d.value());
  }
  return n * rate.rate_inverse(std::log(n));
}

double expectation_bound(const StructureFamily& f, const RateFunction& rate) {
  const double l = static_cast<double>(bound_edge_count(f));
  const LogCount lc = log_count(f);
  return l * rate.rate_inverse(lc.value / l);
}

}  // namespace rwg
