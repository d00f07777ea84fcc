// Anchored Consistency / Reconstruction / Uniqueness for two directions in
// the slicing plane, solved slice by slice with integral max flow.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/slicing.hpp"
#include "icotomo/tomography.hpp"
#include "icotomo/vec.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace icotomo {

struct NotCoplanarDirections : std::invalid_argument {
  NotCoplanarDirections() : std::invalid_argument("directions must lie in the plane orthogonal to (tau, 0, 1)") {}
};
struct Infeasible : std::runtime_error {
  Infeasible() : std::runtime_error("no point set has the prescribed X-rays") {}
};
struct TooLarge : std::invalid_argument {
  TooLarge() : std::invalid_argument("brute-force oracle limited to 24 candidate points") {}
};

/// Two X-ray functions and the anchored candidate domain (points of a patch).
struct TomographyInstance {
  XRayImage<Vec3q> p1;
  XRayImage<Vec3q> p2;
  std::vector<Vec3q> domain;

  const Direction3& u1() const { return p1.direction; }
  const Direction3& u2() const { return p2.direction; }
};

inline TomographyInstance make_instance(const std::vector<Vec3q>& F, const Direction3& u1, const Direction3& u2,
                                        std::vector<Vec3q> domain) {
  return {xray(F, u1), xray(F, u2), std::move(domain)};
}

inline TomographyInstance make_instance(const std::vector<Vec3q>& F, const Direction3& u1, const Direction3& u2,
                                        const ModelSetPatch& patch) {
  return make_instance(F, u1, u2, patch.physical_points());
}

/// One slice: its lines in both directions and the candidate points.
struct SliceInstance {
  GoldenRat height;
  std::vector<Vec3q> keys1;
  std::vector<long> counts1;
  std::vector<Vec3q> keys2;
  std::vector<long> counts2;
  std::vector<Vec3q> candidates;
  std::vector<std::pair<int, int>> edges;  // candidate -> (line in keys1, line in keys2)
};

/// Assigns every supported line and every candidate (domain point on a
/// supported line in both directions) to the slice of its height.
inline std::vector<SliceInstance> split_by_slice(const TomographyInstance& inst) {
  if (!height(inst.u1().rep()).is_zero() || !height(inst.u2().rep()).is_zero()) throw NotCoplanarDirections();
  if (parallel(inst.u1(), inst.u2())) throw std::invalid_argument("directions must be non-parallel");
  std::map<GoldenRat, SliceInstance, StructLess> slices;
  std::map<Vec3q, std::pair<GoldenRat, int>, StructLess> idx1, idx2;
  for (const auto& [k, c] : inst.p1.counts) {
    GoldenRat h = height(line_point(k, inst.u1()));
    auto& s = slices[h];
    s.height = h;
    idx1[k] = {h, static_cast<int>(s.keys1.size())};
    s.keys1.push_back(k);
    s.counts1.push_back(c);
  }
  for (const auto& [k, c] : inst.p2.counts) {
    GoldenRat h = height(line_point(k, inst.u2()));
    auto& s = slices[h];
    s.height = h;
    idx2[k] = {h, static_cast<int>(s.keys2.size())};
    s.keys2.push_back(k);
    s.counts2.push_back(c);
  }
  for (const auto& x : canonical_set(inst.domain)) {
    auto a = idx1.find(line_key(x, inst.u1()));
    if (a == idx1.end()) continue;
    auto b = idx2.find(line_key(x, inst.u2()));
    if (b == idx2.end()) continue;
    auto& s = slices[a->second.first];
    s.candidates.push_back(x);
    s.edges.emplace_back(a->second.second, b->second.second);
  }
  std::vector<SliceInstance> out;
  for (auto& [h, s] : slices) out.push_back(std::move(s));
  return out;
}

namespace detail {

// Dinic's algorithm on integral capacities.
class MaxFlow {
 public:
  struct Edge {
    int to;
    long cap;
    long flow;
  };

  explicit MaxFlow(int n) : adj_(static_cast<std::size_t>(n)), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {}

  int add_edge(int u, int v, long cap) {
    adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({v, cap, 0});
    adj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({u, 0, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  long run(int s, int t) {
    long total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (long f = dfs(s, t, std::numeric_limits<long>::max())) total += f;
    }
    return total;
  }

  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : adj_[static_cast<std::size_t>(u)]) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (e.cap - e.flow > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
          level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  long dfs(int u, int t, long pushed) {
    if (u == t) return pushed;
    auto& i = it_[static_cast<std::size_t>(u)];
    for (; i < adj_[static_cast<std::size_t>(u)].size(); ++i) {
      int id = adj_[static_cast<std::size_t>(u)][i];
      Edge& e = edges_[static_cast<std::size_t>(id)];
      if (e.cap - e.flow <= 0 || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      if (long f = dfs(e.to, t, std::min(pushed, e.cap - e.flow))) {
        e.flow += f;
        edges_[static_cast<std::size_t>(id ^ 1)].flow -= f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

struct SliceSolution {
  bool feasible = false;
  std::vector<char> used;  // per candidate
};

inline SliceSolution solve_slice(const SliceInstance& s) {
  SliceSolution sol;
  long t1 = 0, t2 = 0;
  for (long c : s.counts1) t1 += c;
  for (long c : s.counts2) t2 += c;
  if (t1 != t2) return sol;
  const int n1 = static_cast<int>(s.keys1.size()), n2 = static_cast<int>(s.keys2.size());
  const int src = n1 + n2, snk = src + 1;
  MaxFlow mf(n1 + n2 + 2);
  for (int i = 0; i < n1; ++i) mf.add_edge(src, i, s.counts1[static_cast<std::size_t>(i)]);
  for (int j = 0; j < n2; ++j) mf.add_edge(n1 + j, snk, s.counts2[static_cast<std::size_t>(j)]);
  std::vector<int> ids;
  for (const auto& [a, b] : s.edges) ids.push_back(mf.add_edge(a, n1 + b, 1));
  long f = mf.run(src, snk);
  if (f != t1) return sol;
  sol.feasible = true;
  sol.used.resize(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) sol.used[k] = mf.edge(ids[k]).flow > 0;
  return sol;
}

// A directed cycle among line nodes: unused candidate edges go from the
// u1-line to the u2-line, used ones back. Returns the candidate indices on it.
inline std::optional<std::vector<std::size_t>> alternating_cycle(const SliceInstance& s, const std::vector<char>& used) {
  const int n1 = static_cast<int>(s.keys1.size()), n = n1 + static_cast<int>(s.keys2.size());
  std::vector<std::vector<std::pair<int, std::size_t>>> g(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < s.edges.size(); ++k) {
    int a = s.edges[k].first, b = n1 + s.edges[k].second;
    if (used[k])
      g[static_cast<std::size_t>(b)].emplace_back(a, k);
    else
      g[static_cast<std::size_t>(a)].emplace_back(b, k);
  }
  std::vector<int> colour(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, std::size_t>> parent(static_cast<std::size_t>(n), {-1, 0});
  for (int root = 0; root < n; ++root) {
    if (colour[static_cast<std::size_t>(root)]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    colour[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      const auto& out = g[static_cast<std::size_t>(u)];
      if (i == out.size()) {
        colour[static_cast<std::size_t>(u)] = 2;
        stack.pop_back();
        continue;
      }
      auto [v, k] = out[i++];
      if (colour[static_cast<std::size_t>(v)] == 0) {
        colour[static_cast<std::size_t>(v)] = 1;
        parent[static_cast<std::size_t>(v)] = {u, k};
        stack.emplace_back(v, 0);
      } else if (colour[static_cast<std::size_t>(v)] == 1) {
        std::vector<std::size_t> cycle{k};
        for (int w = u; w != v; w = parent[static_cast<std::size_t>(w)].first)
          cycle.push_back(parent[static_cast<std::size_t>(w)].second);
        return cycle;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct ConsistencyResult {
  bool consistent = false;
  bool unequal_totals = false;  // rejected by the cardinality check alone
};

inline ConsistencyResult consistency_check(const TomographyInstance& inst) {
  ConsistencyResult r;
  if (inst.p1.total() != inst.p2.total()) {
    r.unequal_totals = true;
    return r;
  }
  for (const auto& s : split_by_slice(inst))
    if (!detail::solve_slice(s).feasible) return r;
  r.consistent = true;
  return r;
}

inline bool consistency(const TomographyInstance& inst) { return consistency_check(inst).consistent; }

/// Some F inside the domain with X_u1 F = p1 and X_u2 F = p2; throws Infeasible.
inline std::vector<Vec3q> reconstruct(const TomographyInstance& inst) {
  if (inst.p1.total() != inst.p2.total()) throw Infeasible();
  std::vector<Vec3q> F;
  for (const auto& s : split_by_slice(inst)) {
    auto sol = detail::solve_slice(s);
    if (!sol.feasible) throw Infeasible();
    for (std::size_t k = 0; k < s.candidates.size(); ++k)
      if (sol.used[k]) F.push_back(s.candidates[k]);
  }
  F = canonical_set(std::move(F));
  if (!(xray(F, inst.u1()).counts == inst.p1.counts) || !(xray(F, inst.u2()).counts == inst.p2.counts))
    throw std::logic_error("reconstruct: flow solution does not reproduce the X-rays");
  return F;
}

struct UniquenessResult {
  bool unique = true;
  std::vector<Vec3q> solution;
  std::vector<Vec3q> other;  // a second solution when not unique
};

/// Unique iff no slice's flow admits an alternating cycle.
inline UniquenessResult uniqueness(const TomographyInstance& inst) {
  if (inst.p1.total() != inst.p2.total()) throw Infeasible();
  UniquenessResult r;
  std::vector<Vec3q> swapped;
  bool found = false;
  for (const auto& s : split_by_slice(inst)) {
    auto sol = detail::solve_slice(s);
    if (!sol.feasible) throw Infeasible();
    std::vector<char> alt = sol.used;
    if (!found) {
      if (auto cyc = detail::alternating_cycle(s, sol.used)) {
        found = true;
        for (auto k : *cyc) alt[k] = !alt[k];
      }
    }
    for (std::size_t k = 0; k < s.candidates.size(); ++k) {
      if (sol.used[k]) r.solution.push_back(s.candidates[k]);
      if (alt[k]) swapped.push_back(s.candidates[k]);
    }
  }
  r.solution = canonical_set(std::move(r.solution));
  if (found) {
    r.unique = false;
    r.other = canonical_set(std::move(swapped));
    if (!same_xrays(r.solution, r.other, {inst.u1(), inst.u2()}) || r.solution == r.other)
      throw std::logic_error("uniqueness: witness pair does not share X-rays");
  }
  return r;
}

/// All solutions (up to cap) by exhaustive search over the candidates.
inline std::vector<std::vector<Vec3q>> brute_force_oracle(const TomographyInstance& inst, std::size_t cap = 1000) {
  // candidates independent of the slicing code: domain points on supported lines
  std::map<Vec3q, int, StructLess> l1, l2;
  std::vector<long> need1, need2;
  for (const auto& [k, c] : inst.p1.counts) {
    l1[k] = static_cast<int>(need1.size());
    need1.push_back(c);
  }
  for (const auto& [k, c] : inst.p2.counts) {
    l2[k] = static_cast<int>(need2.size());
    need2.push_back(c);
  }
  std::vector<Vec3q> cand;
  std::vector<std::pair<int, int>> lines;
  for (const auto& x : canonical_set(inst.domain)) {
    auto a = l1.find(line_key(x, inst.u1()));
    auto b = l2.find(line_key(x, inst.u2()));
    if (a == l1.end() || b == l2.end()) continue;
    cand.push_back(x);
    lines.emplace_back(a->second, b->second);
  }
  if (cand.size() > 24) throw TooLarge();
  std::vector<std::vector<Vec3q>> out;
  std::vector<char> chosen(cand.size(), 0);
  long remaining = 0;
  for (long c : need1) remaining += c;
  long total2 = 0;
  for (long c : need2) total2 += c;
  if (remaining != total2) return out;
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (out.size() >= cap) return;
    if (left == 0) {
      for (long c : need1)
        if (c) return;
      for (long c : need2)
        if (c) return;
      std::vector<Vec3q> F;
      for (std::size_t k = 0; k < cand.size(); ++k)
        if (chosen[k]) F.push_back(cand[k]);
      if (xray(F, inst.u1()).counts == inst.p1.counts && xray(F, inst.u2()).counts == inst.p2.counts)
        out.push_back(std::move(F));
      return;
    }
    if (i == cand.size() || static_cast<long>(cand.size() - i) < left) return;
    auto [a, b] = lines[i];
    if (need1[static_cast<std::size_t>(a)] > 0 && need2[static_cast<std::size_t>(b)] > 0) {
      --need1[static_cast<std::size_t>(a)], --need2[static_cast<std::size_t>(b)], chosen[i] = 1;
      self(self, i + 1, left - 1);
      ++need1[static_cast<std::size_t>(a)], ++need2[static_cast<std::size_t>(b)], chosen[i] = 0;
    }
    self(self, i + 1, left);
  };
  rec(rec, 0, remaining);
  return out;
}

}  // namespace icotomo
