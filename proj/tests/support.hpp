#pragma once

#include "icotomo/convex.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/reconstruction.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace icotomo::testing {

inline std::vector<Vec3q> random_subset(const std::vector<Vec3q>& pts, std::size_t k, std::mt19937_64& rng) {
  std::vector<Vec3q> out;
  std::set<std::size_t> used;
  k = std::min(k, pts.size());
  while (out.size() < k) {
    std::size_t i = rng() % pts.size();
    if (used.insert(i).second) out.push_back(pts[i]);
  }
  return out;
}

inline const ModelSetPatch& patch_B(int radius) {
  static std::map<int, ModelSetPatch> cache;
  auto it = cache.find(radius);
  if (it == cache.end()) {
    PatchParams p;
    p.radius = radius;
    it = cache.emplace(radius, enumerate_patch(p)).first;
  }
  return it->second;
}

inline std::vector<Direction3> plane_directions() { return to_directions3(u5_directions(), ModelType::B); }

inline std::size_t candidate_count(const TomographyInstance& inst) {
  std::size_t n = 0;
  for (const auto& s : split_by_slice(inst)) n += s.candidates.size();
  return n;
}

/// Some x, x+a, x+b, x+a+b inside pts with a, b nonzero multiples of the
/// lattice representatives of u1, u2.
inline std::optional<std::array<Vec3q, 4>> find_parallelogram(const std::vector<Vec3q>& pts, const Direction3& u1,
                                                               const Direction3& u2, std::size_t start = 0) {
  std::set<Vec3q, StructLess> in(pts.begin(), pts.end());
  for (int k = 0; k < 8; ++k) {
    GoldenRat m = GoldenRat(tau_pow(k));
    for (GoldenRat sa : {m, -m})
      for (GoldenRat sb : {m, -m}) {
        Vec3q a = sa * u1.lattice_rep(), b = sb * u2.lattice_rep();
        for (std::size_t n = 0; n < pts.size(); ++n) {
          const Vec3q& x = pts[(start + n) % pts.size()];
          if (in.count(x + a) && in.count(x + b) && in.count(x + a + b))
            return std::array<Vec3q, 4>{x, x + a, x + b, x + a + b};
        }
      }
  }
  return std::nullopt;
}

/// A two-direction instance with at most max_candidates candidates; a third
/// of them have one unit of p1 moved to another line (usually inconsistent).
inline TomographyInstance small_instance(std::mt19937_64& rng, std::size_t max_candidates = 20) {
  const auto& pts = patch_B(6).physical_points();
  const auto U = plane_directions();
  for (;;) {
    std::size_t i = rng() % U.size(), j = rng() % U.size();
    if (i == j) continue;
    const bool switching = rng() % 3 == 0;
    std::optional<std::array<Vec3q, 4>> P;
    Vec3q c = pts[rng() % pts.size()];
    double r2 = 2.0 + static_cast<double>(rng() % 6);
    if (switching) {
      P = find_parallelogram(pts, U[i], U[j], rng() % pts.size());
      if (!P) continue;
      c = GoldenRat::fraction(1, 4) * ((*P)[0] + (*P)[1] + (*P)[2] + (*P)[3]);
      for (const auto& x : *P) {
        auto d = embed(x - c);
        r2 = std::max(r2, d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + 0.01);
      }
    }
    std::vector<Vec3q> domain;
    for (const auto& x : pts) {
      auto d = embed(x - c);
      if (d[0] * d[0] + d[1] * d[1] + d[2] * d[2] <= r2) domain.push_back(x);
    }
    if (domain.empty()) continue;
    auto F = random_subset(domain, 1 + rng() % 6, rng);
    if (switching) {
      F.resize(F.size() / 2);
      F.push_back((*P)[0]);
      F.push_back((*P)[3]);
      F = canonical_set(std::move(F));
    }
    auto inst = make_instance(F, U[i], U[j], domain);
    if (candidate_count(inst) > max_candidates) continue;
    if (rng() % 3 == 0 && !inst.p1.counts.empty()) {
      auto from = std::next(inst.p1.counts.begin(), static_cast<long>(rng() % inst.p1.counts.size()));
      auto to_key = line_key(domain[rng() % domain.size()], U[i]);
      if (--from->second == 0) inst.p1.counts.erase(from);
      ++inst.p1.counts[to_key];
    }
    return inst;
  }
}

}  // namespace icotomo::testing
