// Convex subsets of model sets, the direction sets U5 / U_ico, property (E),
// grid integrality and the uniqueness experiments.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/slicing.hpp"
#include "icotomo/tomography.hpp"
#include "icotomo/vec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace icotomo {

struct HullTouchesPatchBoundary : std::runtime_error {
  HullTouchesPatchBoundary() : std::runtime_error("hull reaches the boundary of the enumerated region") {}
};

// ---------------------------------------------------------------------------
// Direction sets

/// (1+tau)+zeta, (tau-1)+zeta, -tau+zeta, 2tau-zeta.
inline std::vector<CycPoint> u5_representatives() {
  const GoldenInt t = GoldenInt::tau();
  return {CycPoint{t + 1, 1}, CycPoint{t - 1, 1}, CycPoint{-t, 1}, CycPoint{t + t, -1}};
}

inline std::vector<Direction2> u5_directions() {
  std::vector<Direction2> out;
  for (const auto& o : u5_representatives()) out.push_back(make_direction(o));
  return out;
}

/// Phi^-1(U5) as L-directions in the slicing plane.
inline std::vector<Direction3> u_ico_directions(ModelType type) {
  std::vector<Direction3> out;
  for (const auto& o : u5_representatives()) out.push_back(make_direction(phi_inverse(o), lattice_tag(type)));
  return out;
}

inline std::vector<Direction3> to_directions3(const std::vector<Direction2>& U, ModelType type) {
  std::vector<Direction3> out;
  for (const auto& u : U) out.push_back(make_direction(phi_inverse(u.rep), lattice_tag(type)));
  return out;
}

struct PropertyE {
  GoldenInt determinant;
  bool is_unit;
};

/// alpha_o beta_o' - beta_o alpha_o' and whether it is a unit of Z[tau].
inline PropertyE property_E_check(const CycPoint& o, const CycPoint& o2) {
  if (!o.is_integral() || !o2.is_integral()) throw std::invalid_argument("property_E_check: non-integral input");
  GoldenRat d = o.alpha * o2.beta - o.beta * o2.alpha;
  if (d.is_zero()) throw std::invalid_argument("property_E_check: parallel input");
  return {d.num(), is_unit(d.num())};
}

inline bool has_property_E(const std::vector<Direction2>& U) {
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j)
      if (property_E_check(U[i].rep, U[j].rep).is_unit) return true;
  return false;
}

/// True iff every grid point of F in U lies in Z[zeta].
inline bool grid_integrality(const std::vector<CycPoint>& F, const std::vector<Direction2>& U) {
  for (const auto& p : grid(F, U))
    if (!p.is_integral()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exact hulls

/// Closed-hull membership for a counterclockwise convex polygon (or a
/// degenerate point / segment hull).
inline bool in_hull_2d(const std::vector<CycPoint>& hull, const CycPoint& p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0] == p;
  if (hull.size() == 2) {
    if (detail::orient2(hull[0], hull[1], p) != 0) return false;
    auto between = [](const GoldenRat& a, const GoldenRat& b, const GoldenRat& x) {
      return sign(x - a) * sign(x - b) <= 0;
    };
    return between(hull[0].alpha, hull[1].alpha, p.alpha) && between(hull[0].beta, hull[1].beta, p.beta);
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (detail::orient2(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

inline std::vector<CycPoint> convex_hull(const std::vector<CycPoint>& pts) { return detail::convex_hull_2d(pts); }

/// C = conv(C) n S exactly. If region_radius2 is given, S is the part of an
/// infinite set inside |z|^2 < region_radius2 and the hull must stay inside.
inline bool is_convex_subset(const std::vector<CycPoint>& C, const std::vector<CycPoint>& S,
                             const std::optional<GoldenRat>& region_radius2 = std::nullopt) {
  if (C.empty()) return true;
  auto hull = convex_hull(C);
  if (region_radius2)
    for (const auto& v : hull)
      if (sign(*region_radius2 - abs2(v)) <= 0) throw HullTouchesPatchBoundary();
  std::set<CycPoint, StructLess> in(C.begin(), C.end());
  for (const auto& s : S)
    if (!in.count(s) && in_hull_2d(hull, s)) return false;
  return true;
}

namespace detail {

// Sign of det(b - a, c - a, d - a) with a floating filter.
inline int orient3(const Vec3q& a, const Vec3q& b, const Vec3q& c, const Vec3q& d, const std::array<double, 3>& ad,
                   const std::array<double, 3>& bd, const std::array<double, 3>& cd, const std::array<double, 3>& dd) {
  double u[3], v[3], w[3];
  double mag = 0;
  for (int i = 0; i < 3; ++i) {
    u[i] = bd[i] - ad[i];
    v[i] = cd[i] - ad[i];
    w[i] = dd[i] - ad[i];
  }
  double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
  for (int i = 0; i < 3; ++i) mag = std::max({mag, std::abs(u[i]), std::abs(v[i]), std::abs(w[i])});
  double bound = 1e-10 * (1 + mag * mag * mag);
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return sign(dot(b - a, cross(c - a, d - a)));
}

}  // namespace detail

/// Facets of the convex hull of a 3D point set as outward halfspaces
/// n . x <= c; empty if the points are coplanar (handled by the caller).
inline std::vector<Facet> convex_hull_3d(const std::vector<Vec3q>& input) {
  auto pts = canonical_set(input);
  const std::size_t n = pts.size();
  std::vector<std::array<double, 3>> pd;
  for (const auto& p : pts) pd.push_back(embed(p));
  if (n < 4) return {};
  // initial tetrahedron
  std::size_t i0 = 0, i1 = 1, i2 = n, i3 = n;
  for (std::size_t k = 2; k < n && i2 == n; ++k)
    if (!is_zero(cross(pts[i1] - pts[i0], pts[k] - pts[i0]))) i2 = k;
  if (i2 == n) return {};
  for (std::size_t k = 2; k < n && i3 == n; ++k)
    if (k != i2 && detail::orient3(pts[i0], pts[i1], pts[i2], pts[k], pd[i0], pd[i1], pd[i2], pd[k]) != 0) i3 = k;
  if (i3 == n) return {};
  struct Face {
    std::array<std::size_t, 3> v;
    bool alive;
  };
  std::vector<Face> faces;
  auto orient = [&](const Face& f, std::size_t p) {
    return detail::orient3(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], pts[p], pd[f.v[0]], pd[f.v[1]], pd[f.v[2]], pd[p]);
  };
  auto add = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t inside) {
    Face f{{a, b, c}, true};
    if (orient(f, inside) > 0) std::swap(f.v[1], f.v[2]);  // outward: inside point has negative orientation
    faces.push_back(f);
  };
  add(i0, i1, i2, i3);
  add(i0, i1, i3, i2);
  add(i0, i2, i3, i1);
  add(i1, i2, i3, i0);
  for (std::size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && orient(faces[f], p) > 0) visible.push_back(f);
    if (visible.empty()) continue;
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (auto f : visible) {
      faces[f].alive = false;
      for (int e = 0; e < 3; ++e) edges[{faces[f].v[e], faces[f].v[(e + 1) % 3]}]++;
    }
    for (const auto& [e, c] : edges)
      if (!edges.count({e.second, e.first})) faces.push_back({{e.first, e.second, p}, true});
  }
  std::vector<Facet> out;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    Vec3q nrm = cross(pts[f.v[1]] - pts[f.v[0]], pts[f.v[2]] - pts[f.v[0]]);
    out.push_back({nrm, dot(nrm, pts[f.v[0]])});
  }
  return out;
}

/// C = conv(C) n S exactly for a 3D point set. If a ball (center, radius2)
/// bounding the enumerated S is given, the hull must stay strictly inside.
inline bool is_convex_subset(const std::vector<Vec3q>& C, const std::vector<Vec3q>& S,
                             const std::optional<std::pair<Vec3q, GoldenRat>>& region = std::nullopt) {
  if (C.empty()) return true;
  if (region)
    for (const auto& c : C)
      if (sign(region->second - norm2(c - region->first)) <= 0) throw HullTouchesPatchBoundary();
  std::set<Vec3q, StructLess> in(C.begin(), C.end());
  auto facets = convex_hull_3d(C);
  if (facets.empty()) {
    // coplanar (or fewer than four points): reduce to the plane of C
    auto pts = canonical_set(C);
    Vec3q nrm{0, 0, 0};
    for (std::size_t i = 1; i < pts.size() && is_zero(nrm); ++i)
      for (std::size_t j = i + 1; j < pts.size() && is_zero(nrm); ++j) nrm = cross(pts[i] - pts[0], pts[j] - pts[0]);
    for (const auto& s : S) {
      if (in.count(s)) continue;
      if (is_zero(nrm)) {
        // collinear: s must be on the segment hull
        if (pts.size() == 1) continue;
        Vec3q d = pts.back() - pts.front();
        if (!is_zero(cross(s - pts.front(), d))) continue;
        GoldenRat lo = dot(pts.front(), d), hi = lo, v = dot(s, d);
        for (const auto& p : pts) {
          GoldenRat x = dot(p, d);
          if (compare(x, lo) < 0) lo = x;
          if (compare(x, hi) > 0) hi = x;
        }
        if (sign(v - lo) >= 0 && sign(hi - v) >= 0) return false;
        continue;
      }
      if (!dot(s - pts[0], nrm).is_zero()) continue;
      // planar hull test via orientation around each hull edge
      bool inside = true;
      for (std::size_t i = 0; i < pts.size() && inside; ++i)
        for (std::size_t j = 0; j < pts.size() && inside; ++j) {
          if (i == j) continue;
          int side_s = sign(dot(nrm, cross(pts[j] - pts[i], s - pts[i])));
          bool edge = true;
          int side = 0;
          for (const auto& q : pts) {
            int sq = sign(dot(nrm, cross(pts[j] - pts[i], q - pts[i])));
            if (sq == 0) continue;
            if (side == 0) side = sq;
            if (sq != side) {
              edge = false;
              break;
            }
          }
          if (edge && side != 0 && side_s == -side) inside = false;
        }
      if (inside) return false;
    }
    return true;
  }
  for (const auto& s : S) {
    if (in.count(s)) continue;
    bool inside = true;
    for (const auto& f : facets)
      if (sign(f.offset - dot(f.normal, s)) < 0) {
        inside = false;
        break;
      }
    if (inside) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Slices of point sets and H-convexity

/// Phi-coordinates of the points of P at each height, relative to a fixed
/// base point of that height.
struct SlicedSet {
  std::map<GoldenRat, std::pair<Vec3q, std::vector<CycPoint>>, StructLess> slices;
};

inline SlicedSet slice_points(const std::vector<Vec3q>& P, const std::map<GoldenRat, Vec3q, StructLess>& bases) {
  SlicedSet out;
  for (const auto& x : P) {
    GoldenRat h = height(x);
    auto it = bases.find(h);
    if (it == bases.end()) throw std::invalid_argument("slice_points: no base point at this height");
    auto& slot = out.slices[h];
    slot.first = it->second;
    slot.second.push_back(phi(x - it->second));
  }
  return out;
}

inline std::map<GoldenRat, Vec3q, StructLess> slice_bases(const std::vector<Vec3q>& S) {
  std::map<GoldenRat, Vec3q, StructLess> bases;
  for (const auto& x : S) bases.emplace(height(x), x);
  return bases;
}

/// True iff every slice of C is a convex subset of the corresponding slice
/// of the patch point set S.
inline bool is_H_convex(const std::vector<Vec3q>& C, const std::vector<Vec3q>& S) {
  auto bases = slice_bases(S);
  auto sc = slice_points(C, bases);
  auto ss = slice_points(S, bases);
  for (const auto& [h, slot] : sc.slices)
    if (!is_convex_subset(slot.second, ss.slices.at(h).second)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Uniqueness experiments

struct SamplerConfig {
  int samples = 200;
  std::uint64_t seed = 1;
  int max_halfplanes = 5;
  int max_attempts_factor = 50;
};

template <class P>
struct Collision {
  std::vector<P> first;
  std::vector<P> second;
};

template <class P>
struct UniquenessReport {
  std::vector<DirectionOf<P>> directions;
  int requested = 0;
  int distinct = 0;  // distinct nonempty sets examined
  std::vector<std::size_t> cardinalities;
  std::vector<Collision<P>> collisions;
  bool slice_localized = true;  // every collision differs in some slice
  bool all_convex = true;       // every sample passed the convexity check
};

namespace detail {

inline GoldenRat approx_rational(double x, long den = 1024) {
  return GoldenRat::fraction(static_cast<long>(std::llround(x * static_cast<double>(den))), den);
}

template <class P>
using Signature = std::vector<std::map<KeyOf<P>, long, StructLess>>;

template <class P>
Signature<P> signature(const std::vector<P>& C, const std::vector<DirectionOf<P>>& U) {
  Signature<P> sig;
  for (const auto& u : U) sig.push_back(xray(C, u).counts);
  return sig;
}

template <class P>
struct SignatureLess {
  bool operator()(const Signature<P>& a, const Signature<P>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != b[i].size()) return a[i].size() < b[i].size();
      auto x = a[i].begin();
      auto y = b[i].begin();
      for (; x != a[i].end(); ++x, ++y) {
        if (int c = struct_cmp(x->first, y->first)) return c < 0;
        if (x->second != y->second) return x->second < y->second;
      }
    }
    return false;
  }
};

}  // namespace detail

/// Random convex subsets K n S of a slice point set S (Z[zeta] coordinates,
/// within |z|^2 < region_radius2), where K is a disk cut by random halfplanes
/// with rational coefficients in the (alpha, beta) coordinates; collisions
/// of X-ray signatures in U between distinct sets are reported.
inline UniquenessReport<CycPoint> uniqueness_experiment_slice(const std::vector<CycPoint>& S,
                                                              const std::vector<Direction2>& U,
                                                              const SamplerConfig& cfg,
                                                              const std::optional<GoldenRat>& region_radius2 = {}) {
  UniquenessReport<CycPoint> rep;
  rep.directions = U;
  rep.requested = cfg.samples;
  if (S.empty() || cfg.samples <= 0) return rep;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::array<double, 2>> coords;
  double extent = 0;
  for (const auto& z : S) {
    coords.push_back({embed(z.alpha), embed(z.beta)});
    extent = std::max({extent, std::abs(coords.back()[0]), std::abs(coords.back()[1])});
  }
  std::map<detail::Signature<CycPoint>, std::vector<CycPoint>, detail::SignatureLess<CycPoint>> seen;
  std::set<std::vector<CycPoint>, std::function<bool(const std::vector<CycPoint>&, const std::vector<CycPoint>&)>>
      sets([](const std::vector<CycPoint>& a, const std::vector<CycPoint>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), StructLess{});
      });
  const int max_attempts = cfg.samples * cfg.max_attempts_factor;
  for (int attempt = 0; attempt < max_attempts && rep.distinct < cfg.samples; ++attempt) {
    const auto& c0 = coords[rng() % coords.size()];
    CycPoint centre{detail::approx_rational(c0[0] + (unif(rng) - 0.5)), detail::approx_rational(c0[1] + (unif(rng) - 0.5))};
    GoldenRat r2 = detail::approx_rational(std::pow(0.3 + unif(rng) * extent * 0.6, 2));
    struct HP {
      GoldenRat a, b, c;
    };
    std::vector<HP> hps;
    int nh = static_cast<int>(rng() % (cfg.max_halfplanes + 1));
    for (int i = 0; i < nh; ++i) {
      double th = unif(rng) * 2 * M_PI;
      double off = (unif(rng) * 0.8 + 0.1) * std::sqrt(embed(r2));
      double a = std::cos(th), b = std::sin(th);
      hps.push_back({detail::approx_rational(a), detail::approx_rational(b),
                     detail::approx_rational(a * embed(centre.alpha) + b * embed(centre.beta) + off)});
    }
    std::vector<CycPoint> C;
    for (const auto& z : S) {
      if (sign(r2 - abs2(z - centre)) <= 0) continue;
      bool ok = true;
      for (const auto& h : hps)
        if (sign(h.c - h.a * z.alpha - h.b * z.beta) < 0) {
          ok = false;
          break;
        }
      if (ok) C.push_back(z);
    }
    if (C.empty()) continue;
    C = canonical_set(std::move(C));
    if (!sets.insert(C).second) continue;
    ++rep.distinct;
    rep.cardinalities.push_back(C.size());
    if (!is_convex_subset(C, S, region_radius2)) rep.all_convex = false;
    auto sig = detail::signature(C, U);
    auto [it, inserted] = seen.emplace(std::move(sig), C);
    if (!inserted) rep.collisions.push_back({it->second, C});
  }
  return rep;
}

/// Random convex bodies (ball cut by halfspaces) intersected with a 3D patch
/// point set; signatures in U (directions in the slicing plane) compared
/// across distinct samples. Every sample is also checked to be convex in
/// each slice, and every collision must already differ in one slice.
inline UniquenessReport<Vec3q> uniqueness_experiment_3d(const std::vector<Vec3q>& S, const std::vector<Direction3>& U,
                                                        const SamplerConfig& cfg) {
  UniquenessReport<Vec3q> rep;
  rep.directions = U;
  rep.requested = cfg.samples;
  for (const auto& u : U)
    if (!height(u.rep()).is_zero()) throw std::invalid_argument("uniqueness_experiment_3d: direction not in H");
  if (S.empty() || cfg.samples <= 0) return rep;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::array<double, 3>> coords;
  double extent = 0;
  for (const auto& x : S) {
    coords.push_back(embed(x));
    for (double c : coords.back()) extent = std::max(extent, std::abs(c));
  }
  auto bases = slice_bases(S);
  auto sliced_S = slice_points(S, bases);
  std::map<detail::Signature<Vec3q>, std::vector<Vec3q>, detail::SignatureLess<Vec3q>> seen;
  std::set<std::vector<Vec3q>, std::function<bool(const std::vector<Vec3q>&, const std::vector<Vec3q>&)>> sets(
      [](const std::vector<Vec3q>& a, const std::vector<Vec3q>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), StructLess{});
      });
  const int max_attempts = cfg.samples * cfg.max_attempts_factor;
  for (int attempt = 0; attempt < max_attempts && rep.distinct < cfg.samples; ++attempt) {
    const auto& c0 = coords[rng() % coords.size()];
    Vec3q centre;
    for (int i = 0; i < 3; ++i) centre[i] = detail::approx_rational(c0[i] + (unif(rng) - 0.5));
    GoldenRat r2 = detail::approx_rational(std::pow(0.5 + unif(rng) * extent * 0.4, 2));
    std::vector<Facet> hs;
    int nh = static_cast<int>(rng() % (cfg.max_halfplanes + 1));
    for (int i = 0; i < nh; ++i) {
      double z = 2 * unif(rng) - 1, th = 2 * M_PI * unif(rng), rr = std::sqrt(1 - z * z);
      std::array<double, 3> nd{rr * std::cos(th), rr * std::sin(th), z};
      double off = (unif(rng) * 0.8 + 0.1) * std::sqrt(embed(r2));
      Vec3q nq{detail::approx_rational(nd[0]), detail::approx_rational(nd[1]), detail::approx_rational(nd[2])};
      auto cd = embed(centre);
      hs.push_back({nq, detail::approx_rational(nd[0] * cd[0] + nd[1] * cd[1] + nd[2] * cd[2] + off)});
    }
    std::vector<Vec3q> C;
    for (const auto& x : S) {
      if (sign(r2 - norm2(x - centre)) <= 0) continue;
      bool ok = true;
      for (const auto& h : hs)
        if (sign(h.offset - dot(h.normal, x)) < 0) {
          ok = false;
          break;
        }
      if (ok) C.push_back(x);
    }
    if (C.empty()) continue;
    C = canonical_set(std::move(C));
    if (!sets.insert(C).second) continue;
    ++rep.distinct;
    rep.cardinalities.push_back(C.size());
    auto sc = slice_points(C, bases);
    for (const auto& [h, slot] : sc.slices)
      if (!is_convex_subset(slot.second, sliced_S.slices.at(h).second)) rep.all_convex = false;
    auto sig = detail::signature(C, U);
    auto [it, inserted] = seen.emplace(std::move(sig), C);
    if (!inserted) {
      rep.collisions.push_back({it->second, C});
      // the two sets must differ in some slice
      auto a = slice_points(it->second, bases), b = slice_points(C, bases);
      bool differs = false;
      for (const auto& [h, slot] : a.slices) {
        auto jt = b.slices.find(h);
        if (jt == b.slices.end() || canonical_set(jt->second.second) != canonical_set(slot.second)) differs = true;
      }
      if (b.slices.size() != a.slices.size()) differs = true;
      if (!differs) rep.slice_localized = false;
    }
  }
  return rep;
}

/// Searches affinely regular hexagons with edges along the three directions;
/// for a hexagon with vertices in S, the convex set P = conv(hexagon) n S
/// minus either alternate vertex triple gives two sets with equal X-rays.
/// Returns a verified pair of distinct convex subsets or nullopt.
inline std::optional<std::pair<std::vector<CycPoint>, std::vector<CycPoint>>> three_direction_search(
    const std::vector<CycPoint>& S, const std::vector<Direction2>& U, int budget) {
  if (U.size() != 3) throw std::invalid_argument("three_direction_search needs three directions");
  if (budget <= 0 || S.empty()) return std::nullopt;
  const CycPoint d1 = U[0].rep, d2 = U[1].rep, d3 = U[2].rep;
  // d3 = p d1 + q d2
  GoldenRat det = d1.alpha * d2.beta - d1.beta * d2.alpha;
  if (det.is_zero()) throw std::invalid_argument("three_direction_search: parallel directions");
  GoldenRat p = (d3.alpha * d2.beta - d3.beta * d2.alpha) / det;
  GoldenRat q = (d1.alpha * d3.beta - d1.beta * d3.alpha) / det;
  // e1 = x d1, e2 = y d2, e2 - e1 = z d3 with x = -z p, y = z q
  Integer den = p.den() / detail::gcd(p.den(), q.den()) * q.den();
  std::set<CycPoint, StructLess> inS(S.begin(), S.end());
  std::vector<GoldenInt> scales;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      if (a != 0 || b != 0) scales.push_back(GoldenInt(a, b) * GoldenInt(den));
  std::sort(scales.begin(), scales.end(), [](const GoldenInt& u, const GoldenInt& v) {
    return std::abs(embed(u)) < std::abs(embed(v));
  });
  int tried = 0;
  for (const auto& zs : scales) {
    GoldenRat z(zs);
    GoldenRat x = -z * p, y = z * q;
    if (!x.is_integral() || !y.is_integral() || x.is_zero() || y.is_zero()) continue;
    CycPoint e1 = x * d1, e2 = y * d2;
    for (const auto& v : S) {
      if (tried >= budget) return std::nullopt;
      std::array<CycPoint, 6> hex{v, v + e1, v + e1 + e2, v + GoldenRat(2) * e2, v + GoldenRat(2) * e2 - e1,
                                  v + e2 - e1};
      bool all_in = true;
      for (const auto& h : hex) all_in = all_in && inS.count(h);
      if (!all_in) continue;
      ++tried;
      std::vector<CycPoint> hull = convex_hull(std::vector<CycPoint>(hex.begin(), hex.end()));
      std::vector<CycPoint> P;
      for (const auto& s : S)
        if (in_hull_2d(hull, s)) P.push_back(s);
      std::set<CycPoint, StructLess> t1{hex[0], hex[2], hex[4]}, t2{hex[1], hex[3], hex[5]};
      std::vector<CycPoint> C1, C2;
      for (const auto& s : P) {
        if (!t1.count(s)) C1.push_back(s);
        if (!t2.count(s)) C2.push_back(s);
      }
      if (!is_convex_subset(C1, S) || !is_convex_subset(C2, S)) continue;
      if (!same_xrays(C1, C2, U)) continue;
      return std::make_pair(canonical_set(C1), canonical_set(C2));
    }
  }
  return std::nullopt;
}

}  // namespace icotomo
