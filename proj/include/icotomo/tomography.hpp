// Discrete parallel X-rays with exact line keys, grids, switching components
// and the small-set determination check.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/slicing.hpp"
#include "icotomo/vec.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace icotomo {

struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmbeddingFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Directions

/// Parallel class of a nonzero vector of Q(tau)^3, stored as its canonical
/// primitive Z[tau]^3 representative.
struct Direction3 {
  Vec3i prim;
  ModuleTag tag = ModuleTag::ImIcosian;

  Vec3q rep() const { return to_rat(prim); }
  /// The primitive element of L in this direction.
  Vec3q lattice_rep() const { return primitive_lattice_element(prim, tag); }
  friend bool operator==(const Direction3& x, const Direction3& y) { return x.prim == y.prim; }
};

inline Direction3 make_direction(const Vec3q& v, ModuleTag tag) {
  auto n = is_L_direction(v, tag);
  if (!n) throw std::invalid_argument("zero vector is not a direction");
  return {*n, tag};
}

inline bool parallel(const Direction3& x, const Direction3& y) { return is_zero(cross(x.prim, y.prim)); }

/// Canonical primitive Z[zeta]-representative of a planar direction.
struct Direction2 {
  CycPoint rep;
  friend bool operator==(const Direction2&, const Direction2&) = default;
};

inline Direction2 make_direction(const CycPoint& z) {
  if (z.is_zero()) throw std::invalid_argument("zero vector is not a direction");
  Integer l = detail::gcd(z.alpha.den(), z.beta.den());
  l = z.alpha.den() / l * z.beta.den();
  GoldenInt a = (GoldenRat(GoldenInt(l)) * z.alpha).num();
  GoldenInt b = (GoldenRat(GoldenInt(l)) * z.beta).num();
  GoldenInt g = gcd(a, b);
  a = *exact_divide(a, g);
  b = *exact_divide(b, g);
  const GoldenInt tau = GoldenInt::tau(), inv_tau{-1, 1};
  const GoldenRat tau4 = GoldenRat(tau * tau * tau * tau);
  for (;;) {
    CycPoint c{a, b};
    GoldenRat ratio = abs2(c) / abs2_internal(star5(c));
    if (sign(ratio - GoldenRat(1)) < 0) {
      a *= tau, b *= tau;
    } else if (sign(ratio - tau4) >= 0) {
      a *= inv_tau, b *= inv_tau;
    } else {
      break;
    }
  }
  if (sign(a) < 0 || (a.is_zero() && sign(b) < 0)) a = -a, b = -b;
  return {CycPoint{a, b}};
}

inline bool parallel(const Direction2& x, const Direction2& y) {
  return (x.rep.alpha * y.rep.beta - x.rep.beta * y.rep.alpha).is_zero();
}

// ---------------------------------------------------------------------------
// Line keys

/// x cross d: constant along x + R d, distinct for distinct parallel lines.
inline Vec3q line_key(const Vec3q& x, const Direction3& d) { return cross(x, to_rat(d.prim)); }
/// det(x, d) in {1, zeta} coordinates.
inline GoldenRat line_key(const CycPoint& x, const Direction2& d) {
  return x.alpha * d.rep.beta - x.beta * d.rep.alpha;
}

/// The point of the line with the given key closest to the origin (3D) or
/// on the axis through the origin (2D).
inline Vec3q line_point(const Vec3q& key, const Direction3& d) {
  Vec3q dn = to_rat(d.prim);
  return (GoldenRat(1) / norm2(dn)) * cross(dn, key);
}

template <class P>
struct PointTraits;

template <>
struct PointTraits<Vec3q> {
  using Direction = Direction3;
  using Key = Vec3q;
};
template <>
struct PointTraits<CycPoint> {
  using Direction = Direction2;
  using Key = GoldenRat;
};

template <class P>
using DirectionOf = typename PointTraits<P>::Direction;
template <class P>
using KeyOf = typename PointTraits<P>::Key;

/// X_u F: line key -> number of points of F on that line.
template <class P>
struct XRayImage {
  DirectionOf<P> direction;
  std::map<KeyOf<P>, long, StructLess> counts;

  long total() const {
    long t = 0;
    for (const auto& [k, c] : counts) t += c;
    return t;
  }
  friend bool operator==(const XRayImage& x, const XRayImage& y) {
    return x.direction == y.direction && x.counts == y.counts;
  }
};

template <class P>
XRayImage<P> xray(const std::vector<P>& F, const DirectionOf<P>& u) {
  XRayImage<P> img{u, {}};
  for (const auto& x : F) ++img.counts[line_key(x, u)];
  return img;
}

template <class P>
bool same_xrays(const std::vector<P>& F, const std::vector<P>& G, const std::vector<DirectionOf<P>>& U) {
  if (F.size() != G.size()) return false;
  for (const auto& u : U)
    if (!(xray(F, u).counts == xray(G, u).counts)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Grids

namespace detail {

inline std::optional<CycPoint> intersect_lines(const GoldenRat& k1, const Direction2& d1, const GoldenRat& k2,
                                               const Direction2& d2) {
  // alpha b1 - beta a1 = k1, alpha b2 - beta a2 = k2
  const auto &a1 = d1.rep.alpha, &b1 = d1.rep.beta, &a2 = d2.rep.alpha, &b2 = d2.rep.beta;
  GoldenRat det = -b1 * a2 + a1 * b2;
  if (det.is_zero()) return std::nullopt;
  return CycPoint{(-k1 * a2 + a1 * k2) / det, (b1 * k2 - b2 * k1) / det};
}

inline std::optional<Vec3q> intersect_lines(const Vec3q& k1, const Direction3& d1, const Vec3q& k2,
                                            const Direction3& d2) {
  Vec3q p = line_point(k1, d1), q = line_point(k2, d2);
  Vec3q u = to_rat(d1.prim), v = to_rat(d2.prim);
  Vec3q n = cross(u, v);
  GoldenRat n2 = norm2(n);
  if (n2.is_zero()) return std::nullopt;
  Vec3q w = q - p;
  if (!dot(w, n).is_zero()) return std::nullopt;  // skew
  GoldenRat s = dot(cross(w, v), n) / n2;
  return p + s * u;
}

// Candidate intersections of supported lines of the first two images. For
// two directions in the slicing plane only lines of equal height can meet.
inline std::vector<Vec3q> pair_intersections(const XRayImage<Vec3q>& x1, const XRayImage<Vec3q>& x2) {
  std::vector<Vec3q> out;
  const bool planar = height(x1.direction.rep()).is_zero() && height(x2.direction.rep()).is_zero();
  if (planar) {
    std::map<GoldenRat, std::vector<Vec3q>, StructLess> by_height;
    for (const auto& [k, c] : x2.counts) by_height[height(line_point(k, x2.direction))].push_back(k);
    for (const auto& [k1, c1] : x1.counts) {
      auto it = by_height.find(height(line_point(k1, x1.direction)));
      if (it == by_height.end()) continue;
      for (const auto& k2 : it->second)
        if (auto p = intersect_lines(k1, x1.direction, k2, x2.direction)) out.push_back(*p);
    }
  } else {
    for (const auto& [k1, c1] : x1.counts)
      for (const auto& [k2, c2] : x2.counts)
        if (auto p = intersect_lines(k1, x1.direction, k2, x2.direction)) out.push_back(*p);
  }
  return out;
}

inline std::vector<CycPoint> pair_intersections(const XRayImage<CycPoint>& x1, const XRayImage<CycPoint>& x2) {
  std::vector<CycPoint> out;
  for (const auto& [k1, c1] : x1.counts)
    for (const auto& [k2, c2] : x2.counts)
      if (auto p = intersect_lines(k1, x1.direction, k2, x2.direction)) out.push_back(*p);
  return out;
}

}  // namespace detail

/// Grid of the supports of the given X-ray images: points lying on a
/// supported line in every direction. Directions must be pairwise non-parallel.
template <class P>
std::vector<P> grid_from_xrays(const std::vector<XRayImage<P>>& images) {
  if (images.size() < 2) throw std::invalid_argument("grid needs at least two directions");
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (parallel(images[i].direction, images[j].direction))
        throw std::invalid_argument("grid directions must be pairwise non-parallel");
  std::vector<P> out;
  for (auto& p : detail::pair_intersections(images[0], images[1])) {
    bool keep = true;
    for (std::size_t i = 2; i < images.size() && keep; ++i)
      keep = images[i].counts.count(line_key(p, images[i].direction)) > 0;
    if (keep) out.push_back(std::move(p));
  }
  return canonical_set(std::move(out));
}

template <class P>
std::vector<P> grid(const std::vector<P>& F, const std::vector<DirectionOf<P>>& U) {
  std::vector<XRayImage<P>> images;
  for (const auto& u : U) images.push_back(xray(F, u));
  return grid_from_xrays(images);
}

/// For card(F) <= k and k + 1 directions the grid is F itself, which is then
/// the unique reconstruction.
template <class P>
std::vector<P> determine_small(const std::vector<P>& F, const std::vector<DirectionOf<P>>& U) {
  return grid(F, U);
}

// ---------------------------------------------------------------------------
// Centroids and homotheties

template <class P>
P centroid(const std::vector<P>& F) {
  P c{};
  if constexpr (std::is_same_v<P, Vec3q>) c = {0, 0, 0};
  for (const auto& x : F) c = c + x;
  return GoldenRat::fraction(1, static_cast<long>(std::max<std::size_t>(F.size(), 1))) * c;
}

/// True iff the centroids of F and G lie on a common line parallel to u.
inline bool centroid_check(const std::vector<Vec3q>& F, const std::vector<Vec3q>& G, const Direction3& u) {
  if (!same_xrays(F, G, {u})) throw PreconditionViolated("centroid_check: X-rays in u differ");
  return is_zero(cross(centroid(F) - centroid(G), to_rat(u.prim)));
}
inline bool centroid_check(const std::vector<CycPoint>& F, const std::vector<CycPoint>& G, const Direction2& u) {
  if (!same_xrays(F, G, {u})) throw PreconditionViolated("centroid_check: X-rays in u differ");
  return line_key(centroid(F) - centroid(G), u).is_zero();
}

template <class P>
std::vector<P> apply_homothety(const std::vector<P>& F, const GoldenRat& lambda, const P& t) {
  std::vector<P> out;
  for (const auto& x : F) out.push_back(lambda * x + t);
  return out;
}

/// same_xrays(h(F), h(G), U) for h(x) = lambda x + t, lambda > 0.
template <class P>
bool homothety_transport(const std::vector<P>& F, const std::vector<P>& G, const std::vector<DirectionOf<P>>& U,
                         const GoldenRat& lambda, const P& t) {
  if (sign(lambda) <= 0) throw std::invalid_argument("homothety factor must be positive");
  if (!same_xrays(F, G, U)) throw PreconditionViolated("homothety_transport: X-rays differ");
  return same_xrays(apply_homothety(F, lambda, t), apply_homothety(G, lambda, t), U);
}

// ---------------------------------------------------------------------------
// Switching components

struct SwitchingPair {
  std::vector<Vec3q> F;  // in the model set
  std::vector<Vec3q> G;
  std::vector<Vec3q> F_lattice;  // the construction in L before embedding
  std::vector<Vec3q> G_lattice;
  Homothety h;
};

/// Builds F, G in L with equal X-rays in every direction of U (card 2^(k-1)
/// each) by the doubling construction, then maps them into Lambda by an
/// expansive homothety. Throws EmbeddingFailed if the image leaves the
/// patch ball.
inline SwitchingPair switching_pair(const std::vector<Direction3>& U, const PatchParams& params) {
  if (U.empty()) throw std::invalid_argument("switching_pair needs at least one direction");
  using Set = std::set<Vec3q, StructLess>;
  Set F{Vec3q{0, 0, 0}};
  Set G{U[0].lattice_rep()};
  for (std::size_t j = 1; j < U.size(); ++j) {
    Set both = F;
    both.insert(G.begin(), G.end());
    Vec3q alpha;
    for (long m = 1;; ++m) {
      alpha = GoldenRat(m) * U[j].lattice_rep();
      bool disjoint = true;
      for (const auto& x : both)
        if (both.count(x + alpha)) {
          disjoint = false;
          break;
        }
      if (disjoint) break;
    }
    Set F2 = F, G2 = G;
    for (const auto& x : G) F2.insert(x + alpha);
    for (const auto& x : F) G2.insert(x + alpha);
    F = std::move(F2);
    G = std::move(G2);
  }
  SwitchingPair sp;
  sp.F_lattice.assign(F.begin(), F.end());
  sp.G_lattice.assign(G.begin(), G.end());
  std::vector<Vec3q> all = sp.F_lattice;
  all.insert(all.end(), sp.G_lattice.begin(), sp.G_lattice.end());
  Embedding e;
  try {
    e = embed_finite_set(all, params);
  } catch (const NoInteriorPoint& ex) {
    throw EmbeddingFailed(ex.what());
  }
  sp.h = e.h;
  sp.F.assign(e.image.begin(), e.image.begin() + static_cast<long>(F.size()));
  sp.G.assign(e.image.begin() + static_cast<long>(F.size()), e.image.end());
  for (const auto& x : e.image)
    if (sign(params.radius * params.radius - norm2(x - params.center)) <= 0)
      throw EmbeddingFailed("switching component does not fit inside the patch ball");
  return sp;
}

/// (C n Lambda) \ F and (C n Lambda) \ G for a region point set C n Lambda
/// containing F and G.
template <class P>
std::pair<std::vector<P>, std::vector<P>> complement_variant(const std::vector<P>& F, const std::vector<P>& G,
                                                             const std::vector<P>& region) {
  std::set<P, StructLess> r(region.begin(), region.end());
  for (const auto& x : F)
    if (!r.count(x)) throw PreconditionViolated("complement_variant: F not inside the region");
  for (const auto& x : G)
    if (!r.count(x)) throw PreconditionViolated("complement_variant: G not inside the region");
  std::set<P, StructLess> f(F.begin(), F.end()), g(G.begin(), G.end());
  std::vector<P> F1, F2;
  for (const auto& x : r) {
    if (!f.count(x)) F1.push_back(x);
    if (!g.count(x)) F2.push_back(x);
  }
  return {F1, F2};
}

/// Randomized search for two distinct sets of diameter < R inside the point
/// set with equal X-rays in u1 and u2 (parallelogram switching components).
inline std::optional<std::pair<std::vector<Vec3q>, std::vector<Vec3q>>> bounded_falsifier(
    const GoldenRat& R, const Direction3& u1, const Direction3& u2, const std::vector<Vec3q>& points, int trials,
    std::uint64_t seed) {
  if (points.empty() || trials <= 0) return std::nullopt;
  std::set<Vec3q, StructLess> S(points.begin(), points.end());
  std::map<Vec3q, std::vector<const Vec3q*>, StructLess> lines1, lines2;
  for (const auto& p : S) {
    lines1[line_key(p, u1)].push_back(&p);
    lines2[line_key(p, u2)].push_back(&p);
  }
  const GoldenRat R2 = R * R;
  auto close = [&](const Vec3q& a, const Vec3q& b) { return sign(R2 - norm2(a - b)) > 0; };
  std::mt19937_64 rng(seed);
  std::vector<Vec3q> pts(S.begin(), S.end());
  for (int t = 0; t < trials; ++t) {
    const Vec3q& p = pts[rng() % pts.size()];
    for (const Vec3q* q : lines1[line_key(p, u1)]) {
      if (*q == p || !close(*q, p)) continue;
      for (const Vec3q* r : lines2[line_key(p, u2)]) {
        if (*r == p || !close(*r, p)) continue;
        Vec3q s = *q + *r - p;
        if (!S.count(s)) continue;
        if (!close(s, p) || !close(*q, *r) || !close(s, *q) || !close(s, *r)) continue;
        std::vector<Vec3q> F{p, s}, G{*q, *r};
        if (same_xrays(F, G, {u1, u2})) return std::make_pair(F, G);
      }
    }
  }
  return std::nullopt;
}

}  // namespace icotomo
