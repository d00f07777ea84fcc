// Planar slices orthogonal to (tau, 0, 1), the isometries Phi / Phi*, slice
// windows and directly generated cyclotomic model sets.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/model_set.hpp"
#include "icotomo/vec.hpp"
#include "icotomo/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace icotomo {

/// alpha + beta zeta (zeta = exp(2 pi i / 5)), or alpha + beta zeta^3 for
/// internal-space coordinates.
struct CycPoint {
  GoldenRat alpha;
  GoldenRat beta;

  bool is_integral() const { return alpha.is_integral() && beta.is_integral(); }
  bool is_zero() const { return alpha.is_zero() && beta.is_zero(); }
  friend bool operator==(const CycPoint&, const CycPoint&) = default;
  friend CycPoint operator+(const CycPoint& x, const CycPoint& y) { return {x.alpha + y.alpha, x.beta + y.beta}; }
  friend CycPoint operator-(const CycPoint& x, const CycPoint& y) { return {x.alpha - y.alpha, x.beta - y.beta}; }
  friend CycPoint operator-(const CycPoint& x) { return {-x.alpha, -x.beta}; }
  friend CycPoint operator*(const GoldenRat& s, const CycPoint& x) { return {s * x.alpha, s * x.beta}; }
};

inline int struct_cmp(const CycPoint& x, const CycPoint& y) {
  if (int c = struct_cmp(x.alpha, y.alpha)) return c;
  return struct_cmp(x.beta, y.beta);
}

inline std::string to_string(const CycPoint& z) { return "(" + to_string(z.alpha) + ") + (" + to_string(z.beta) + ")z"; }

/// |r + s zeta|^2 = r^2 + s^2 - r s tau'.
inline GoldenRat abs2(const CycPoint& z) {
  return z.alpha * z.alpha + z.beta * z.beta - z.alpha * z.beta * GoldenRat(GoldenInt::tau_conj());
}
/// |r + s zeta^3|^2 = r^2 + s^2 - r s tau.
inline GoldenRat abs2_internal(const CycPoint& w) {
  return w.alpha * w.alpha + w.beta * w.beta - w.alpha * w.beta * GoldenRat::tau();
}

/// zeta -> zeta^3 on Z[zeta]; the result is in {1, zeta^3} coordinates.
inline CycPoint star5(const CycPoint& z) { return {conjugate(z.alpha), conjugate(z.beta)}; }

/// Complex value in double precision (for reports and sampling only).
inline std::array<double, 2> embed(const CycPoint& z) {
  const double c = std::cos(2 * M_PI / 5), s = std::sin(2 * M_PI / 5);
  double a = embed(z.alpha), b = embed(z.beta);
  return {a + b * c, b * s};
}

struct NotInPlane : std::invalid_argument {
  NotInPlane() : std::invalid_argument("vector is not in the slicing plane") {}
};

inline Vec3q slice_normal() { return {GoldenRat::tau(), 0, 1}; }
inline Vec3q slice_normal_star() { return {GoldenRat(GoldenInt::tau_conj()), 0, 1}; }

/// <x, (tau, 0, 1)>: labels the plane x + H.
inline GoldenRat height(const Vec3q& x) { return GoldenRat::tau() * x[0] + x[2]; }
inline GoldenInt height_num(const Vec3i& num) { return GoldenInt::tau() * num[0] + num[2]; }

/// Basis (0,1,0), (-1,-tau',tau)/2 of the plane, mapped to 1 and zeta.
inline std::array<Vec3q, 2> phi_basis() {
  GoldenRat h = GoldenRat::fraction(1, 2);
  return {Vec3q{0, 1, 0}, Vec3q{-h, -h * GoldenRat(GoldenInt::tau_conj()), h * GoldenRat::tau()}};
}
/// Basis (0,1,0), (-1,-tau,tau')/2 of the starred plane, mapped to 1 and zeta^3.
inline std::array<Vec3q, 2> phi_star_basis() {
  GoldenRat h = GoldenRat::fraction(1, 2);
  return {Vec3q{0, 1, 0}, Vec3q{-h, -h * GoldenRat::tau(), h * GoldenRat(GoldenInt::tau_conj())}};
}

inline CycPoint phi(const Vec3q& v) {
  if (!height(v).is_zero()) throw NotInPlane();
  GoldenRat beta = GoldenRat(-2) * v[0];
  return {v[1] - GoldenRat(GoldenInt::tau_conj()) * v[0], beta};
}

inline CycPoint phi_star(const Vec3q& w) {
  if (!dot(w, slice_normal_star()).is_zero()) throw NotInPlane();
  return {w[1] - GoldenRat::tau() * w[0], GoldenRat(-2) * w[0]};
}

inline Vec3q phi_inverse(const CycPoint& z) {
  auto b = phi_basis();
  return z.alpha * b[0] + z.beta * b[1];
}

inline Vec3q phi_star_inverse(const CycPoint& w) {
  auto b = phi_star_basis();
  return w.alpha * b[0] + w.beta * b[1];
}

// ---------------------------------------------------------------------------
// Slice windows

/// a r + b s <= c in {1, zeta^3} coordinates.
struct Halfplane {
  GoldenRat a;
  GoldenRat b;
  GoldenRat c;
};

/// Convex polygon in internal {1, zeta^3} coordinates. Empty if the cross
/// section is degenerate.
struct SliceWindow {
  std::vector<Halfplane> halfplanes;
  std::vector<CycPoint> vertices;  // counterclockwise

  bool empty() const { return vertices.size() < 3; }

  bool satisfies_all(const CycPoint& w) const {
    for (const auto& h : halfplanes)
      if (sign(h.c - h.a * w.alpha - h.b * w.beta) < 0) return false;
    return true;
  }

  Location classify(const CycPoint& w) const {
    if (empty()) return Location::Outside;
    bool boundary = false;
    for (const auto& h : halfplanes) {
      int s = sign(h.c - h.a * w.alpha - h.b * w.beta);
      if (s < 0) return Location::Outside;
      if (s == 0) boundary = true;
    }
    return boundary ? Location::Boundary : Location::Interior;
  }
  bool contains(const CycPoint& w) const { return classify(w) != Location::Outside; }
};

namespace detail {

// orientation of (q - p, r - p) in affine coordinates
inline int orient2(const CycPoint& p, const CycPoint& q, const CycPoint& r) {
  return sign((q.alpha - p.alpha) * (r.beta - p.beta) - (q.beta - p.beta) * (r.alpha - p.alpha));
}

// Andrew's monotone chain with exact orientation; collinear points dropped.
inline std::vector<CycPoint> convex_hull_2d(std::vector<CycPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const CycPoint& x, const CycPoint& y) {
    int c = compare(x.alpha, y.alpha);
    return c != 0 ? c < 0 : compare(x.beta, y.beta) < 0;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<CycPoint> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

/// Cross section of the window s + W with the plane q + H', in Phi*
/// coordinates relative to q.
inline SliceWindow slice_window(const Window& w, const Vec3q& q) {
  const auto basis = phi_star_basis();
  SliceWindow sw;
  for (const auto& f : w.facets()) {
    // n . (q + r f1 + s f2 - shift) <= offset
    Halfplane h{dot(f.normal, basis[0]), dot(f.normal, basis[1]), f.offset - dot(f.normal, q - w.shift())};
    if (h.a.is_zero() && h.b.is_zero()) {
      if (sign(h.c) < 0) return {};  // plane misses the window
      continue;
    }
    sw.halfplanes.push_back(h);
  }
  std::vector<CycPoint> cand;
  for (std::size_t i = 0; i < sw.halfplanes.size(); ++i)
    for (std::size_t j = i + 1; j < sw.halfplanes.size(); ++j) {
      const auto& h1 = sw.halfplanes[i];
      const auto& h2 = sw.halfplanes[j];
      GoldenRat d = h1.a * h2.b - h1.b * h2.a;
      if (d.is_zero()) continue;
      CycPoint p{(h1.c * h2.b - h1.b * h2.c) / d, (h1.a * h2.c - h1.c * h2.a) / d};
      if (sw.satisfies_all(p)) cand.push_back(p);
    }
  sw.vertices = detail::convex_hull_2d(std::move(cand));
  if (sw.vertices.size() < 3) sw.vertices.clear();
  return sw;
}

/// The slice window W_lambda for the slice through the physical point lambda.
inline SliceWindow slice_window_at(const Window& w, const Vec3q& translate, const Vec3q& lambda) {
  return slice_window(w, star(lambda - translate));
}

// ---------------------------------------------------------------------------
// Cyclotomic model sets

/// All z = alpha + beta zeta in Z[zeta] with |z|^2 < radius2 and star5(z)
/// in the slice window, sorted structurally.
inline std::vector<CycPoint> cyclotomic_patch(const SliceWindow& win, const GoldenRat& radius2) {
  std::vector<CycPoint> out;
  if (win.empty() || sign(radius2) <= 0) return out;
  double rho = std::sqrt(embed(radius2));
  const double s72 = std::sin(2 * M_PI / 5), c72 = std::cos(2 * M_PI / 5);
  double bmax = rho / s72;
  double amax = rho + bmax * c72;
  double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
  for (const auto& v : win.vertices) {
    double r = embed(v.alpha), s = embed(v.beta);
    lo[0] = std::min(lo[0], r), hi[0] = std::max(hi[0], r);
    lo[1] = std::min(lo[1], s), hi[1] = std::max(hi[1], s);
  }
  auto as = detail::golden_ints_in_box(-amax, amax, lo[0], hi[0]);
  auto bs = detail::golden_ints_in_box(-bmax, bmax, lo[1], hi[1]);
  for (const auto& a : as)
    for (const auto& b : bs) {
      CycPoint z{GoldenRat(a.exact()), GoldenRat(b.exact())};
      double re = a.value + b.value * c72, im = b.value * s72;
      double d2 = re * re + im * im, r2 = embed(radius2);
      if (d2 > r2 + 1e-9 * (1 + r2)) continue;
      if (sign(radius2 - abs2(z)) <= 0) continue;
      if (win.contains(star5(z))) out.push_back(std::move(z));
    }
  std::sort(out.begin(), out.end(), StructLess{});
  return out;
}

// ---------------------------------------------------------------------------
// Slicing a patch

/// Groups patch point indices by exact height.
inline std::map<GoldenRat, std::vector<std::size_t>, StructLess> slices_by_height(const ModelSetPatch& patch) {
  std::map<GoldenRat, std::vector<std::size_t>, StructLess> out;
  for (std::size_t i = 0; i < patch.points.size(); ++i) out[height(patch.physical(patch.points[i]))].push_back(i);
  return out;
}

struct Slice {
  GoldenRat height;
  Vec3q lambda;
  std::vector<CycPoint> points;  // Phi(x - lambda), sorted
  SliceWindow window;
};

/// The slice of the patch through its point lambda_index.
inline Slice slice_patch(const ModelSetPatch& patch, std::size_t lambda_index) {
  if (lambda_index >= patch.points.size()) throw std::out_of_range("slice_patch: lambda index");
  Slice s;
  const Vec3q lambda = patch.physical(patch.points[lambda_index]);
  s.lambda = lambda;
  s.height = height(lambda);
  const GoldenInt hnum = height_num(patch.points[lambda_index].num);
  for (const auto& p : patch.points) {
    if (!(height_num(p.num) == hnum)) continue;
    s.points.push_back(phi(p.value() - patch.points[lambda_index].value()));
  }
  std::sort(s.points.begin(), s.points.end(), StructLess{});
  s.window = slice_window_at(patch.window, patch.translate, lambda);
  return s;
}

/// Squared radius of a rational disk about lambda inside the patch ball,
/// of radius R - |lambda - a| shrunk by a small rational margin.
inline GoldenRat inner_disk_radius2(const ModelSetPatch& patch, const Vec3q& lambda) {
  double d = std::sqrt(embed(norm2(lambda - patch.center)));
  double rho = embed(patch.radius) - d - 1e-6;
  if (rho <= 0) return 0;
  auto q = static_cast<long long>(std::floor(rho * 1e6));
  GoldenRat r = GoldenRat::fraction(q, 1000000);
  return r * r;
}

/// Points of a slice restricted to |z|^2 < radius2.
inline std::vector<CycPoint> restrict_to_disk(const std::vector<CycPoint>& pts, const GoldenRat& radius2) {
  std::vector<CycPoint> out;
  for (const auto& z : pts)
    if (sign(radius2 - abs2(z)) > 0) out.push_back(z);
  return out;
}

/// Checks that the two lattice-plane generators lie in L and H, that their
/// Z[tau]-span exhausts the height-0 patch points, and that starring maps
/// these onto points of H' with coordinates star5 of the plane coordinates.
inline bool slice_basis_check(ModelType type, const GoldenRat& radius = 6) {
  const ModuleTag tag = lattice_tag(type);
  const auto basis = phi_basis();
  for (const auto& b : basis) {
    if (!module_contains(b, tag) || !height(b).is_zero()) return false;
    if (!dot(star(b), slice_normal_star()).is_zero()) return false;
  }
  if (star(basis[1]) != phi_star_basis()[1]) return false;
  PatchParams p;
  p.type = type;
  p.window = icosahedron_window();
  p.radius = radius;
  for (const auto& pt : enumerate_patch(p).points) {
    if (!height_num(pt.num).is_zero()) continue;
    CycPoint z = phi(pt.value());
    if (!z.is_integral()) return false;
    if (phi_inverse(z) != pt.value()) return false;
    if (!dot(star(pt.value()), slice_normal_star()).is_zero()) return false;
    if (phi_star(star(pt.value())) != star5(z)) return false;
  }
  return true;
}

}  // namespace icotomo
