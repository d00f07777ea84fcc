// Convex polyhedral windows in internal space with exact Q(tau) facets.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/icosian.hpp"
#include "icotomo/vec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace icotomo {

struct EmptyWindowInterior : std::runtime_error {
  EmptyWindowInterior() : std::runtime_error("window has empty interior") {}
};

enum class Location { Interior, Boundary, Outside };

inline const char* to_string(Location l) {
  switch (l) {
    case Location::Interior: return "Interior";
    case Location::Boundary: return "Boundary";
    case Location::Outside: return "Outside";
  }
  return "?";
}

/// Halfspace normal . y <= offset.
struct Facet {
  Vec3q normal;
  GoldenRat offset;
};

/// Convex polytope W (given by its vertices, centred wherever the caller
/// likes) together with a translation s; the window proper is s + W.
class Window {
 public:
  Window() = default;

  /// Builds the hull facets of the vertex set. Throws EmptyWindowInterior if
  /// the points are coplanar.
  static Window from_vertices(const std::vector<Vec3q>& points, Vec3q shift = {0, 0, 0}) {
    Window w;
    w.shift_ = std::move(shift);
    const std::size_t n = points.size();
    std::vector<Facet> facets;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec3q nrm = cross(points[j] - points[i], points[k] - points[i]);
          if (is_zero(nrm)) continue;
          GoldenRat off = dot(nrm, points[i]);
          int pos = 0, neg = 0;
          for (const auto& p : points) {
            int s = sign(dot(nrm, p) - off);
            pos += s > 0;
            neg += s < 0;
          }
          if (pos > 0 && neg > 0) continue;
          if (pos > 0) {
            nrm = -nrm;
            off = -off;
          }
          // scale so the first nonzero coordinate has absolute value 1
          for (const auto& c : nrm)
            if (!c.is_zero()) {
              GoldenRat inv = abs(c).inverse();
              nrm = inv * nrm;
              off = inv * off;
              break;
            }
          facets.push_back({nrm, off});
        }
    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) { return struct_cmp(a.normal, b.normal) < 0; });
    facets.erase(std::unique(facets.begin(), facets.end(),
                             [](const Facet& a, const Facet& b) { return a.normal == b.normal; }),
                 facets.end());
    if (facets.size() < 4) throw EmptyWindowInterior();
    w.facets_ = std::move(facets);
    // keep the extreme points only: those lying on at least three facets
    for (const auto& p : points) {
      int on = 0;
      for (const auto& f : w.facets_) on += (dot(f.normal, p) == f.offset);
      if (on >= 3 && std::find(w.vertices_.begin(), w.vertices_.end(), p) == w.vertices_.end()) w.vertices_.push_back(p);
    }
    w.refresh_cache();
    return w;
  }

  const std::vector<Vec3q>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const Vec3q& shift() const { return shift_; }

  Window with_shift(Vec3q s) const {
    Window w = *this;
    w.shift_ = std::move(s);
    w.refresh_cache();
    return w;
  }

  /// Scales W (not the shift) by a positive factor.
  Window scaled(const GoldenRat& f) const {
    if (sign(f) <= 0) throw std::invalid_argument("window scale factor must be positive");
    std::vector<Vec3q> v;
    for (const auto& p : vertices_) v.push_back(f * p);
    return from_vertices(v, shift_);
  }

  /// Shifted vertices s + v in double precision.
  std::vector<std::array<double, 3>> shifted_vertices_double() const {
    std::vector<std::array<double, 3>> out;
    for (const auto& v : vertices_) out.push_back(embed(shift_ + v));
    return out;
  }

  /// Bounding box of s + W (double, not widened).
  std::array<std::array<double, 2>, 3> bounding_box() const {
    std::array<std::array<double, 2>, 3> box;
    for (int i = 0; i < 3; ++i) box[i] = {INFINITY, -INFINITY};
    for (const auto& v : shifted_vertices_double())
      for (int i = 0; i < 3; ++i) {
        box[i][0] = std::min(box[i][0], v[i]);
        box[i][1] = std::max(box[i][1], v[i]);
      }
    return box;
  }

  /// Exact classification of y relative to s + W.
  Location classify(const Vec3q& y) const {
    Vec3q rel = y - shift_;
    bool boundary = false;
    for (const auto& f : facets_) {
      int s = sign(f.offset - dot(f.normal, rel));
      if (s < 0) return Location::Outside;
      if (s == 0) boundary = true;
    }
    return boundary ? Location::Boundary : Location::Interior;
  }

  /// Classification with a floating-point filter: the double slack of each
  /// facet is trusted only when it exceeds a rigorous rounding bound,
  /// otherwise the exact predicate decides.
  Location classify_filtered(const std::array<double, 3>& y_approx, const Vec3q& y_exact) const {
    return classify_filtered(y_approx, [&] { return y_exact; });
  }

  template <class ExactFn>
  Location classify_filtered(const std::array<double, 3>& y, ExactFn&& exact) const {
    bool certain_interior = true;
    double ymax = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2])});
    for (const auto& f : cache_) {
      double slack = f.offset - (f.normal[0] * (y[0] - shift_d_[0]) + f.normal[1] * (y[1] - shift_d_[1]) +
                                 f.normal[2] * (y[2] - shift_d_[2]));
      double eps = 1e-9 * (1.0 + f.scale * (ymax + shift_max_));
      if (slack < -eps) return Location::Outside;
      if (slack <= eps) certain_interior = false;
    }
    if (certain_interior) return Location::Interior;
    return classify(exact());
  }

 private:
  struct FacetD {
    std::array<double, 3> normal;
    double offset;
    double scale;
  };

  void refresh_cache() {
    cache_.clear();
    for (const auto& f : facets_) {
      FacetD d{embed(f.normal), embed(f.offset), 0};
      d.scale = std::abs(d.normal[0]) + std::abs(d.normal[1]) + std::abs(d.normal[2]) + std::abs(d.offset);
      cache_.push_back(d);
    }
    shift_d_ = embed(shift_);
    shift_max_ = std::max({std::abs(shift_d_[0]), std::abs(shift_d_[1]), std::abs(shift_d_[2])});
  }

  std::vector<Vec3q> vertices_;
  std::vector<Facet> facets_;
  Vec3q shift_{0, 0, 0};
  std::vector<FacetD> cache_;
  std::array<double, 3> shift_d_{0, 0, 0};
  double shift_max_ = 0;
};

inline Location window_contains(const Window& w, const Vec3q& y) { return w.classify(y); }

/// 10^-3 (1, 1, 1), stored exactly.
inline Vec3q default_window_shift() {
  GoldenRat m = GoldenRat::fraction(1, 1000);
  return {m, m, m};
}

/// Regular icosahedron with vertex set Y_h* (tau', 0, 1) and the given shift.
inline Window icosahedron_window(Vec3q shift = default_window_shift()) {
  Vec3q seed{GoldenRat(GoldenInt::tau_conj()), 0, 1};
  std::vector<Vec3q> verts;
  for (const auto& m : rotation_group(RotationGroup::Yhstar)) {
    Vec3q v = mat_vec(m, seed);
    if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
  }
  return Window::from_vertices(verts, std::move(shift));
}

/// Exact volume and centroid of s + W.
struct WindowMoments {
  GoldenRat volume;
  Vec3q centroid;
};

inline WindowMoments window_moments(const Window& w) {
  const auto& verts = w.vertices();
  Vec3q o{0, 0, 0};
  for (const auto& v : verts) o = o + v;
  o = GoldenRat::fraction(1, static_cast<long>(verts.size())) * o;

  GoldenRat vol6 = 0;
  Vec3q moment{0, 0, 0};
  for (const auto& f : w.facets()) {
    std::vector<Vec3q> poly;
    for (const auto& v : verts)
      if (dot(f.normal, v) == f.offset) poly.push_back(v);
    const Vec3q p0 = poly[0];
    // order around p0; the others lie in a wedge at p0 so orientation is a strict order
    std::sort(poly.begin() + 1, poly.end(), [&](const Vec3q& a, const Vec3q& b) {
      return sign(dot(f.normal, cross(a - p0, b - p0))) > 0;
    });
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      GoldenRat v6 = abs(dot(p0 - o, cross(poly[i] - o, poly[i + 1] - o)));
      vol6 += v6;
      Vec3q c = o + p0 + poly[i] + poly[i + 1];
      moment = moment + v6 * c;
    }
  }
  WindowMoments m;
  m.volume = vol6 * GoldenRat::fraction(1, 6);
  m.centroid = w.shift() + (GoldenRat::fraction(1, 4) / vol6) * moment;
  return m;
}

}  // namespace icotomo
