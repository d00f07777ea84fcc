// Icosahedral model sets: the star map, patch enumeration, L-directions and
// the contraction / homothety toolkit.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/icosian.hpp"
#include "icotomo/vec.hpp"
#include "icotomo/window.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace icotomo {

enum class ModelType { B, F };

inline const char* to_string(ModelType t) { return t == ModelType::B ? "B" : "F"; }

/// Underlying Z-module L: Im(I) for B-type, I_0 for F-type.
inline ModuleTag lattice_tag(ModelType t) { return t == ModelType::B ? ModuleTag::ImIcosian : ModuleTag::Icosian0; }
/// Module of doubled numerators (M_B or M_F).
inline ModuleTag numerator_tag(ModelType t) { return t == ModelType::B ? ModuleTag::MB : ModuleTag::MF; }

/// An element num / 2 of L.
struct IcoPoint {
  Vec3i num;
  ModuleTag tag = ModuleTag::ImIcosian;

  Vec3q value() const { return halve(num); }
  friend bool operator==(const IcoPoint& a, const IcoPoint& b) { return a.num == b.num; }
};

inline int struct_cmp(const IcoPoint& a, const IcoPoint& b) { return struct_cmp(a.num, b.num); }

/// Coordinatewise Galois conjugation.
inline Vec3q star(const Vec3q& v) { return conjugate(v); }
inline Vec3q star(const IcoPoint& p) { return halve(conjugate(p.num)); }

struct PatchParams {
  ModelType type = ModelType::B;
  Vec3q translate{0, 0, 0};
  Window window = icosahedron_window();
  Vec3q center{0, 0, 0};
  GoldenRat radius = 10;
};

/// The points alpha = t + x, x in L, x* in s + W, |alpha - a| < R.
struct ModelSetPatch {
  ModelType type = ModelType::B;
  Vec3q translate{0, 0, 0};
  Window window;
  Vec3q center{0, 0, 0};
  GoldenRat radius;
  std::vector<IcoPoint> points;  // the lattice parts x (t not applied)
  std::size_t boundary_hits = 0;  // points whose star lies on bd(s + W)

  PatchParams params() const { return {type, translate, window, center, radius}; }

  Vec3q physical(const IcoPoint& p) const { return translate + p.value(); }

  std::vector<Vec3q> physical_points() const {
    std::vector<Vec3q> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(physical(p));
    return out;
  }
};

namespace detail {

struct SmallGolden {
  std::int64_t a;
  std::int64_t b;
  double value;
  double conj;
  Residue2 residue;

  GoldenInt exact() const { return {Integer(a), Integer(b)}; }
};

// All a + b tau with value in [lo, hi] and conjugate in [clo, chi]; the
// bounds are widened by a small margin so the list is a superset.
inline std::vector<SmallGolden> golden_ints_in_box(double lo, double hi, double clo, double chi) {
  constexpr double kMargin = 1e-6;
  constexpr double kLimit = 1e15;
  lo -= kMargin;
  clo -= kMargin;
  hi += kMargin;
  chi += kMargin;
  if (std::abs(lo) > kLimit || std::abs(hi) > kLimit || std::abs(clo) > kLimit || std::abs(chi) > kLimit)
    throw std::overflow_error("enumeration box exceeds the fixed-width coefficient range");
  std::vector<SmallGolden> out;
  if (lo > hi || clo > chi) return out;
  const double sqrt5 = std::sqrt(5.0);
  auto bmin = static_cast<std::int64_t>(std::ceil((lo - chi) / sqrt5)) - 1;
  auto bmax = static_cast<std::int64_t>(std::floor((hi - clo) / sqrt5)) + 1;
  for (std::int64_t b = bmin; b <= bmax; ++b) {
    double db = static_cast<double>(b);
    double alo = std::max(lo - db * kTau, clo - db * kTauConj);
    double ahi = std::min(hi - db * kTau, chi - db * kTauConj);
    auto amin = static_cast<std::int64_t>(std::ceil(alo)) - 1;
    auto amax = static_cast<std::int64_t>(std::floor(ahi)) + 1;
    for (std::int64_t a = amin; a <= amax; ++a) {
      double v = static_cast<double>(a) + db * kTau;
      double c = static_cast<double>(a) + db * kTauConj;
      if (v < lo || v > hi || c < clo || c > chi) continue;
      out.push_back({a, b, v, c, Residue2(a & 1, b & 1)});
    }
  }
  return out;
}

struct PatchEnumerator {
  const PatchParams& params;
  ModuleTag num_tag;
  std::array<std::vector<SmallGolden>, 3> lists;
  std::array<double, 3> ctr2;  // 2 (a - t) in double
  Vec3q ctr2_exact;
  GoldenRat r2x4;  // (2R)^2
  double r2x4_d;

  explicit PatchEnumerator(const PatchParams& p) : params(p), num_tag(numerator_tag(p.type)) {
    if (sign(p.radius) <= 0) throw std::invalid_argument("patch radius must be positive");
    ctr2_exact = GoldenRat(2) * (p.center - p.translate);
    ctr2 = embed(ctr2_exact);
    r2x4 = GoldenRat(4) * p.radius * p.radius;
    r2x4_d = embed(r2x4);
    double r2 = 2 * embed(p.radius);
    auto box = p.window.bounding_box();
    for (int i = 0; i < 3; ++i)
      lists[i] = golden_ints_in_box(ctr2[i] - r2, ctr2[i] + r2, 2 * box[i][0], 2 * box[i][1]);
  }

  // Visits every numerator N (point N / 2 of L) in the patch, for outer
  // indices in [begin, end) of the first coordinate list.
  template <class Visitor>
  void run(std::size_t begin, std::size_t end, Visitor&& visit) const {
    const double eps = 1e-9 * (1.0 + r2x4_d);
    const Residue2 rt2 = kRTau2, rt = kRTau;
    for (std::size_t i0 = begin; i0 < end; ++i0) {
      const auto& g0 = lists[0][i0];
      double d0 = g0.value - ctr2[0];
      double rem0 = r2x4_d - d0 * d0;
      if (rem0 <= -eps) continue;
      for (const auto& g1 : lists[1]) {
        double d1 = g1.value - ctr2[1];
        double rem1 = rem0 - d1 * d1;
        if (rem1 <= -eps) continue;
        for (const auto& g2 : lists[2]) {
          double d2 = g2.value - ctr2[2];
          double rem2 = rem1 - d2 * d2;
          if (rem2 <= -eps) continue;
          ResidueVec res{g0.residue, g1.residue, g2.residue};
          if (num_tag == ModuleTag::MB) {
            if (!(rt2 * res[0] + rt * res[1] + res[2]).is_zero()) continue;
          } else if (!mf_congruence(res)) {
            continue;
          }
          Vec3i num;
          bool have_num = false;
          auto make_num = [&]() -> const Vec3i& {
            if (!have_num) {
              num = Vec3i{g0.exact(), g1.exact(), g2.exact()};
              have_num = true;
            }
            return num;
          };
          if (rem2 <= eps) {
            // ball boundary too close for doubles: |N - 2(a - t)|^2 < (2R)^2 exactly
            Vec3q d = to_rat(make_num()) - ctr2_exact;
            if (sign(r2x4 - norm2(d)) <= 0) continue;
          }
          std::array<double, 3> ystar{g0.conj / 2, g1.conj / 2, g2.conj / 2};
          Location loc = params.window.classify_filtered(ystar, [&] { return halve(conjugate(make_num())); });
          if (loc == Location::Outside) continue;
          visit(make_num(), loc, std::array<double, 3>{g0.value / 2, g1.value / 2, g2.value / 2}, ystar);
        }
      }
    }
  }
};

}  // namespace detail

/// Calls visit(num, location, approx_point, approx_star) for every lattice
/// part x = num / 2 of the patch (single-threaded, deterministic order).
template <class Visitor>
void for_each_patch_point(const PatchParams& params, Visitor&& visit) {
  detail::PatchEnumerator e(params);
  e.run(0, e.lists[0].size(), visit);
}

/// Enumerates the patch. The coefficient box comes from the product of the
/// physical ball and the window's bounding box, coordinatewise in the 6D
/// embedding of Z[tau]^3 (which contains 2L); so it is complete.
inline ModelSetPatch enumerate_patch(const PatchParams& params, unsigned workers = 1) {
  detail::PatchEnumerator e(params);
  ModelSetPatch patch;
  patch.type = params.type;
  patch.translate = params.translate;
  patch.window = params.window;
  patch.center = params.center;
  patch.radius = params.radius;
  const ModuleTag tag = lattice_tag(params.type);
  const std::size_t n0 = e.lists[0].size();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n0, 1))));
  std::vector<std::vector<IcoPoint>> parts(workers);
  std::vector<std::size_t> boundary(workers, 0);
  auto job = [&](unsigned w) {
    std::size_t begin = n0 * w / workers, end = n0 * (w + 1) / workers;
    e.run(begin, end, [&](const Vec3i& num, Location loc, const auto&, const auto&) {
      parts[w].push_back({num, tag});
      if (loc == Location::Boundary) ++boundary[w];
    });
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(job, w);
    for (auto& t : threads) t.join();
  }
  for (unsigned w = 0; w < workers; ++w) {
    patch.points.insert(patch.points.end(), parts[w].begin(), parts[w].end());
    patch.boundary_hits += boundary[w];
  }
  return patch;
}

/// True if no enumerated star image lies on the window boundary. This is a
/// patch-level witness only; genericity of the whole model set is a global
/// property that is not decided here.
inline bool genericity_witness(const ModelSetPatch& patch) { return patch.boundary_hits == 0; }

/// Exact membership of a physical point in the model set.
inline bool in_model_set(const PatchParams& params, const Vec3q& alpha) {
  Vec3q x = alpha - params.translate;
  if (!module_contains(x, lattice_tag(params.type))) return false;
  return params.window.classify(star(x)) != Location::Outside;
}

/// (|(tau alpha)*|^2, |alpha*|^2 / tau^2), which agree exactly.
inline std::pair<GoldenRat, GoldenRat> mtau_star_contraction_check(const Vec3q& alpha) {
  Vec3q scaled = GoldenRat::tau() * alpha;
  GoldenRat lhs = norm2(star(scaled));
  GoldenRat inv_tau2 = GoldenRat(GoldenInt(2, -1));  // 1/tau^2 = tau'^2 = 2 - tau
  return {lhs, inv_tau2 * norm2(star(alpha))};
}

// ---------------------------------------------------------------------------
// L-directions

/// Canonical primitive representative of the direction of v: denominators
/// cleared, divided by the Z[tau]-content, scaled by a unit so that
/// |w|^2 / |w*|^2 lies in [1, tau^4), first nonzero coordinate positive.
/// nullopt for v = 0. Every nonzero vector of Q(tau)^3 has a multiple in L
/// (2L contains 2 Z[tau]^3), so all other inputs are L-directions.
inline std::optional<Vec3i> is_L_direction(const Vec3q& v, ModuleTag = ModuleTag::ImIcosian) {
  if (is_zero(v)) return std::nullopt;
  Integer l = 1;
  for (const auto& c : v) l = l / detail::gcd(l, c.den()) * c.den();
  Vec3i w;
  for (int i = 0; i < 3; ++i) w[i] = (GoldenRat(GoldenInt(l)) * v[i]).num();
  GoldenInt g = gcd(gcd(w[0], w[1]), w[2]);
  for (auto& c : w) c = *exact_divide(c, g);
  const GoldenInt tau = GoldenInt::tau();
  const GoldenInt inv_tau{-1, 1};
  const GoldenInt tau4 = tau * tau * tau * tau;
  for (;;) {
    GoldenInt a = norm2(w);
    GoldenInt b = norm2(conjugate(w));
    if (sign(a - b) < 0) {
      for (auto& c : w) c *= tau;
    } else if (sign(a - tau4 * b) >= 0) {
      for (auto& c : w) c *= inv_tau;
    } else {
      break;
    }
  }
  for (const auto& c : w) {
    int s = sign(c);
    if (s == 0) continue;
    if (s < 0)
      for (auto& x : w) x = -x;
    break;
  }
  return w;
}

/// The primitive element of L on the ray through a primitive Z[tau]^3 vector.
inline Vec3q primitive_lattice_element(const Vec3i& w, ModuleTag tag) {
  ModuleTag num_tag = numerator_module(tag);
  if (num_tag == tag) return module_contains_integral(w, tag) ? to_rat(w) : GoldenRat(2) * to_rat(w);
  // L = M / 2: w / 2 if w is in M, else w
  return module_contains_integral(w, num_tag) ? halve(w) : to_rat(w);
}

// ---------------------------------------------------------------------------
// Homothety embedding

struct NoInteriorPoint : std::runtime_error {
  NoInteriorPoint() : std::runtime_error("no lattice point with star image in int(W) found") {}
};

/// x -> tau^k x + offset.
struct Homothety {
  int k = 0;
  Vec3q alpha0{0, 0, 0};  // element of L
  Vec3q offset{0, 0, 0};  // alpha0 + t

  GoldenRat factor() const {
    GoldenInt f = 1;
    for (int i = 0; i < k; ++i) f *= GoldenInt::tau();
    return f;
  }
  Vec3q operator()(const Vec3q& x) const { return factor() * x + offset; }
};

struct Embedding {
  Homothety h;
  std::vector<Vec3q> image;
};

/// Finds k and alpha0 in L with (tau^k alpha + alpha0)* in int(s + W) for all
/// alpha in F, so that the homothety maps F into the model set. For each k,
/// alpha0 is drawn from lattice points near the position that centres the
/// image on the patch centre, taking the one whose star is closest to the
/// point that centres the contracted star image in the window.
inline Embedding embed_finite_set(const std::vector<Vec3q>& F, const PatchParams& params, int max_k = 80,
                                  int max_search_radius = 12) {
  const ModuleTag tag = lattice_tag(params.type);
  for (const auto& x : F)
    if (!module_contains(x, tag)) throw std::invalid_argument("embed_finite_set: point not in L");

  Vec3q centroid{0, 0, 0};
  for (const auto& x : F) centroid = centroid + x;
  if (!F.empty()) centroid = GoldenRat::fraction(1, static_cast<long>(F.size())) * centroid;
  const auto wc = embed(window_moments(params.window).centroid);
  const auto sc = embed(star(centroid));

  GoldenInt tk = 1;  // tau^k
  double tck = 1.0;  // tau'^k
  for (int k = 0; k <= max_k; ++k, tk *= GoldenInt::tau(), tck *= kTauConj) {
    const std::array<double, 3> target{wc[0] - tck * sc[0], wc[1] - tck * sc[1], wc[2] - tck * sc[2]};
    PatchParams p = params;
    p.translate = {0, 0, 0};
    p.center = params.center - params.translate - GoldenRat(tk) * centroid;
    std::optional<Vec3q> best;
    double best_d = INFINITY;
    for (int r = 2; r <= max_search_radius && !best; r *= 2) {
      p.radius = r;
      for_each_patch_point(p, [&](const Vec3i& num, Location loc, const auto&, const std::array<double, 3>& ys) {
        if (loc != Location::Interior) return;
        double d = 0;
        for (int i = 0; i < 3; ++i) d += (ys[i] - target[i]) * (ys[i] - target[i]);
        if (d < best_d) {
          best_d = d;
          best = halve(num);
        }
      });
    }
    if (!best) throw NoInteriorPoint();
    const Vec3q& a0 = *best;
    bool ok = true;
    std::vector<Vec3q> image;
    for (const auto& x : F) {
      Vec3q y = GoldenRat(tk) * x + a0;
      if (params.window.classify(star(y)) != Location::Interior) {
        ok = false;
        break;
      }
      image.push_back(y + params.translate);
    }
    if (ok) {
      Embedding e;
      e.h.k = k;
      e.h.alpha0 = a0;
      e.h.offset = a0 + params.translate;
      e.image = std::move(image);
      return e;
    }
  }
  throw NoInteriorPoint();
}

}  // namespace icotomo
