// Quaternions over Q(tau), the icosian group, the icosahedral modules
// M_B, M_F, M_P and the rotation groups Y, Y*, Y_h, Y_h*.
#pragma once

#include "icotomo/golden.hpp"
#include "icotomo/vec.hpp"

#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace icotomo {

struct GoldenQuaternion {
  GoldenRat re;
  Vec3q im;

  friend bool operator==(const GoldenQuaternion&, const GoldenQuaternion&) = default;
};

inline int struct_cmp(const GoldenQuaternion& p, const GoldenQuaternion& q) {
  if (int c = struct_cmp(p.re, q.re)) return c;
  return struct_cmp(p.im, q.im);
}

/// Hamilton product; i^2 = j^2 = k^2 = ijk = -1.
inline GoldenQuaternion operator*(const GoldenQuaternion& p, const GoldenQuaternion& q) {
  GoldenQuaternion r;
  r.re = p.re * q.re - dot(p.im, q.im);
  r.im = p.re * q.im + q.re * p.im + cross(p.im, q.im);
  return r;
}

inline GoldenQuaternion conj(const GoldenQuaternion& q) { return {q.re, -q.im}; }

/// Reduced norm q * conj(q).
inline GoldenRat reduced_norm(const GoldenQuaternion& q) { return q.re * q.re + norm2(q.im); }
inline GoldenRat reduced_trace(const GoldenQuaternion& q) { return GoldenRat(2) * q.re; }

namespace detail {

// The 12 even permutations of (0, 1, 2, 3).
inline std::vector<std::array<int, 4>> even_permutations4() {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inversions;
    if (inversions % 2 == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline GoldenQuaternion quat_from(const std::array<GoldenRat, 4>& c) { return {c[0], {c[1], c[2], c[3]}}; }

// All even coordinate permutations of the given 4-vectors, deduplicated.
inline std::set<GoldenQuaternion, StructLess> even_orbit(const std::vector<std::array<GoldenRat, 4>>& seeds) {
  std::set<GoldenQuaternion, StructLess> out;
  for (const auto& s : seeds)
    for (const auto& p : even_permutations4()) {
      std::array<GoldenRat, 4> c;
      for (int i = 0; i < 4; ++i) c[p[i]] = s[i];
      out.insert(quat_from(c));
    }
  return out;
}

template <class T, class Mul>
std::vector<T> close_under(std::vector<T> gens, Mul mul) {
  std::set<T, StructLess> seen(gens.begin(), gens.end());
  std::deque<T> frontier(gens.begin(), gens.end());
  std::vector<T> base(seen.begin(), seen.end());
  while (!frontier.empty()) {
    T g = frontier.front();
    frontier.pop_front();
    for (const auto& h : base) {
      T p = mul(g, h);
      if (seen.insert(p).second) frontier.push_back(std::move(p));
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

/// The listed icosian generators: (+-1,0,0,0)^A, 1/2(+-1,+-1,+-1,+-1)^A and
/// 1/2(0,+-1,+-tau',tau)^A (A = even coordinate permutations).
inline std::vector<GoldenQuaternion> icosian_generators() {
  const GoldenRat h = GoldenRat::fraction(1, 2);
  const GoldenRat t = GoldenRat::tau();
  const GoldenRat tc = GoldenRat(GoldenInt::tau_conj());
  std::vector<std::array<GoldenRat, 4>> seeds;
  for (int s : {1, -1}) seeds.push_back({GoldenRat(s), 0, 0, 0});
  for (int s0 : {1, -1})
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) seeds.push_back({h * GoldenRat(s0), h * GoldenRat(s1), h * GoldenRat(s2), h * GoldenRat(s3)});
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) seeds.push_back({GoldenRat(0), h * GoldenRat(s1), h * GoldenRat(s2) * tc, h * t});
  auto orbit = detail::even_orbit(seeds);
  return {orbit.begin(), orbit.end()};
}

/// Multiplicative closure of the icosian generators (order 120).
inline std::vector<GoldenQuaternion> icosian_group() {
  return detail::close_under(icosian_generators(),
                             [](const GoldenQuaternion& p, const GoldenQuaternion& q) { return p * q; });
}

// ---------------------------------------------------------------------------
// Icosahedral modules

enum class ModuleTag { MB, MF, MP, ImIcosian, Icosian0 };

inline std::string to_string(ModuleTag t) {
  switch (t) {
    case ModuleTag::MB: return "MB";
    case ModuleTag::MF: return "MF";
    case ModuleTag::MP: return "MP";
    case ModuleTag::ImIcosian: return "ImIcosian";
    case ModuleTag::Icosian0: return "Icosian0";
  }
  return "?";
}

using ResidueVec = std::array<Residue2, 3>;

inline constexpr Residue2 kR1{true, false};
inline constexpr Residue2 kRTau{false, true};
inline constexpr Residue2 kRTau2{true, true};  // tau^2 = 1 + tau

/// tau^2 beta + tau gamma + delta == 0 (mod 2).
constexpr bool mb_congruence(const ResidueVec& r) { return (kRTau2 * r[0] + kRTau * r[1] + r[2]).is_zero(); }
/// beta == tau gamma == tau^2 delta (mod 2).
constexpr bool mf_congruence(const ResidueVec& r) {
  return r[0] == kRTau * r[1] && r[0] == kRTau2 * r[2];
}
/// In M_B with beta + gamma + delta == 0 (mod 2): the second description of M_F.
constexpr bool mf_congruence_via_sum(const ResidueVec& r) {
  return mb_congruence(r) && (r[0] + r[1] + r[2]).is_zero();
}
/// In M_B with beta + gamma + delta == 0 or tau (mod 2).
constexpr bool mp_congruence(const ResidueVec& r) {
  Residue2 s = r[0] + r[1] + r[2];
  return mb_congruence(r) && (s.is_zero() || s == kRTau);
}

inline ResidueVec residues(const Vec3i& v) { return {Residue2(v[0]), Residue2(v[1]), Residue2(v[2])}; }

inline bool residue_test(const ResidueVec& r, ModuleTag tag) {
  switch (tag) {
    case ModuleTag::MB:
    case ModuleTag::ImIcosian: return mb_congruence(r);
    case ModuleTag::MF:
    case ModuleTag::Icosian0: return mf_congruence(r);
    case ModuleTag::MP: return mp_congruence(r);
  }
  return false;
}

/// Integral-vector membership; v holds the numerators for the halved tags.
inline bool module_contains_integral(const Vec3i& v, ModuleTag tag) { return residue_test(residues(v), tag); }

inline std::optional<Vec3i> integral_part(const Vec3q& v) {
  for (const auto& c : v)
    if (!c.is_integral()) return std::nullopt;
  return Vec3i{v[0].num(), v[1].num(), v[2].num()};
}

/// Membership of v in M_B, M_F, M_P, Im(I) = M_B / 2 or I_0 = M_F / 2.
inline bool module_contains(const Vec3q& v, ModuleTag tag) {
  if (tag == ModuleTag::ImIcosian || tag == ModuleTag::Icosian0) {
    Vec3q w = GoldenRat(2) * v;
    return module_contains(w, tag == ModuleTag::ImIcosian ? ModuleTag::MB : ModuleTag::MF);
  }
  auto iv = integral_part(v);
  return iv && module_contains_integral(*iv, tag);
}

/// The numerator module of a halved tag (M_B for Im(I), M_F for I_0).
inline ModuleTag numerator_module(ModuleTag tag) {
  switch (tag) {
    case ModuleTag::ImIcosian: return ModuleTag::MB;
    case ModuleTag::Icosian0: return ModuleTag::MF;
    default: return tag;
  }
}

/// Z[tau]-bases of M_B and M_F as listed with their definitions.
inline std::vector<std::array<Vec3i, 3>> module_bases(ModuleTag tag) {
  const GoldenInt t = GoldenInt::tau();
  const GoldenInt tc = GoldenInt::tau_conj();
  switch (numerator_module(tag)) {
    case ModuleTag::MB:
      return {{Vec3i{2, 0, 0}, Vec3i{1, 1, 1}, Vec3i{t, 0, 1}},
              {Vec3i{0, 2, 0}, Vec3i{-1, -tc, t}, Vec3i{1, 1, 1}}};
    case ModuleTag::MF:
      return {{Vec3i{2, 0, 0}, Vec3i{t + 1, t, 1}, Vec3i{0, 0, 2}},
              {Vec3i{0, 2, 0}, Vec3i{-1, -tc, t}, Vec3i{2, 0, 0}}};
    default: throw std::invalid_argument("no Z[tau]-basis for " + to_string(tag));
  }
}

/// Solves c0 b0 + c1 b1 + c2 b2 = v over Q(tau) (Cramer); nullopt if singular.
inline std::optional<Vec3q> solve_in_basis(const std::array<Vec3q, 3>& basis, const Vec3q& v) {
  GoldenRat d = dot(basis[0], cross(basis[1], basis[2]));
  if (d.is_zero()) return std::nullopt;
  return Vec3q{dot(v, cross(basis[1], basis[2])) / d, dot(basis[0], cross(v, basis[2])) / d,
               dot(basis[0], cross(basis[1], v)) / d};
}

/// Membership via Z[tau]-coordinates in the given basis (independent of the
/// congruence descriptions).
inline bool basis_contains(const std::array<Vec3i, 3>& basis, const Vec3q& v) {
  auto c = solve_in_basis({to_rat(basis[0]), to_rat(basis[1]), to_rat(basis[2])}, v);
  return c && integral_part(*c).has_value();
}

/// [M_B : M_F] from the residues of M_B and M_F in (Z[tau]/2)^3.
inline long module_index(ModuleTag outer, ModuleTag inner) {
  long n_outer = 0, n_inner = 0;
  for (std::uint8_t i = 0; i < 64; ++i) {
    ResidueVec r{Residue2::from_index(i & 3), Residue2::from_index((i >> 2) & 3), Residue2::from_index((i >> 4) & 3)};
    bool in_outer = residue_test(r, outer);
    bool in_inner = residue_test(r, inner);
    if (in_inner && !in_outer) throw std::logic_error("inner module residue outside outer module");
    n_outer += in_outer;
    n_inner += in_inner;
  }
  return n_outer / n_inner;
}

inline long module_index_MF_in_MB() { return module_index(ModuleTag::MB, ModuleTag::MF); }

// ---------------------------------------------------------------------------
// Rotation groups

using Matrix3 = std::array<Vec3q, 3>;  // rows

inline Matrix3 identity3() { return {Vec3q{1, 0, 0}, Vec3q{0, 1, 0}, Vec3q{0, 0, 1}}; }

inline Matrix3 transpose(const Matrix3& m) {
  Matrix3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

inline Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 bt = transpose(b);
  Matrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = dot(a[i], bt[j]);
  return r;
}

inline Vec3q mat_vec(const Matrix3& m, const Vec3q& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }
inline Vec3q mat_vec(const Matrix3& m, const Vec3i& v) { return mat_vec(m, to_rat(v)); }

inline GoldenRat det(const Matrix3& m) { return dot(m[0], cross(m[1], m[2])); }

inline Matrix3 conjugate(const Matrix3& m) { return {conjugate(m[0]), conjugate(m[1]), conjugate(m[2])}; }
inline Matrix3 negate(const Matrix3& m) { return {-m[0], -m[1], -m[2]}; }

inline bool is_orthogonal(const Matrix3& m) { return transpose(m) * m == identity3(); }

/// Order-2 generator diag(-1, -1, 1).
inline Matrix3 rotation_generator_order2() { return {Vec3q{-1, 0, 0}, Vec3q{0, -1, 0}, Vec3q{0, 0, 1}}; }

/// Order-5 generator 1/2 [[tau, -1, -tau'], [1, -tau', -tau], [-tau', tau, 1]].
inline Matrix3 rotation_generator_order5() {
  const GoldenRat h = GoldenRat::fraction(1, 2);
  const GoldenRat t = GoldenRat::tau();
  const GoldenRat tc = GoldenRat(GoldenInt::tau_conj());
  return {Vec3q{h * t, -h, -h * tc}, Vec3q{h, -h * tc, -h * t}, Vec3q{-h * tc, h * t, h}};
}

inline int struct_cmp(const Matrix3& a, const Matrix3& b) {
  for (int i = 0; i < 3; ++i)
    if (int c = struct_cmp(a[i], b[i])) return c;
  return 0;
}

enum class RotationGroup { Y, Ystar, Yh, Yhstar };

/// Multiplicative order of m (0 if it exceeds max_order).
inline int matrix_order(const Matrix3& m, int max_order = 120) {
  Matrix3 p = m;
  for (int k = 1; k <= max_order; ++k) {
    if (p == identity3()) return k;
    p = p * m;
  }
  return 0;
}

inline std::vector<Matrix3> rotation_group(RotationGroup which) {
  bool star = which == RotationGroup::Ystar || which == RotationGroup::Yhstar;
  Matrix3 g2 = rotation_generator_order2();
  Matrix3 g5 = rotation_generator_order5();
  if (star) {
    g2 = conjugate(g2);
    g5 = conjugate(g5);
  }
  auto group = detail::close_under(std::vector<Matrix3>{g2, g5}, [](const Matrix3& a, const Matrix3& b) { return a * b; });
  if (which == RotationGroup::Yh || which == RotationGroup::Yhstar) {
    std::set<Matrix3, StructLess> all(group.begin(), group.end());
    for (const auto& m : group) all.insert(negate(m));
    group.assign(all.begin(), all.end());
  }
  return group;
}

}  // namespace icotomo
