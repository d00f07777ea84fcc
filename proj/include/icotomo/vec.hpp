// Small fixed-size vectors over Z[tau] / Q(tau).
#pragma once

#include "icotomo/golden.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace icotomo {

template <class T>
using Vec3 = std::array<T, 3>;

using Vec3i = Vec3<GoldenInt>;
using Vec3q = Vec3<GoldenRat>;

template <class T>
Vec3<T> operator+(const Vec3<T>& x, const Vec3<T>& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}
template <class T>
Vec3<T> operator-(const Vec3<T>& x, const Vec3<T>& y) {
  return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}
template <class T>
Vec3<T> operator-(const Vec3<T>& x) {
  return {-x[0], -x[1], -x[2]};
}
template <class T>
Vec3<T> operator*(const T& s, const Vec3<T>& x) {
  return {s * x[0], s * x[1], s * x[2]};
}
template <class T>
T dot(const Vec3<T>& x, const Vec3<T>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}
template <class T>
Vec3<T> cross(const Vec3<T>& x, const Vec3<T>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}
template <class T>
T norm2(const Vec3<T>& x) {
  return dot(x, x);
}
template <class T>
bool is_zero(const Vec3<T>& x) {
  return x[0].is_zero() && x[1].is_zero() && x[2].is_zero();
}
template <class T>
Vec3<T> conjugate(const Vec3<T>& x) {
  return {conjugate(x[0]), conjugate(x[1]), conjugate(x[2])};
}

inline Vec3q to_rat(const Vec3i& x) { return {GoldenRat(x[0]), GoldenRat(x[1]), GoldenRat(x[2])}; }
inline Vec3q to_rat(const Vec3q& x) { return x; }

inline std::array<double, 3> embed(const Vec3q& x) { return {embed(x[0]), embed(x[1]), embed(x[2])}; }
inline std::array<double, 3> embed(const Vec3i& x) { return {embed(x[0]), embed(x[1]), embed(x[2])}; }

/// num / 2 as a rational vector.
inline Vec3q halve(const Vec3i& num) {
  return {GoldenRat(num[0], 2), GoldenRat(num[1], 2), GoldenRat(num[2], 2)};
}

template <class T, std::size_t N>
int struct_cmp(const std::array<T, N>& x, const std::array<T, N>& y) {
  for (std::size_t i = 0; i < N; ++i)
    if (int c = struct_cmp(x[i], y[i])) return c;
  return 0;
}

/// Structural strict weak order for exact values, used by ordered containers.
struct StructLess {
  template <class T>
  bool operator()(const T& x, const T& y) const {
    return struct_cmp(x, y) < 0;
  }
};

/// Sorts and removes duplicates (structural order).
template <class P>
std::vector<P> canonical_set(std::vector<P> pts) {
  std::sort(pts.begin(), pts.end(), StructLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <class P>
bool same_set(std::vector<P> a, std::vector<P> b) {
  return canonical_set(std::move(a)) == canonical_set(std::move(b));
}

}  // namespace icotomo
