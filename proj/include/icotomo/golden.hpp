// Exact arithmetic in Z[tau] and Q(tau), tau = (1 + sqrt 5) / 2.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace icotomo {

using Integer = boost::multiprecision::cpp_int;

inline constexpr double kTau = 1.6180339887498948482;
inline constexpr double kTauConj = -0.6180339887498948482;

namespace detail {

inline int sign_of(const Integer& x) { return x.sign(); }

// Floor division for arbitrary-precision integers (cpp_int truncates).
inline Integer floor_div(const Integer& p, const Integer& q) {
  Integer quot = p / q;
  Integer rem = p - quot * q;
  if (rem != 0 && ((rem < 0) != (q < 0))) --quot;
  return quot;
}

// Nearest integer to p / q, ties rounded up.
inline Integer round_div(const Integer& p, const Integer& q) {
  return floor_div(2 * p + q, 2 * q);
}

inline Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline double to_double(const Integer& x) { return x.convert_to<double>(); }

}  // namespace detail

/// a + b*tau with integer a, b.
class GoldenInt {
 public:
  GoldenInt() = default;
  template <std::integral I>
  GoldenInt(I a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  GoldenInt(Integer a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  GoldenInt(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {}

  static GoldenInt tau() { return {0, 1}; }
  /// tau' = 1 - tau = -1/tau.
  static GoldenInt tau_conj() { return {1, -1}; }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  GoldenInt& operator+=(const GoldenInt& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  GoldenInt& operator-=(const GoldenInt& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  // (a + b tau)(c + d tau) = (ac + bd) + (ad + bc + bd) tau, from tau^2 = 1 + tau.
  GoldenInt& operator*=(const GoldenInt& o) {
    Integer bd = b_ * o.b_;
    Integer na = a_ * o.a_ + bd;
    Integer nb = a_ * o.b_ + b_ * o.a_ + bd;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  friend GoldenInt operator+(GoldenInt x, const GoldenInt& y) { return x += y; }
  friend GoldenInt operator-(GoldenInt x, const GoldenInt& y) { return x -= y; }
  friend GoldenInt operator*(GoldenInt x, const GoldenInt& y) { return x *= y; }
  friend GoldenInt operator-(const GoldenInt& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const GoldenInt& x, const GoldenInt& y) = default;

 private:
  Integer a_ = 0;
  Integer b_ = 0;
};

/// Galois conjugation sqrt5 -> -sqrt5: a + b tau -> (a + b) - b tau.
/// tau^k for any integer k (tau^-1 = tau - 1).
inline GoldenInt tau_pow(long k) {
  GoldenInt base = k >= 0 ? GoldenInt::tau() : GoldenInt(-1, 1), r(1);
  for (long n = k >= 0 ? k : -k; n > 0; --n) r = r * base;
  return r;
}

inline GoldenInt conjugate(const GoldenInt& x) { return {x.a() + x.b(), -x.b()}; }

/// Field norm x * x' = a^2 + ab - b^2.
inline Integer norm(const GoldenInt& x) { return x.a() * x.a() + x.a() * x.b() - x.b() * x.b(); }

/// Exact sign of the real number a + b tau.
///
/// With p = 2a + b and q = b the value is (p + q sqrt5) / 2, so the sign is
/// decided by comparing p^2 against 5 q^2 when p and q have opposite signs.
inline int sign(const GoldenInt& x) {
  Integer p = 2 * x.a() + x.b();
  const Integer& q = x.b();
  int sp = p.sign();
  int sq = q.sign();
  if (sp == 0) return sq;
  if (sq == 0 || sp == sq) return sp;
  Integer d = p * p - 5 * q * q;
  return sp * d.sign();
}

/// Double approximation with relative error of a few ulps (avoids the
/// cancellation in a + b tau by dividing the exact norm by the conjugate).
inline double embed(const GoldenInt& x) {
  double a = detail::to_double(x.a());
  double b = detail::to_double(x.b());
  double v = a + b * kTau;
  double vc = a + b * kTauConj;
  if (std::abs(v) >= std::abs(vc)) return v;
  return detail::to_double(norm(x)) / vc;
}

inline bool is_unit(const GoldenInt& x) {
  Integer n = norm(x);
  return n == 1 || n == -1;
}

/// For a unit x returns (s, e) with x = s * tau^e, s in {+1, -1}.
///
/// Z[tau]^x = {+-tau^e}; the sign is reported separately so callers can
/// decide whether they accept negative units.
inline std::optional<std::pair<int, long>> unit_exponent(GoldenInt x) {
  if (!is_unit(x)) return std::nullopt;
  int s = sign(x);
  if (s < 0) x = -x;
  long e = 0;
  const GoldenInt inv_tau{-1, 1};  // 1/tau = tau - 1
  const GoldenInt one{1};
  // |x| > 1 shrinks by 1/tau each step, |x| < 1 grows by tau.
  while (!(x == one)) {
    if (sign(x - one) > 0) {
      x *= inv_tau;
      ++e;
    } else {
      x *= GoldenInt::tau();
      --e;
    }
  }
  return std::make_pair(s, e);
}

/// Exact quotient x / y if y divides x in Z[tau].
inline std::optional<GoldenInt> exact_divide(const GoldenInt& x, const GoldenInt& y) {
  if (y.is_zero()) throw std::domain_error("division by zero in Z[tau]");
  Integer n = norm(y);
  GoldenInt p = x * conjugate(y);
  if (p.a() % n != 0 || p.b() % n != 0) return std::nullopt;
  return GoldenInt{p.a() / n, p.b() / n};
}

/// Euclidean division in the norm-Euclidean ring Z[tau]: |N(r)| < |N(y)|.
inline std::pair<GoldenInt, GoldenInt> divmod(const GoldenInt& x, const GoldenInt& y) {
  if (y.is_zero()) throw std::domain_error("division by zero in Z[tau]");
  Integer n = norm(y);
  GoldenInt p = x * conjugate(y);
  GoldenInt q{detail::round_div(p.a(), n), detail::round_div(p.b(), n)};
  GoldenInt r = x - q * y;
  return {q, r};
}

/// A generator of the ideal (x, y); defined up to units.
inline GoldenInt gcd(GoldenInt x, GoldenInt y) {
  while (!y.is_zero()) {
    GoldenInt r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

/// Structural total order (by coefficients); not the real-number order.
inline int struct_cmp(const GoldenInt& x, const GoldenInt& y) {
  if (x.a() != y.a()) return x.a() < y.a() ? -1 : 1;
  if (x.b() != y.b()) return x.b() < y.b() ? -1 : 1;
  return 0;
}

inline std::string to_string(const GoldenInt& x) {
  std::ostringstream os;
  if (x.b() == 0) {
    os << x.a();
  } else if (x.a() == 0) {
    os << x.b() << "*tau";
  } else {
    os << x.a() << (x.b() < 0 ? "-" : "+") << (x.b() < 0 ? Integer(-x.b()) : x.b()) << "*tau";
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GoldenInt& x) { return os << to_string(x); }

/// num / den with num in Z[tau] and den > 0, kept in lowest terms.
class GoldenRat {
 public:
  GoldenRat() = default;
  template <std::integral I>
  GoldenRat(I a) : num_(a) {}  // NOLINT(google-explicit-constructor)
  GoldenRat(GoldenInt num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)
  GoldenRat(GoldenInt num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("zero denominator");
    normalize();
  }

  /// p / q as an element of Q.
  static GoldenRat fraction(Integer p, Integer q) { return {GoldenInt(std::move(p)), std::move(q)}; }
  static GoldenRat tau() { return GoldenInt::tau(); }

  const GoldenInt& num() const { return num_; }
  const Integer& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  GoldenRat& operator+=(const GoldenRat& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * GoldenInt(o.den_) + o.num_ * GoldenInt(den_);
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  GoldenRat& operator-=(const GoldenRat& o) { return *this += -o; }
  GoldenRat& operator*=(const GoldenRat& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  GoldenRat& operator/=(const GoldenRat& o) { return *this *= o.inverse(); }

  GoldenRat inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in Q(tau)");
    // den / num = den * num' / N(num)
    Integer n = norm(num_);
    GoldenInt top = conjugate(num_) * GoldenInt(den_);
    if (n < 0) {
      top = -top;
      n = -n;
    }
    return {top, n};
  }

  friend GoldenRat operator+(GoldenRat x, const GoldenRat& y) { return x += y; }
  friend GoldenRat operator-(GoldenRat x, const GoldenRat& y) { return x -= y; }
  friend GoldenRat operator*(GoldenRat x, const GoldenRat& y) { return x *= y; }
  friend GoldenRat operator/(GoldenRat x, const GoldenRat& y) { return x /= y; }
  friend GoldenRat operator-(const GoldenRat& x) {
    GoldenRat r = x;
    r.num_ = -r.num_;
    return r;
  }
  friend bool operator==(const GoldenRat& x, const GoldenRat& y) = default;

 private:
  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    Integer g = detail::gcd(detail::gcd(num_.a(), num_.b()), den_);
    if (g != 1) {
      num_ = GoldenInt(num_.a() / g, num_.b() / g);
      den_ /= g;
    }
  }

  GoldenInt num_;
  Integer den_ = 1;
};

inline GoldenRat conjugate(const GoldenRat& x) { return {conjugate(x.num()), x.den()}; }
inline int sign(const GoldenRat& x) { return sign(x.num()); }
inline double embed(const GoldenRat& x) { return embed(x.num()) / detail::to_double(x.den()); }

/// Field norm N(x) = x x' as an element of Q (returned as GoldenRat with b = 0).
inline GoldenRat norm(const GoldenRat& x) { return GoldenRat::fraction(norm(x.num()), x.den() * x.den()); }

inline int compare(const GoldenRat& x, const GoldenRat& y) { return sign(x - y); }
inline int compare(const GoldenInt& x, const GoldenInt& y) { return sign(x - y); }

inline GoldenRat abs(const GoldenRat& x) { return sign(x) < 0 ? -x : x; }
inline GoldenInt abs(const GoldenInt& x) { return sign(x) < 0 ? -x : x; }

inline int struct_cmp(const GoldenRat& x, const GoldenRat& y) {
  if (int c = struct_cmp(x.num(), y.num())) return c;
  if (x.den() != y.den()) return x.den() < y.den() ? -1 : 1;
  return 0;
}

inline std::string to_string(const GoldenRat& x) {
  if (x.den() == 1) return to_string(x.num());
  std::ostringstream os;
  os << "(" << to_string(x.num()) << ")/" << x.den();
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GoldenRat& x) { return os << to_string(x); }

/// Z[tau] / 2 Z[tau], the field with four elements {0, 1, tau, 1 + tau}.
class Residue2 {
 public:
  constexpr Residue2() = default;
  constexpr Residue2(bool a, bool b) : bits_(static_cast<std::uint8_t>((a ? 1 : 0) | (b ? 2 : 0))) {}
  explicit Residue2(const GoldenInt& x)
      : Residue2(boost::multiprecision::bit_test(x.a() < 0 ? Integer(-x.a()) : x.a(), 0),
                 boost::multiprecision::bit_test(x.b() < 0 ? Integer(-x.b()) : x.b(), 0)) {}

  constexpr bool a() const { return bits_ & 1; }
  constexpr bool b() const { return bits_ & 2; }
  constexpr bool is_zero() const { return bits_ == 0; }
  constexpr std::uint8_t index() const { return bits_; }
  static constexpr Residue2 from_index(std::uint8_t i) { return {bool(i & 1), bool(i & 2)}; }

  friend constexpr Residue2 operator+(Residue2 x, Residue2 y) { return from_index(x.bits_ ^ y.bits_); }
  friend constexpr Residue2 operator*(Residue2 x, Residue2 y) {
    bool bd = x.b() && y.b();
    bool na = (x.a() && y.a()) != bd;
    bool nb = ((x.a() && y.b()) != (x.b() && y.a())) != bd;
    return {na, nb};
  }
  friend constexpr bool operator==(Residue2, Residue2) = default;

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace icotomo
