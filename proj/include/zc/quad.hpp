#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "zc/error.hpp"

namespace zc {

using Int = mpz_class;
using Rat = mpq_class;  // kept canonical (reduced, positive denominator)

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(Err::DivisionByZero, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

// d must be square-free (d = 0 encodes the rational field).
bool is_square_free(long d);

// Element a + b*sqrt(d) of Q(sqrt d). Canonical form: b == 0 implies d == 0,
// so every value has a unique representation and rationals mix freely with
// any quadratic field.
class Quad {
 public:
  Quad() : a_(0), b_(0), d_(0) {}
  Quad(int v) : a_(v), b_(0), d_(0) {}
  Quad(const Int& v) : a_(v), b_(0), d_(0) {}
  Quad(const Rat& v) : a_(v), b_(0), d_(0) {}
  Quad(Rat a, Rat b, long d);

  static Quad sqrt_d(long d) { return Quad(Rat(0), Rat(1), d); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  // value as a rational; requires b == 0
  const Rat& rat() const;

  Quad conj() const { return Quad(a_, -b_, b_ == 0 ? 0 : d_); }
  Rat norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

  friend Quad operator+(const Quad& l, const Quad& r);
  friend Quad operator-(const Quad& l, const Quad& r);
  friend Quad operator*(const Quad& l, const Quad& r);
  friend Quad operator/(const Quad& l, const Quad& r);
  Quad operator-() const { return Quad(-a_, -b_, d_ == 0 ? 0 : d_); }
  Quad& operator+=(const Quad& r) { return *this = *this + r; }
  Quad& operator-=(const Quad& r) { return *this = *this - r; }
  Quad& operator*=(const Quad& r) { return *this = *this * r; }
  Quad& operator/=(const Quad& r) { return *this = *this / r; }

  bool operator==(const Quad& r) const { return a_ == r.a_ && b_ == r.b_ && d_ == r.d_; }
  bool operator!=(const Quad& r) const { return !(*this == r); }

  // sign of the real value, decided exactly
  int sign() const;

  double to_double() const;

 private:
  Rat a_, b_;
  long d_;
};

// common field of two values (promotes d = 0); FieldMismatch if incompatible
long combine_field(long d1, long d2);

inline bool operator<(const Quad& l, const Quad& r) { return (l - r).sign() < 0; }
inline bool operator>(const Quad& l, const Quad& r) { return (l - r).sign() > 0; }
inline bool operator<=(const Quad& l, const Quad& r) { return (l - r).sign() <= 0; }
inline bool operator>=(const Quad& l, const Quad& r) { return (l - r).sign() >= 0; }

Quad parse_quad(const std::string& s);
std::string quad_str(const Quad& q);

// exact square root inside Q(sqrt d), if one exists
std::optional<Quad> sqrt_in_field(const Quad& s, long d);

// Q-linearization (a, b); injective and Q-linear
inline std::pair<Rat, Rat> rational_embed(const Quad& q) { return {q.a(), q.b()}; }

struct Vec2K {
  Quad x, y;

  Vec2K() = default;
  Vec2K(Quad xx, Quad yy) : x(std::move(xx)), y(std::move(yy)) {}

  bool operator==(const Vec2K& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2K& o) const { return !(*this == o); }
  Vec2K operator+(const Vec2K& o) const { return {x + o.x, y + o.y}; }
  Vec2K operator-(const Vec2K& o) const { return {x - o.x, y - o.y}; }
  Vec2K operator-() const { return {-x, -y}; }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  long d() const { return combine_field(x.d(), y.d()); }
  // rotate by +90 degrees
  Vec2K perp() const { return {-y, x}; }
};

inline Vec2K operator*(const Quad& c, const Vec2K& v) { return {c * v.x, c * v.y}; }
inline Quad cross(const Vec2K& u, const Vec2K& v) { return u.x * v.y - u.y * v.x; }
inline Quad dot(const Vec2K& u, const Vec2K& v) { return u.x * v.x + u.y * v.y; }

struct Mat2K {
  Quad a11, a12, a21, a22;

  Mat2K() = default;
  Mat2K(Quad m11, Quad m12, Quad m21, Quad m22)
      : a11(std::move(m11)), a12(std::move(m12)), a21(std::move(m21)), a22(std::move(m22)) {}

  static Mat2K identity() { return {1, 0, 0, 1}; }

  bool operator==(const Mat2K& o) const {
    return a11 == o.a11 && a12 == o.a12 && a21 == o.a21 && a22 == o.a22;
  }
  bool operator!=(const Mat2K& o) const { return !(*this == o); }

  Quad det() const { return a11 * a22 - a12 * a21; }
  long d() const { return combine_field(combine_field(a11.d(), a12.d()), combine_field(a21.d(), a22.d())); }

  Vec2K apply(const Vec2K& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  Mat2K operator*(const Mat2K& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2K operator-(const Mat2K& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }

  Mat2K inverse() const {
    Quad dt = det();
    if (dt.is_zero()) fail(Err::SingularMatrix, "inverting a singular 2x2 matrix");
    return {a22 / dt, -a12 / dt, -a21 / dt, a11 / dt};
  }
};

}  // namespace zc
