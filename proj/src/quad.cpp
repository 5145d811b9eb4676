#include "zc/quad.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace zc {

bool is_square_free(long d) {
  if (d < 0) return false;
  if (d < 2) return true;  // 0 and 1 allowed as "no radical part" (1 never stored)
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

Quad::Quad(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (b_ == 0) {
    d_ = 0;
  } else {
    if (d_ <= 1 || !is_square_free(d_))
      fail(Err::FieldMismatch, "field parameter must be a square-free integer > 1 when b != 0");
  }
}

const Rat& Quad::rat() const {
  if (b_ != 0) fail(Err::FieldMismatch, "irrational value used where a rational is required");
  return a_;
}

long combine_field(long d1, long d2) {
  if (d1 == d2) return d1;
  if (d1 == 0) return d2;
  if (d2 == 0) return d1;
  fail(Err::FieldMismatch, "mixing Q(sqrt " + std::to_string(d1) + ") with Q(sqrt " + std::to_string(d2) + ")");
}

Quad operator+(const Quad& l, const Quad& r) {
  long d = combine_field(l.d_, r.d_);
  return Quad(l.a_ + r.a_, l.b_ + r.b_, d);
}

Quad operator-(const Quad& l, const Quad& r) {
  long d = combine_field(l.d_, r.d_);
  return Quad(l.a_ - r.a_, l.b_ - r.b_, d);
}

Quad operator*(const Quad& l, const Quad& r) {
  long d = combine_field(l.d_, r.d_);
  return Quad(l.a_ * r.a_ + Rat(d) * l.b_ * r.b_, l.a_ * r.b_ + l.b_ * r.a_, d);
}

Quad operator/(const Quad& l, const Quad& r) {
  if (r.is_zero()) fail(Err::DivisionByZero, "division by zero");
  long d = combine_field(l.d_, r.d_);
  if (r.b_ == 0) return Quad(l.a_ / r.a_, l.b_ / r.a_, d);
  Rat n = r.norm();  // nonzero: sqrt(d) is irrational
  Quad c = r.conj();
  Quad num = l * c;
  return Quad(num.a_ / n, num.b_ / n, d);
}

int Quad::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite rational/radical parts: compare a^2 with d b^2
  Rat diff = a_ * a_ - Rat(d_) * b_ * b_;
  return sa * sgn(diff);
}

double Quad::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(double(d_)); }

// ---------------------------------------------------------------------------
// textual grammar: "p/q+r/s*sqrt(d)" and the obvious degenerate forms
// ---------------------------------------------------------------------------

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(Err::ParseError, "empty rational");
  size_t i = 0;
  auto expect_int = [&](bool allow_sign) {
    size_t start = i;
    if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) fail(Err::ParseError, "bad rational '" + s + "'");
    return s.substr(start, i - start);
  };
  std::string num = expect_int(true);
  if (num[0] == '+') num.erase(0, 1);  // mpz rejects an explicit plus
  std::string den = "1";
  if (i < s.size() && s[i] == '/') {
    ++i;
    den = expect_int(false);
  }
  if (i != s.size()) fail(Err::ParseError, "trailing characters in rational '" + s + "'");
  return make_rat(Int(num), Int(den));
}

std::string rat_str(const Rat& r) { return r.get_str(); }

namespace {

// one term of the grammar: either a rational or [coef*]sqrt(d)
struct Term {
  Rat coef;
  long d = 0;  // 0: plain rational term
};

Term parse_term(const std::string& t) {
  size_t pos = t.find("sqrt(");
  if (pos == std::string::npos) return {parse_rat(t), 0};
  if (t.back() != ')') fail(Err::ParseError, "unterminated sqrt in '" + t + "'");
  std::string inside = t.substr(pos + 5, t.size() - pos - 6);
  if (inside.empty()) fail(Err::ParseError, "empty sqrt in '" + t + "'");
  for (char c : inside)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail(Err::ParseError, "bad sqrt argument '" + inside + "'");
  long d = std::stol(inside);
  std::string pre = t.substr(0, pos);
  Rat coef(1);
  if (!pre.empty()) {
    if (pre == "-") {
      coef = -1;
    } else if (pre == "+") {
      coef = 1;
    } else {
      if (pre.back() != '*') fail(Err::ParseError, "expected '*' before sqrt in '" + t + "'");
      coef = parse_rat(pre.substr(0, pre.size() - 1));
    }
  }
  if (d <= 1 || !is_square_free(d)) fail(Err::ParseError, "sqrt argument must be square-free and > 1");
  return {coef, d};
}

}  // namespace

Quad parse_quad(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(Err::ParseError, "empty number");
  // split into at most two top-level terms at '+'/'-' (not inside parens, not leading)
  std::vector<std::string> terms;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '+' || c == '-') && depth == 0 && i > start) {
      char prev = s[i - 1];
      if (prev != '*' && prev != '/' && prev != '+' && prev != '-') {
        terms.push_back(s.substr(start, i - start));
        start = i;  // keep the sign with the next term
      }
    }
  }
  terms.push_back(s.substr(start));
  if (terms.size() > 2) fail(Err::ParseError, "too many terms in '" + raw + "'");

  Rat a(0), b(0);
  long d = 0;
  for (auto& t : terms) {
    Term p = parse_term(t);
    if (p.d == 0) {
      a += p.coef;
    } else {
      if (d != 0 && d != p.d) fail(Err::ParseError, "mixed radicals in '" + raw + "'");
      d = p.d;
      b += p.coef;
    }
  }
  if (b == 0) return Quad(a);
  return Quad(a, b, d);
}

std::string quad_str(const Quad& q) {
  if (q.b() == 0) return rat_str(q.a());
  std::string radical = rat_str(abs(q.b())) + "*sqrt(" + std::to_string(q.d()) + ")";
  std::string sign = sgn(q.b()) < 0 ? "-" : "";
  if (q.a() == 0) return sign + radical;
  if (sign.empty()) sign = "+";
  return rat_str(q.a()) + sign + radical;
}

// ---------------------------------------------------------------------------
// exact square roots in Q(sqrt d)
// ---------------------------------------------------------------------------

namespace {

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  Int num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    return make_rat(sn, sd);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Quad> sqrt_in_field(const Quad& s, long d) {
  if (s.sign() < 0) return std::nullopt;
  if (s.is_zero()) return Quad(0);
  combine_field(s.d(), d);  // s must live in Q(sqrt d)
  if (s.b() == 0) {
    if (auto r = rat_sqrt(s.a())) return Quad(*r);
    if (d > 1) {
      // try x = y*sqrt(d): d*y^2 = s
      if (auto y = rat_sqrt(s.a() / Rat(d))) {
        if (*y != 0) return Quad(Rat(0), *y, d);
      }
    }
    return std::nullopt;
  }
  // s = sa + sb*sqrt(d), sb != 0; try t = x + y*sqrt(d):
  //   x^2 + d y^2 = sa,  2xy = sb  =>  y^2 = (sa ± sqrt(sa^2 - d sb^2)) / (2d)
  Rat disc = s.a() * s.a() - Rat(d) * s.b() * s.b();
  auto r = rat_sqrt(disc);
  if (!r) return std::nullopt;
  for (int pick = 0; pick < 2; ++pick) {
    Rat y2 = (s.a() + (pick == 0 ? *r : -*r)) / (2 * Rat(d));
    auto y = rat_sqrt(y2);
    if (!y || *y == 0) continue;
    Rat x = s.b() / (2 * *y);
    Quad t(x, *y, d);
    if (t * t == s) return t.sign() > 0 ? t : -t;
  }
  return std::nullopt;
}

}  // namespace zc
