#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zc/intmat.hpp"

using namespace zc;

namespace {

IntMatrix rand_matrix(std::mt19937_64& rng, int r, int c, int lo = -6, int hi = 6) {
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = long(rng() % (hi - lo + 1)) + lo;
  return m;
}

IntMatrix diag_of(const std::vector<long>& d, int r, int c) {
  IntMatrix m(r, c);
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
  return m;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  SmithResult s = smith(a);
  CHECK(s.S == diag_of({2, 4}, 2, 2));  // gcd 2, |det| 16 / 2
  CHECK(s.U * a * s.V == s.S);

  CHECK(smith(IntMatrix::identity(3)).S == IntMatrix::identity(3));
  CHECK(smith(IntMatrix(2, 3)).S == IntMatrix(2, 3));
}

TEST_CASE("smith transforms are unimodular and divisibility holds") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
    IntMatrix a = rand_matrix(rng, r, c);
    SmithResult s = smith(a);
    CHECK(s.U * a * s.V == s.S);
    Int du = det(s.U), dv = det(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    CHECK(s.V * s.Vinv == IntMatrix::identity(c));
    for (int i = 0; i + 1 < std::min(r, c); ++i) {
      if (s.diag(i + 1) != 0) CHECK(s.diag(i + 1) % s.diag(i) == 0);
      CHECK(s.diag(i) >= 0);
    }
    CHECK(rank(a) == rank(a.transpose()));
  }
}

TEST_CASE("kernel bases are correct and saturated") {
  Submodule k1 = kernel(IntMatrix::from_rows({{1, 1}}));
  REQUIRE(k1.rank() == 1);
  CHECK(k1.basis.at(0, 0) == -k1.basis.at(0, 1));

  CHECK(kernel(IntMatrix::from_rows({{2, 1}, {1, 1}})).rank() == 0);

  Submodule k2 = kernel(IntMatrix::from_rows({{2, 2}, {1, 1}}));
  REQUIRE(k2.rank() == 1);
  CHECK(k2.basis.at(0, 0) + k2.basis.at(0, 1) == 0);
  CHECK(abs(k2.basis.at(0, 0)) == 1);  // primitive

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix a = rand_matrix(rng, 2 + int(rng() % 3), 3 + int(rng() % 3));
    Submodule k = kernel(a);
    for (int i = 0; i < k.rank(); ++i) {
      IVec v = k.basis.row(i);
      CHECK(is_zero(a.apply(v)));
      // saturation: no prime up to 13 divides a basis vector
      for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        bool divisible = true;
        for (const auto& x : v)
          if (x % p != 0) divisible = false;
        CHECK(!divisible);
      }
    }
    CHECK(k.rank() == a.cols() - rank(a));
  }
}

TEST_CASE("intersections") {
  auto span = [](std::vector<IVec> rows, int ambient) {
    return Submodule{ambient, IntMatrix::from_rows(rows)};
  };
  Submodule a = span({{1, 0, 0}, {0, 1, 0}}, 3);
  Submodule b = span({{0, 1, 0}, {0, 0, 1}}, 3);
  Submodule i = intersect(a, b);
  REQUIRE(i.rank() == 1);
  CHECK(membership({0, 1, 0}, i) == Membership::yes);

  Submodule self = intersect(a, a);
  CHECK(self.rank() == 2);
  CHECK(membership({1, 2, 0}, self) == Membership::yes);

  Submodule c = intersect(span({{2, 0}}, 2), span({{3, 0}}, 2));
  REQUIRE(c.rank() == 1);
  CHECK(abs(c.basis.at(0, 0)) == 6);  // lcm of the indices
  CHECK_THROWS_AS(intersect(a, span({{1, 0}}, 2)), Error);
}

TEST_CASE("intersection is contained in both factors") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4;
    Submodule a = saturate(Submodule{n, rand_matrix(rng, 2, n)});
    Submodule b = saturate(Submodule{n, rand_matrix(rng, 2, n)});
    if (a.rank() < 2 || b.rank() < 2) continue;
    Submodule i = intersect(a, b);
    for (int r = 0; r < i.rank(); ++r) {
      CHECK(membership(i.basis.row(r), a) == Membership::yes);
      CHECK(membership(i.basis.row(r), b) == Membership::yes);
    }
    // an element of a that lies in b must lie in the intersection's span
    for (int r = 0; r < a.rank(); ++r) {
      IVec v = a.basis.row(r);
      if (membership(v, b) == Membership::yes)
        CHECK(membership(v, i) != Membership::no);
    }
  }
}

TEST_CASE("membership trichotomy") {
  Submodule s{2, IntMatrix::from_rows({{1, 1}})};
  CHECK(membership({2, 2}, s) == Membership::yes);
  CHECK(membership({1, 0}, s) == Membership::no);
  Submodule t{2, IntMatrix::from_rows({{2, 2}})};
  CHECK(membership({1, 1}, t) == Membership::rational_only);
}

TEST_CASE("rank of pinned matrices") {
  CHECK(rank(diag_of({1, 0}, 2, 2)) == 1);
  CHECK(rank(IntMatrix(3, 3)) == 0);
  CHECK(rank(IntMatrix::from_rows({{1, 2}, {2, 4}, {3, 6}})) == 1);
}

TEST_CASE("quotient models reduce and lift consistently") {
  // Z^3 modulo the span of (1,1,0): free of rank 2
  IntMatrix cycles = IntMatrix::identity(3);
  QuotientModel q = QuotientModel::build(cycles, {{Int(1), Int(1), Int(0)}});
  CHECK(q.rank() == 2);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    IVec x = {long(rng() % 9) - 4, long(rng() % 9) - 4, long(rng() % 9) - 4};
    IVec red = q.reduce(x);
    IVec back = q.lift(red);
    // x - lift(reduce(x)) must be a multiple of (1,1,0)
    Int d0 = x[0] - back[0], d1 = x[1] - back[1], d2 = x[2] - back[2];
    CHECK(d0 == d1);
    CHECK(d2 == 0);
    CHECK(q.reduce(back) == red);
  }
}
