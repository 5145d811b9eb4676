#pragma once

#include <optional>
#include <vector>

#include "zc/quad.hpp"

namespace zc {

using IVec = std::vector<Int>;

// Dense integer matrix over arbitrary-precision integers. Linear maps act on
// column vectors (y = A x). Submodule bases store one vector per row.
class IntMatrix {
 public:
  IntMatrix() : r_(0), c_(0) {}
  IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, Int(0)) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<IVec>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Int& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IVec apply(const IVec& x) const;  // column-vector action
  IVec row(int i) const;
  void set_row(int i, const IVec& v);

  std::string str() const;

 private:
  int r_, c_;
  std::vector<Int> a_;
};

// U * A * V = S, with U and V unimodular, S diagonal, d_i | d_{i+1}, d_i >= 0.
// Vinv = V^{-1} is tracked alongside (needed to change coordinates back).
struct SmithResult {
  IntMatrix U, S, V, Vinv;
  int rank = 0;
  Int diag(int i) const { return (i < S.rows() && i < S.cols()) ? S.at(i, i) : Int(0); }
};

SmithResult smith(const IntMatrix& A);
int rank(const IntMatrix& A);
Int det(IntMatrix A);  // Bareiss fraction-free elimination

// Free Z-submodule of Z^ambient given by an independent basis, one vector per
// row. Kernels and intersections come out saturated (primitive bases).
struct Submodule {
  int ambient = 0;
  IntMatrix basis;  // rank x ambient
  int rank() const { return basis.rows(); }
};

Submodule kernel(const IntMatrix& A);  // {x : A x = 0}, saturated
Submodule saturate(const Submodule& m);
Submodule intersect(const Submodule& a, const Submodule& b);

enum class Membership { yes, no, rational_only };
Membership membership(const IVec& v, const Submodule& m);

// integer solution y with  v = y^T * basisRows  (v as a row combination)
std::optional<IVec> solve_in_rowspan(const IVec& v, const IntMatrix& basisRows);

// Free quotient L/R presented by a lattice L = rowspan(K) in Z^N and a
// relation submodule R (given by vectors in Z^N contained in L). Asserts the
// quotient is torsion-free. reduce() maps a vector of L to quotient
// coordinates; lift() picks the canonical representative chain.
class QuotientModel {
 public:
  QuotientModel() = default;
  static QuotientModel build(const IntMatrix& cycles, const std::vector<IVec>& relations);

  int ambient() const { return N_; }
  int rank() const { return rank_; }
  IVec reduce(const IVec& x) const;      // x must lie in rowspan(cycles)
  IVec lift(const IVec& coords) const;   // quotient coords -> chain in Z^N
  const IntMatrix& lift_rows() const { return lift_rows_; }

 private:
  int N_ = 0, rank_ = 0, s_ = 0;
  IntMatrix K_;          // cycle basis rows (r x N)
  IntMatrix V_;          // from smith(relations in K coords)
  IntMatrix lift_rows_;  // rank x N
};

IVec neg(const IVec& v);
bool is_zero(const IVec& v);
Int content(const IVec& v);  // gcd of entries (0 for zero vector)

}  // namespace zc
