#include "zc/intmat.hpp"

#include <sstream>

namespace zc {

IntMatrix IntMatrix::from_rows(const std::vector<IVec>& rows) {
  int r = int(rows.size());
  int c = r ? int(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) fail(Err::DimensionMismatch, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) fail(Err::DimensionMismatch, "matrix product shape");
  IntMatrix p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.c_; ++j) p.at(i, j) += x * o.at(k, j);
    }
  return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) fail(Err::DimensionMismatch, "matrix sum shape");
  IntMatrix s(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) fail(Err::DimensionMismatch, "matrix difference shape");
  IntMatrix s(r_, c_);
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] - o.a_[i];
  return s;
}

IVec IntMatrix::apply(const IVec& x) const {
  if (int(x.size()) != c_) fail(Err::DimensionMismatch, "matrix-vector shape");
  IVec y(r_, Int(0));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (at(i, j) != 0) y[i] += at(i, j) * x[j];
  return y;
}

IVec IntMatrix::row(int i) const {
  IVec v(c_);
  for (int j = 0; j < c_; ++j) v[j] = at(i, j);
  return v;
}

void IntMatrix::set_row(int i, const IVec& v) {
  for (int j = 0; j < c_; ++j) at(i, j) = v[j];
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < c_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form, smallest-pivot strategy
// ---------------------------------------------------------------------------

SmithResult smith(const IntMatrix& A) {
  int r = A.rows(), c = A.cols();
  SmithResult out;
  out.S = A;
  out.U = IntMatrix::identity(r);
  out.V = IntMatrix::identity(c);
  out.Vinv = IntMatrix::identity(c);
  IntMatrix& S = out.S;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;
  IntMatrix& Vi = out.Vinv;

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c; ++k) std::swap(S.at(i, k), S.at(j, k));
    for (int k = 0; k < r; ++k) std::swap(U.at(i, k), U.at(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(S.at(k, i), S.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(V.at(k, i), V.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(Vi.at(i, k), Vi.at(j, k));
  };
  // row_i -= q * row_t
  auto row_op = [&](int i, int t, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < c; ++k) S.at(i, k) -= q * S.at(t, k);
    for (int k = 0; k < r; ++k) U.at(i, k) -= q * U.at(t, k);
  };
  // col_j -= q * col_t   (V' = V E  =>  Vinv' = E^{-1} Vinv: row_t += q * row_j)
  auto col_op = [&](int j, int t, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < r; ++k) S.at(k, j) -= q * S.at(k, t);
    for (int k = 0; k < c; ++k) V.at(k, j) -= q * V.at(k, t);
    for (int k = 0; k < c; ++k) Vi.at(t, k) += q * Vi.at(j, k);
  };

  int n = std::min(r, c);
  int t = 0;
  for (; t < n; ++t) {
    // smallest absolute nonzero entry in the trailing block
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (S.at(i, j) != 0 &&
            (pi < 0 || mpz_cmpabs(S.at(i, j).get_mpz_t(), S.at(pi, pj).get_mpz_t()) < 0))
          pi = i, pj = j;
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (S.at(i, t) == 0) continue;
        Int q = S.at(i, t) / S.at(t, t);
        row_op(i, t, q);
        if (S.at(i, t) != 0) {  // smaller remainder becomes the pivot
          swap_rows(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (S.at(t, j) == 0) continue;
        Int q = S.at(t, j) / S.at(t, t);
        col_op(j, t, q);
        if (S.at(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility over the trailing block
      bool divides = true;
      for (int i = t + 1; i < r && divides; ++i)
        for (int j = t + 1; j < c && divides; ++j)
          if (S.at(i, j) % S.at(t, t) != 0) {
            row_op(t, i, Int(-1));  // fold row i into row t, then restart
            divides = false;
          }
      if (divides) break;
    }
    if (S.at(t, t) < 0) {
      for (int k = 0; k < c; ++k) S.at(t, k) = -S.at(t, k);
      for (int k = 0; k < r; ++k) U.at(t, k) = -U.at(t, k);
    }
  }
  out.rank = 0;
  for (int i = 0; i < n; ++i)
    if (out.diag(i) != 0) ++out.rank;
  return out;
}

int rank(const IntMatrix& A) { return smith(A).rank; }

Int det(IntMatrix A) {
  int n = A.rows();
  if (n != A.cols()) fail(Err::DimensionMismatch, "determinant of non-square matrix");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (A.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int v = A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j);
        A.at(i, j) = v / prev;  // exact by Bareiss
      }
    prev = A.at(k, k);
  }
  return sign > 0 ? A.at(n - 1, n - 1) : -A.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// submodule operations
// ---------------------------------------------------------------------------

Submodule kernel(const IntMatrix& A) {
  SmithResult s = smith(A);
  int c = A.cols();
  int k = c - s.rank;
  IntMatrix basis(k, c);
  for (int idx = 0; idx < k; ++idx) {
    int j = s.rank + idx;  // zero-diagonal columns of S
    for (int i = 0; i < c; ++i) basis.at(idx, i) = s.V.at(i, j);
  }
  return Submodule{c, basis};
}

Submodule saturate(const Submodule& m) {
  if (m.rank() == 0) return m;
  SmithResult s = smith(m.basis);
  IntMatrix basis(s.rank, m.ambient);
  for (int i = 0; i < s.rank; ++i)
    for (int j = 0; j < m.ambient; ++j) basis.at(i, j) = s.Vinv.at(i, j);
  return Submodule{m.ambient, basis};
}

Submodule intersect(const Submodule& a, const Submodule& b) {
  if (a.ambient != b.ambient) fail(Err::AmbientMismatch, "intersecting submodules of different ambients");
  int ra = a.rank(), rb = b.rank();
  if (ra == 0 || rb == 0) return Submodule{a.ambient, IntMatrix(0, a.ambient)};
  // left kernel of [A; B]: rows (x | y) with x A + y B = 0; then v = x A
  IntMatrix st(ra + rb, a.ambient);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < a.ambient; ++j) st.at(i, j) = a.basis.at(i, j);
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < a.ambient; ++j) st.at(ra + i, j) = b.basis.at(i, j);
  Submodule lk = kernel(st.transpose());
  IntMatrix basis(lk.rank(), a.ambient);
  for (int i = 0; i < lk.rank(); ++i)
    for (int j = 0; j < a.ambient; ++j) {
      Int v = 0;
      for (int k = 0; k < ra; ++k) v += lk.basis.at(i, k) * a.basis.at(k, j);
      basis.at(i, j) = v;
    }
  return Submodule{a.ambient, basis};
}

Membership membership(const IVec& v, const Submodule& m) {
  if (int(v.size()) != m.ambient) fail(Err::DimensionMismatch, "membership vector length");
  SmithResult s = smith(m.basis);  // U B V = S, B: rank x ambient
  // v = y B  <=>  (v V)_i = (y U^{-1})_i d_i and (v V)_i = 0 past the rank
  IVec vV(m.ambient, Int(0));
  for (int j = 0; j < m.ambient; ++j)
    for (int i = 0; i < m.ambient; ++i)
      if (v[i] != 0) vV[j] += v[i] * s.V.at(i, j);
  bool rational = true, integral = true;
  for (int j = 0; j < m.ambient; ++j) {
    if (j < s.rank) {
      if (vV[j] % s.diag(j) != 0) integral = false;
    } else if (vV[j] != 0) {
      rational = false;
    }
  }
  if (!rational) return Membership::no;
  return integral ? Membership::yes : Membership::rational_only;
}

std::optional<IVec> solve_in_rowspan(const IVec& v, const IntMatrix& B) {
  if (int(v.size()) != B.cols()) fail(Err::DimensionMismatch, "solve vector length");
  SmithResult s = smith(B);
  int n = B.cols(), r = B.rows();
  IVec vV(n, Int(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (v[i] != 0) vV[j] += v[i] * s.V.at(i, j);
  IVec w(r, Int(0));
  for (int j = 0; j < n; ++j) {
    if (j < s.rank) {
      if (vV[j] % s.diag(j) != 0) return std::nullopt;
      w[j] = vV[j] / s.diag(j);
    } else if (vV[j] != 0) {
      return std::nullopt;
    }
  }
  // y = w U
  IVec y(r, Int(0));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i)
      if (w[i] != 0) y[j] += w[i] * s.U.at(i, j);
  return y;
}

// ---------------------------------------------------------------------------
// free quotients
// ---------------------------------------------------------------------------

QuotientModel QuotientModel::build(const IntMatrix& cycles, const std::vector<IVec>& relations) {
  QuotientModel q;
  q.N_ = cycles.cols();
  q.K_ = cycles;
  int r = cycles.rows();
  IntMatrix R(int(relations.size()), r);
  for (size_t i = 0; i < relations.size(); ++i) {
    auto y = solve_in_rowspan(relations[i], cycles);
    if (!y) fail(Err::Internal, "quotient relation not inside the cycle lattice");
    R.set_row(int(i), *y);
  }
  SmithResult s = smith(R);
  for (int i = 0; i < s.rank; ++i)
    if (s.diag(i) != 1) fail(Err::Internal, "torsion in a quotient expected to be free");
  q.s_ = s.rank;
  q.rank_ = r - s.rank;
  q.V_ = s.V;
  // basis chains: rows s..r of V^{-1}, pushed down to Z^N through K
  q.lift_rows_ = IntMatrix(q.rank_, q.N_);
  for (int i = 0; i < q.rank_; ++i)
    for (int j = 0; j < q.N_; ++j) {
      Int v = 0;
      for (int k = 0; k < r; ++k) v += s.Vinv.at(q.s_ + i, k) * cycles.at(k, j);
      q.lift_rows_.at(i, j) = v;
    }
  return q;
}

IVec QuotientModel::reduce(const IVec& x) const {
  auto y = solve_in_rowspan(x, K_);
  if (!y) fail(Err::DimensionMismatch, "vector is not a cycle of this model");
  int r = K_.rows();
  IVec out(rank_, Int(0));
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < r; ++i)
      if ((*y)[i] != 0) out[j] += (*y)[i] * V_.at(i, s_ + j);
  return out;
}

IVec QuotientModel::lift(const IVec& coords) const {
  if (int(coords.size()) != rank_) fail(Err::DimensionMismatch, "quotient coordinate length");
  IVec x(N_, Int(0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < N_; ++j)
      if (coords[i] != 0) x[j] += coords[i] * lift_rows_.at(i, j);
  return x;
}

IVec neg(const IVec& v) {
  IVec o(v.size());
  for (size_t i = 0; i < v.size(); ++i) o[i] = -v[i];
  return o;
}

bool is_zero(const IVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Int content(const IVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

}  // namespace zc
