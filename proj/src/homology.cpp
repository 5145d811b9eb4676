#include "zc/homology.hpp"

#include <algorithm>

namespace zc {

std::pair<int, int> CellComplex::oriented(const EdgeRef& e) const {
  auto it = index.find(e);
  if (it == index.end()) fail(Err::Internal, "edge not in complex");
  return it->second;
}

namespace {

CellComplex build_complex(const TranslationSurface& s) {
  CellComplex cx;
  cx.pairs = s.gluing();
  cx.E = int(cx.pairs.size());
  int F = s.num_polygons();
  int V = s.num_classes();
  cx.start_cl.resize(cx.E);
  cx.end_cl.resize(cx.E);
  cx.face_left.resize(cx.E);
  cx.face_right.resize(cx.E);
  for (int k = 0; k < cx.E; ++k) {
    const EdgeRef rep = cx.pairs[k].a;
    const EdgeRef par = cx.pairs[k].b;
    cx.index[rep] = {k, +1};
    cx.index[par] = {k, -1};
    cx.start_cl[k] = s.corner_class(rep.poly, rep.edge);
    cx.end_cl[k] = s.corner_class(rep.poly, rep.edge + 1);
    cx.face_left[k] = rep.poly;
    cx.face_right[k] = par.poly;
  }
  cx.d1 = IntMatrix(V, cx.E);
  for (int k = 0; k < cx.E; ++k) {
    cx.d1.at(cx.end_cl[k], k) += 1;
    cx.d1.at(cx.start_cl[k], k) -= 1;
  }
  cx.d2 = IntMatrix(cx.E, F);
  for (int p = 0; p < F; ++p)
    for (int e = 0; e < s.polygon(p).size(); ++e) {
      auto [k, sg] = cx.oriented(EdgeRef{p, e});
      cx.d2.at(k, p) += sg;
    }
  cx.dual_d = IntMatrix(F, cx.E);
  for (int k = 0; k < cx.E; ++k) {
    cx.dual_d.at(cx.face_left[k], k) += 1;
    cx.dual_d.at(cx.face_right[k], k) -= 1;
  }
  // d1 * d2 = 0
  if (!(cx.d1 * cx.d2).is_zero()) fail(Err::Internal, "boundary of a boundary is nonzero");
  return cx;
}

// counterclockwise dual loop around a vertex class, as a dual-edge chain
IVec vertex_loop_ccw(const TranslationSurface& s, const CellComplex& cx, int cls) {
  IVec loop(cx.E, Int(0));
  for (const CornerRef& c : s.corners_of_class(cls)) {
    // walking ccw we cross edge (poly, v-1), leaving that polygon
    int n = s.polygon(c.poly).size();
    EdgeRef crossed{c.poly, (c.v - 1 + n) % n};
    auto [k, sg] = cx.oriented(crossed);
    // leaving the polygon that traverses e positively means crossing left->right
    loop[k] += (sg > 0) ? Int(-1) : Int(1);
  }
  return loop;
}

}  // namespace

Vec2K HomologyModel::holonomy(const IVec& rel_coords) const {
  if (int(rel_coords.size()) != rel_rank) fail(Err::DimensionMismatch, "holonomy coordinate length");
  Vec2K h{Quad(0), Quad(0)};
  for (int i = 0; i < rel_rank; ++i)
    if (rel_coords[i] != 0) h = h + Quad(Rat(rel_coords[i])) * hol_basis[i];
  return h;
}

Vec2K HomologyModel::holonomy_of_chain(const IVec& edge_chain) const {
  Vec2K h{Quad(0), Quad(0)};
  for (int k = 0; k < cx.E; ++k)
    if (edge_chain[k] != 0) h = h + Quad(Rat(edge_chain[k])) * surf.edge_vector(cx.pairs[k].a);
  return h;
}

Int HomologyModel::pair(const IVec& rel_coords, const IVec& abs_coords) const {
  Int out = 0;
  for (int i = 0; i < rel_rank; ++i)
    for (int j = 0; j < abs_rank; ++j)
      if (rel_coords[i] != 0 && abs_coords[j] != 0) out += rel_coords[i] * pairing.at(i, j) * abs_coords[j];
  return out;
}

Int HomologyModel::pair_chains(const IVec& edge_chain, const IVec& dual_chain) const {
  Int out = 0;
  for (int k = 0; k < cx.E; ++k) out += edge_chain[k] * dual_chain[k];  // sigma_e = +1
  return out;
}

HomologyModel build_homology(const TranslationSurface& s) {
  HomologyModel h;
  h.surf = s;
  h.cx = build_complex(s);
  const CellComplex& cx = h.cx;
  const int E = cx.E, F = s.num_polygons(), V = s.num_classes();
  const auto& marked = s.marked_classes();
  const int nP = int(marked.size());
  const int g = s.invariants().genus;

  // --- relative homology H1(M,P;Z): cycles rel P, modulo face boundaries
  std::vector<int> unmarked;
  for (int c = 0; c < V; ++c)
    if (!s.is_marked_class(c)) unmarked.push_back(c);
  IntMatrix q_d1(int(unmarked.size()), E);
  for (size_t i = 0; i < unmarked.size(); ++i)
    for (int k = 0; k < E; ++k) q_d1.at(int(i), k) = cx.d1.at(unmarked[i], k);
  Submodule rel_cycles = kernel(q_d1);
  std::vector<IVec> face_rels;
  for (int p = 0; p < F; ++p) {
    IVec col(E);
    for (int k = 0; k < E; ++k) col[k] = cx.d2.at(k, p);
    face_rels.push_back(col);
  }
  h.rel = QuotientModel::build(rel_cycles.basis, face_rels);
  h.rel_rank = h.rel.rank();
  if (h.rel_rank != 2 * g + nP - 1) fail(Err::Internal, "relative homology rank mismatch");

  // --- absolute homology H1(M°;Z): dual-graph cycles, modulo loops at unmarked points
  Submodule dual_cycles = kernel(cx.dual_d);
  std::vector<IVec> loop_rels;
  for (int c : unmarked) loop_rels.push_back(vertex_loop_ccw(s, cx, c));
  h.abs = QuotientModel::build(dual_cycles.basis, loop_rels);
  h.abs_rank = h.abs.rank();
  if (h.abs_rank != 2 * g + nP - 1) fail(Err::Internal, "absolute homology rank mismatch");

  // --- intersection pairing (perfect by construction of the two models)
  h.pairing = IntMatrix(h.rel_rank, h.abs_rank);
  for (int i = 0; i < h.rel_rank; ++i)
    for (int j = 0; j < h.abs_rank; ++j) {
      Int v = 0;
      for (int k = 0; k < E; ++k) v += h.rel.lift_rows().at(i, k) * h.abs.lift_rows().at(j, k);
      h.pairing.at(i, j) = v;
    }
  Int dp = det(h.pairing);
  if (!(dp == 1 || dp == -1)) fail(Err::Internal, "intersection pairing is not unimodular");

  // --- holonomy of the basis classes
  h.hol_basis.resize(h.rel_rank);
  for (int i = 0; i < h.rel_rank; ++i) {
    IVec chain = h.rel.lift_rows().row(i);
    h.hol_basis[i] = h.holonomy_of_chain(chain);
  }

  // --- boundary map to 0-chains on P
  h.boundary = IntMatrix(nP, h.rel_rank);
  for (int i = 0; i < h.rel_rank; ++i) {
    IVec chain = h.rel.lift_rows().row(i);
    IVec b = cx.d1.apply(chain);
    for (int pi = 0; pi < nP; ++pi) h.boundary.at(pi, i) = b[marked[pi]];
  }

  // --- J map: pairings with clockwise loops around the marked points
  h.puncture_loops.clear();
  h.Jmat = IntMatrix(nP, h.rel_rank);
  for (int pi = 0; pi < nP; ++pi) {
    IVec loop = neg(vertex_loop_ccw(s, cx, marked[pi]));  // clockwise
    h.puncture_loops.push_back(loop);
    for (int i = 0; i < h.rel_rank; ++i) {
      Int v = 0;
      for (int k = 0; k < E; ++k) v += h.rel.lift_rows().at(i, k) * loop[k];
      h.Jmat.at(pi, i) = v;
    }
  }

  // --- W = ker hol, W0 = W ∩ ker boundary, [k:Q] from holonomy ranks
  // Q-linearize the 2 x rank holonomy matrix: 4 integer rows after clearing denominators
  {
    // common denominator per row keeps entries integral
    IntMatrix hol_lin(4, h.rel_rank);
    Int den(1);
    for (int i = 0; i < h.rel_rank; ++i) {
      den = lcm(den, h.hol_basis[i].x.a().get_den());
      den = lcm(den, h.hol_basis[i].x.b().get_den());
      den = lcm(den, h.hol_basis[i].y.a().get_den());
      den = lcm(den, h.hol_basis[i].y.b().get_den());
    }
    for (int i = 0; i < h.rel_rank; ++i) {
      const Vec2K& hv = h.hol_basis[i];
      Rat e[4] = {hv.x.a(), hv.x.b(), hv.y.a(), hv.y.b()};
      for (int r = 0; r < 4; ++r) {
        Rat scaled = e[r] * Rat(den);
        if (scaled.get_den() != 1) fail(Err::Internal, "denominator clearing failed");
        hol_lin.at(r, i) = scaled.get_num();
      }
    }
    h.W = kernel(hol_lin);

    Submodule bker = kernel(h.boundary);
    h.W0 = intersect(h.W, bker);
    h.W0 = saturate(h.W0);

    // rank of hol on absolute homology (ker boundary) vs on all of H1(M,P)
    IntMatrix on_abs(4, bker.rank());
    for (int j = 0; j < bker.rank(); ++j) {
      IVec col = bker.basis.row(j);
      for (int r = 0; r < 4; ++r) {
        Int v = 0;
        for (int i = 0; i < h.rel_rank; ++i) v += hol_lin.at(r, i) * col[i];
        on_abs.at(r, j) = v;
      }
    }
    int r0 = rank(on_abs);
    int r1 = rank(hol_lin);
    if (r0 % 2 != 0) fail(Err::OddHolonomyRank, "holonomy image of H1(M;Z) has odd rank");
    h.k_degree = r0 / 2;
    h.k_rank_mismatch = (r0 != r1);
  }
  return h;
}

HolonomyFree holonomy_free(const HomologyModel& h) {
  return HolonomyFree{h.W, h.W0, h.W.rank(), h.W0.rank()};
}

int holonomy_degree(const HomologyModel& h) { return h.k_degree; }

IVec puncture_pairing_J(const HomologyModel& h, const IVec& rel_coords) { return h.J(rel_coords); }

}  // namespace zc
