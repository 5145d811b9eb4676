#include "zc/automorph.hpp"

#include <algorithm>

namespace zc {

namespace {

// signed permutation action on edge chains induced by the polygon map
struct EdgeAction {
  std::vector<int> image;  // pair k -> pair image
  std::vector<int> sign;
};

EdgeAction edge_action(const TranslationSurface& s, const HomologyModel& h,
                       const std::vector<PolygonMapEntry>& pmap) {
  std::vector<const PolygonMapEntry*> by_src(s.num_polygons(), nullptr);
  for (const auto& e : pmap) {
    if (e.src < 0 || e.src >= s.num_polygons() || e.dst < 0 || e.dst >= s.num_polygons())
      fail(Err::GeometryMismatch, "polygon map references a nonexistent polygon");
    if (by_src[e.src]) fail(Err::GeometryMismatch, "polygon map lists a source twice");
    by_src[e.src] = &e;
  }
  for (auto* p : by_src)
    if (!p) fail(Err::GeometryMismatch, "polygon map is not total");

  auto image_ref = [&](const EdgeRef& e) {
    const PolygonMapEntry& m = *by_src[e.poly];
    int n = s.polygon(m.dst).size();
    return EdgeRef{m.dst, ((e.edge + m.vshift) % n + n) % n};
  };
  // gluing must be preserved
  for (const auto& pr : s.gluing()) {
    EdgeRef ia = image_ref(pr.a), ib = image_ref(pr.b);
    if (!(s.partner(ia) == ib)) fail(Err::GluingNotPreserved, "image edges are not glued");
  }
  EdgeAction act;
  act.image.resize(h.cx.E);
  act.sign.resize(h.cx.E);
  for (int k = 0; k < h.cx.E; ++k) {
    EdgeRef rep = h.cx.pairs[k].a;
    EdgeRef img = image_ref(rep);
    auto [k2, sg] = h.cx.oriented(img);
    act.image[k] = k2;
    act.sign[k] = sg;
  }
  return act;
}

IntMatrix action_on_model(const QuotientModel& q, const EdgeAction& act, int E) {
  int n = q.rank();
  IntMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    IVec chain = q.lift_rows().row(i);
    IVec img(E, Int(0));
    for (int k = 0; k < E; ++k)
      if (chain[k] != 0) img[act.image[k]] += Int(act.sign[k]) * chain[k];
    IVec coords = q.reduce(img);
    for (int r = 0; r < n; ++r) out.at(r, i) = coords[r];
  }
  return out;
}

}  // namespace

AffineAuto build_auto(const TranslationSurface& s, const HomologyModel& h, const Mat2K& derivative,
                      const std::vector<PolygonMapEntry>& pmap) {
  Quad dt = derivative.det();
  if (dt.is_zero()) fail(Err::SingularMatrix, "automorphism derivative is singular");

  // geometry: D * (vertices of src) + offset must equal the image polygon
  for (const auto& m : pmap) {
    const Polygon& P = s.polygon(m.src);
    const Polygon& Q = s.polygon(m.dst);
    if (P.size() != Q.size()) fail(Err::GeometryMismatch, "mapped polygons differ in size");
    for (int i = 0; i < P.size(); ++i) {
      Vec2K img = derivative.apply(P.vertex(i)) + m.offset;
      if (!(img == Q.vertex(i + m.vshift)))
        fail(Err::GeometryMismatch, "polygon image does not match the target polygon");
    }
  }

  AffineAuto f;
  f.derivative = derivative;
  f.det_sign = dt.sign();
  f.poly_map = pmap;

  EdgeAction act = edge_action(s, h, pmap);
  f.action_rel = action_on_model(h.rel, act, h.cx.E);
  // dual edges transform with an extra orientation sign
  EdgeAction dual_act = act;
  for (auto& sg : dual_act.sign) sg *= f.det_sign;
  f.action_abs = action_on_model(h.abs, dual_act, h.cx.E);

  // induced permutation of the marked classes
  const auto& marked = s.marked_classes();
  f.rho.resize(marked.size());
  std::vector<const PolygonMapEntry*> by_src(s.num_polygons(), nullptr);
  for (const auto& e : pmap) by_src[e.src] = &e;
  for (size_t i = 0; i < marked.size(); ++i) {
    CornerRef c = s.corners_of_class(marked[i])[0];
    const PolygonMapEntry& m = *by_src[c.poly];
    int n = s.polygon(m.dst).size();
    int cls = s.corner_class(m.dst, ((c.v + m.vshift) % n + n) % n);
    auto it = std::find(marked.begin(), marked.end(), cls);
    if (it == marked.end()) fail(Err::GeometryMismatch, "marked point mapped to an unmarked class");
    f.rho[i] = int(it - marked.begin());
  }

  // exact invariants: hol equivariance and pairing equivariance up to det sign
  for (int i = 0; i < h.rel_rank; ++i) {
    IVec e(h.rel_rank, Int(0));
    e[i] = 1;
    Vec2K lhs = h.holonomy(f.action_rel.apply(e));
    Vec2K rhs = derivative.apply(h.hol_basis[i]);
    if (!(lhs == rhs)) fail(Err::GeometryMismatch, "holonomy equivariance fails");
  }
  IntMatrix g = f.action_rel.transpose() * h.pairing * (*f.action_abs);
  IntMatrix want = h.pairing;
  if (f.det_sign < 0) want = IntMatrix(h.rel_rank, h.abs_rank) - want;
  if (!(g == want)) fail(Err::GeometryMismatch, "pairing equivariance fails");

  return f;
}

AffineAuto auto_of_twist(const HomologyModel& h, const MultiTwist& t) {
  AffineAuto f;
  f.derivative = t.derivative;
  f.det_sign = 1;
  f.action_rel = t.action_rel;
  f.rho.resize(h.num_marked());
  for (size_t i = 0; i < f.rho.size(); ++i) f.rho[i] = int(i);  // twists fix the boundary graph
  f.from_multitwist = true;
  return f;
}

AffineAuto compose(const HomologyModel& h, const AffineAuto& f, const AffineAuto& g) {
  AffineAuto c;
  c.derivative = f.derivative * g.derivative;
  c.det_sign = f.det_sign * g.det_sign;
  c.action_rel = f.action_rel * g.action_rel;
  if (f.action_abs && g.action_abs) c.action_abs = (*f.action_abs) * (*g.action_abs);
  c.rho.resize(h.num_marked());
  for (size_t i = 0; i < c.rho.size(); ++i) c.rho[i] = f.rho[g.rho[i]];
  c.from_multitwist = f.from_multitwist && g.from_multitwist;
  return c;
}

namespace {

// coordinates of f_* restricted to a saturated submodule, in its basis
IntMatrix restrict_to(const IntMatrix& action, const Submodule& sub) {
  int r = sub.rank();
  IntMatrix out(r, r);
  for (int i = 0; i < r; ++i) {
    IVec v = sub.basis.row(i);
    IVec img = action.apply(v);
    auto y = solve_in_rowspan(img, sub.basis);
    if (!y) fail(Err::SubspaceNotPreserved, "subspace is not preserved by the action");
    for (int j = 0; j < r; ++j) out.at(j, i) = (*y)[j];
  }
  return out;
}

}  // namespace

RestrictedActions restrict_actions(const HomologyModel& h, const AffineAuto& f) {
  RestrictedActions out;
  out.psi = restrict_to(f.action_rel, h.W);
  out.psi0 = restrict_to(f.action_rel, h.W0);
  // psi0 must be the W0-block of psi under the inclusion
  WSplit sp = w_split(h);
  for (int i = 0; i < h.W0.rank(); ++i) {
    IVec w0_in_w = sp.w0_in_w.row(i);
    IVec lhs = out.psi.apply(w0_in_w);
    IVec rhs(h.W.rank(), Int(0));
    for (int j = 0; j < h.W0.rank(); ++j)
      for (int k = 0; k < h.W.rank(); ++k) rhs[k] += out.psi0.at(j, i) * sp.w0_in_w.at(j, k);
    if (lhs != rhs) fail(Err::Internal, "psi0 is not the restriction of psi");
  }
  return out;
}

WSplit w_split(const HomologyModel& h) {
  WSplit sp;
  int rw = h.W.rank(), r0 = h.W0.rank();
  sp.w0_in_w = IntMatrix(r0, rw);
  for (int i = 0; i < r0; ++i) {
    auto y = solve_in_rowspan(h.W0.basis.row(i), h.W.basis);
    if (!y) fail(Err::Internal, "W0 does not sit inside W");
    sp.w0_in_w.set_row(i, *y);
  }
  // complement: quotient basis of Z^rw by the rows of w0_in_w (free since W0 saturated in W)
  QuotientModel q = QuotientModel::build(IntMatrix::identity(rw), [&] {
    std::vector<IVec> rels;
    for (int i = 0; i < r0; ++i) rels.push_back(sp.w0_in_w.row(i));
    return rels;
  }());
  sp.complement = q.lift_rows();
  return sp;
}

IntMatrix h_f_map(const HomologyModel& h, const AffineAuto& f) {
  RestrictedActions ra = restrict_actions(h, f);
  if (!(ra.psi0 == IntMatrix::identity(h.W0.rank())) || !f.rho_is_identity())
    fail(Err::NotInKernels, "h_f needs psi0 = I and trivial puncture action");
  WSplit sp = w_split(h);
  int r0 = h.W0.rank(), rc = h.W.rank() - r0;
  IntMatrix out(r0, rc);
  for (int i = 0; i < rc; ++i) {
    IVec w = sp.complement.row(i);          // in W coordinates
    IVec img = ra.psi.apply(w);
    for (int k = 0; k < h.W.rank(); ++k) img[k] -= w[k];
    auto y = solve_in_rowspan(img, sp.w0_in_w);  // f_*(w) - w must land in W0
    if (!y) fail(Err::NotInKernels, "f_*(w) - w escapes W0");
    for (int j = 0; j < r0; ++j) out.at(j, i) = (*y)[j];
  }
  return out;
}

Submodule fixed_subspace(const HomologyModel& h, const AffineAuto& f, int sign) {
  RestrictedActions ra = restrict_actions(h, f);
  int rw = h.W.rank();
  IntMatrix m = ra.psi;
  for (int i = 0; i < rw; ++i) m.at(i, i) -= sign;
  Submodule ker_w = kernel(m);  // in W coordinates, saturated
  IntMatrix rows(ker_w.rank(), h.rel_rank);
  for (int i = 0; i < ker_w.rank(); ++i) {
    IVec v(h.rel_rank, Int(0));
    for (int k = 0; k < rw; ++k)
      if (ker_w.basis.at(i, k) != 0)
        for (int j = 0; j < h.rel_rank; ++j) v[j] += ker_w.basis.at(i, k) * h.W.basis.at(k, j);
    rows.set_row(i, v);
  }
  return Submodule{h.rel_rank, rows};
}

}  // namespace zc
