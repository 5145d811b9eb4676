#include "zc/flowsim.hpp"

#include <algorithm>
#include <cmath>

namespace zc {

CocycleSpec cocycle_of(const HomologyModel& h, const ZCoverClass& c) {
  CocycleSpec spec;
  spec.inc = h.edge_chain(c.w);
  return spec;
}

const char* recurrence_call_name(RecurrenceCall c) {
  switch (c) {
    case RecurrenceCall::consistent_with_recurrent: return "consistent_with_recurrent";
    case RecurrenceCall::transient: return "transient";
    case RecurrenceCall::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// a point in the open interior of polygon p: centroid when it lies inside,
// otherwise a point pushed off the midpoint of edge 0
Vec2K interior_point(const TranslationSurface& s, int p) {
  const Polygon& poly = s.polygon(p);
  int n = poly.size();
  Vec2K c{Quad(0), Quad(0)};
  for (const auto& v : poly.v) c = c + v;
  Quad inv = Quad(1) / Quad(n);
  c = {inv * c.x, inv * c.y};
  // exact even-odd test with a ray direction missing all vertices
  for (int k = 0;; ++k) {
    Vec2K u{Quad(1), Quad(k)};
    bool degenerate = false;
    int hits = 0;
    for (int e = 0; e < n && !degenerate; ++e) {
      Vec2K A = poly.vertex(e), B = poly.vertex(e + 1);
      if (cross(A - c, u).is_zero() || cross(B - c, u).is_zero()) {
        degenerate = true;  // ray through a vertex: try a steeper one
        break;
      }
      Quad den = cross(u, B - A);
      if (den.is_zero()) continue;
      Quad t = cross(A - c, B - A) / den;
      Quad sp = cross(A - c, u) / den;
      if (t.sign() > 0 && sp.sign() > 0 && (sp - Quad(1)).sign() < 0) ++hits;
    }
    if (degenerate) {
      if (k > 4 * n) break;  // fall through to the probe construction
      continue;
    }
    if (hits % 2 == 1) return c;  // centroid is interior
    break;
  }
  // probe: shoot inward from the midpoint of edge 0 and take the half point
  Vec2K A = poly.vertex(0), B = poly.vertex(1);
  Vec2K mid{(A.x + B.x) / Quad(2), (A.y + B.y) / Quad(2)};
  Vec2K inward = (B - A).perp();  // interior lies left of the edge
  bool have = false;
  Quad best(0);
  for (int e = 1; e < n; ++e) {
    Vec2K C = poly.vertex(e), D = poly.vertex(e + 1);
    Quad den = cross(inward, D - C);
    if (den.is_zero()) continue;
    Quad t = cross(C - mid, D - C) / den;
    Quad sp = cross(C - mid, inward) / den;
    if (t.sign() <= 0 || sp.sign() < 0 || (sp - Quad(1)).sign() > 0) continue;
    if (!have || t < best) have = true, best = t;
  }
  if (!have) fail(Err::Internal, "no interior point found");
  Quad half = best / Quad(2);
  return {mid.x + half * inward.x, mid.y + half * inward.y};
}

struct SheetStats {
  long n = 0, max_abs = 0, returns = 0, crossings = 0;
  long double s1 = 0, st = 0, stt = 0, sn = 0, stn = 0;

  void crossing(double t, long dn) {
    long prev = n;
    n += dn;
    ++crossings;
    if (std::abs(n) > max_abs) max_abs = std::abs(n);
    if (n == 0 && prev != 0) ++returns;
    s1 += 1;
    st += t;
    stt += (long double)t * t;
    sn += n;
    stn += (long double)t * n;
  }
  double slope() const {
    long double den = s1 * stt - st * st;
    if (den <= 0) return 0;
    return double((s1 * stn - st * sn) / den);
  }
};

double predicted_drift_value(const HomologyModel& h, const ZCoverClass& c, double ux, double uy) {
  double hx = c.hol_w.x.to_double(), hy = c.hol_w.y.to_double();
  double area = h.surf.invariants().area.to_double();
  return (hx * uy - hy * ux) / area;
}

}  // namespace

// ---------------------------------------------------------------------------
// exact simulation
// ---------------------------------------------------------------------------

FlowReport simulate(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                    const Vec2K& dir, const Rat& T, const Vec2K* start, std::ostream* trace,
                    long max_crossings) {
  if (combine_field(dir.d(), s.field_d()) != s.field_d())
    fail(Err::FieldMismatch, "direction is not expressible over the surface field; rebase first");
  if (dir.is_zero()) fail(Err::DimensionMismatch, "zero direction");
  CocycleSpec coc = cocycle_of(h, c);

  FlowReport rep;
  rep.exact_mode = true;
  rep.dir_x = dir.x.to_double();
  rep.dir_y = dir.y.to_double();
  rep.predicted_drift = predicted_drift_value(h, c, rep.dir_x, rep.dir_y);

  int p = 0;
  Vec2K X = start ? *start : interior_point(s, 0);
  Quad t_total(0);
  Quad budget{Quad(T)};
  SheetStats st;
  Vec2K disp{Quad(0), Quad(0)};  // developed displacement, for the energy identity
  bool done = false, along = false;
  CornerRef along_c;

  auto param_of = [&](const Vec2K& v) {  // t with v = t * dir (v parallel to dir)
    return dir.x.is_zero() ? v.y / dir.y : v.x / dir.x;
  };
  // continue through a regular vertex class; may enter along-edge travel
  auto pass_through = [&](int cls) {
    for (const CornerRef& cr : s.corners_of_class(cls)) {
      int m = s.polygon(cr.poly).size();
      Vec2K a = s.polygon(cr.poly).edge_vec(cr.v);
      Vec2K b = -s.polygon(cr.poly).edge_vec((cr.v - 1 + m) % m);
      if (sector_contains_incl_excl(a, b, dir)) {
        p = cr.poly;
        X = s.polygon(cr.poly).vertex(cr.v);
        along = same_ray(a, dir);
        along_c = cr;
        return;
      }
    }
    fail(Err::Internal, "no continuation at a regular vertex");
  };

  if (trace) *trace << "t,polygon,sheet\n0,0,0\n";

  while (!done && st.crossings < max_crossings) {
    if (along) {
      // walk edge (along_c.poly, along_c.v) to its far endpoint
      Vec2K ev = s.polygon(along_c.poly).edge_vec(along_c.v);
      Quad dt = param_of(ev);
      if ((t_total + dt - budget).sign() >= 0) {
        Quad rem = budget - t_total;
        disp = disp + Vec2K{rem * dir.x, rem * dir.y};
        t_total = budget;
        break;
      }
      t_total += dt;
      disp = disp + ev;
      int cls = s.corner_class(along_c.poly, along_c.v + 1);
      if (s.is_marked_class(cls)) {
        rep.hit_singularity = true;
        break;
      }
      pass_through(cls);
      continue;
    }
    // exit of the ray X + t * dir from polygon p
    const Polygon& poly = s.polygon(p);
    int n = poly.size();
    bool have = false;
    Quad best_t(0);
    int exit_edge = -1, exit_vertex = -1;
    Vec2K hitp;
    for (int e = 0; e < n; ++e) {
      Vec2K A = poly.vertex(e), B = poly.vertex(e + 1);
      Vec2K d = B - A;
      Quad den = cross(dir, d);
      if (den.is_zero()) continue;
      Vec2K AX = A - X;
      Quad t = cross(AX, d) / den;
      if (t.sign() <= 0) continue;
      Quad sp = cross(AX, dir) / den;
      if (sp.sign() < 0 || (sp - Quad(1)).sign() > 0) continue;
      if (!have || t < best_t) {
        have = true;
        best_t = t;
        hitp = Vec2K{X.x + t * dir.x, X.y + t * dir.y};
        if (sp.is_zero()) {
          exit_vertex = e;
          exit_edge = -1;
        } else if ((sp - Quad(1)).is_zero()) {
          exit_vertex = (e + 1) % n;
          exit_edge = -1;
        } else {
          exit_edge = e;
          exit_vertex = -1;
        }
      }
    }
    if (!have) fail(Err::Internal, "flow ray escaped its polygon");

    if ((t_total + best_t - budget).sign() >= 0) {
      Quad rem = budget - t_total;
      disp = disp + Vec2K{rem * dir.x, rem * dir.y};
      t_total = budget;
      break;
    }
    t_total += best_t;
    disp = disp + (hitp - X);

    if (exit_vertex >= 0) {
      int cls = s.corner_class(p, exit_vertex);
      if (s.is_marked_class(cls)) {
        rep.hit_singularity = true;
        break;
      }
      pass_through(cls);
      continue;
    }

    EdgeRef er{p, exit_edge};
    auto [k, sg] = h.cx.oriented(er);
    long dn = long(Int(Int(-sg) * coc.inc[k]).get_si());
    st.crossing(t_total.to_double(), dn);
    if (trace) *trace << t_total.to_double() << "," << p << "," << st.n << "\n";

    EdgeRef f = s.partner(er);
    Vec2K A = poly.vertex(er.edge);
    Vec2K Bp = s.polygon(f.poly).vertex(f.edge + 1);
    X = hitp + (Bp - A);
    p = f.poly;
  }
  if (st.crossings >= max_crossings) rep.budget_exhausted = true;

  // exact energy identity: developed displacement equals t * dir
  if (!rep.hit_singularity && !rep.budget_exhausted) {
    Vec2K want{t_total * dir.x, t_total * dir.y};
    if (!(disp == want)) fail(Err::Internal, "exact flow lost the energy identity");
  }

  rep.total_time = t_total.to_double();
  rep.crossings = st.crossings;
  rep.max_abs_sheet = st.max_abs;
  rep.returns_to_zero = st.returns;
  rep.final_sheet = st.n;
  rep.drift_slope = st.slope();
  return rep;
}

// ---------------------------------------------------------------------------
// float simulation
// ---------------------------------------------------------------------------

FlowReport simulate_float(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                          double dir_x, double dir_y, double T, double eps, std::ostream* trace,
                          long max_crossings) {
  double norm = std::hypot(dir_x, dir_y);
  if (!(norm > 0)) fail(Err::DimensionMismatch, "zero direction");
  double ux = dir_x / norm, uy = dir_y / norm;

  CocycleSpec coc = cocycle_of(h, c);

  // flatten geometry to doubles
  struct FEdge {
    double ax, ay, dx, dy;
    double offx, offy;  // crossing translation
    int to_poly;
    long dn;
    int start_cls, end_cls;
  };
  std::vector<std::vector<FEdge>> polys(s.num_polygons());
  for (int p = 0; p < s.num_polygons(); ++p) {
    const Polygon& poly = s.polygon(p);
    for (int e = 0; e < poly.size(); ++e) {
      EdgeRef er{p, e};
      EdgeRef f = s.partner(er);
      auto [k, sg] = h.cx.oriented(er);
      Vec2K A = poly.vertex(e), B = poly.vertex(e + 1);
      Vec2K Bp = s.polygon(f.poly).vertex(f.edge + 1);
      FEdge fe;
      fe.ax = A.x.to_double();
      fe.ay = A.y.to_double();
      fe.dx = B.x.to_double() - fe.ax;
      fe.dy = B.y.to_double() - fe.ay;
      fe.offx = Bp.x.to_double() - fe.ax;
      fe.offy = Bp.y.to_double() - fe.ay;
      fe.to_poly = f.poly;
      fe.dn = long(Int(Int(-sg) * coc.inc[k]).get_si());
      fe.start_cls = s.corner_class(p, e);
      fe.end_cls = s.corner_class(p, e + 1);
      polys[p].push_back(fe);
    }
  }

  FlowReport rep;
  rep.exact_mode = false;
  rep.dir_x = ux;
  rep.dir_y = uy;
  rep.predicted_drift = predicted_drift_value(h, c, ux, uy);

  Vec2K start = interior_point(s, 0);
  double x = start.x.to_double(), y = start.y.to_double();
  int p = 0;
  double t_total = 0;
  SheetStats st;
  if (trace) *trace << "t,polygon,sheet\n0,0,0\n";

  while (st.crossings < max_crossings) {
    const auto& edges = polys[p];
    double best_t = 0;
    int exit_e = -1;
    for (size_t e = 0; e < edges.size(); ++e) {
      const FEdge& fe = edges[e];
      double den = ux * fe.dy - uy * fe.dx;
      if (std::abs(den) < 1e-15) continue;
      double rx = fe.ax - x, ry = fe.ay - y;
      double t = (rx * fe.dy - ry * fe.dx) / den;
      double sp = (rx * uy - ry * ux) / den;
      if (t <= 1e-12 || sp < -1e-12 || sp > 1 + 1e-12) continue;
      if (exit_e < 0 || t < best_t) {
        best_t = t;
        exit_e = int(e);
      }
    }
    if (exit_e < 0) {
      rep.hit_singularity = true;  // numerically cornered
      break;
    }
    if (t_total + best_t >= T) {
      t_total = T;
      break;
    }
    t_total += best_t;
    const FEdge& fe = edges[exit_e];
    double hx = x + best_t * ux, hy = y + best_t * uy;
    // vertex guard
    double d0 = std::hypot(hx - fe.ax, hy - fe.ay);
    double d1 = std::hypot(hx - (fe.ax + fe.dx), hy - (fe.ay + fe.dy));
    if (d0 < eps || d1 < eps) {
      int cls = d0 < d1 ? fe.start_cls : fe.end_cls;
      if (s.is_marked_class(cls)) {
        rep.hit_singularity = true;
        break;
      }
    }
    st.crossing(t_total, fe.dn);
    if (trace) *trace << t_total << "," << p << "," << st.n << "\n";
    x = hx + fe.offx;
    y = hy + fe.offy;
    p = fe.to_poly;
  }
  if (st.crossings >= max_crossings) rep.budget_exhausted = true;

  rep.total_time = t_total;
  rep.crossings = st.crossings;
  rep.max_abs_sheet = st.max_abs;
  rep.returns_to_zero = st.returns;
  rep.final_sheet = st.n;
  rep.drift_slope = st.slope();
  return rep;
}

// ---------------------------------------------------------------------------
// first-return interval exchange on the union of transversal edges
// ---------------------------------------------------------------------------

ReturnIET first_return_iet(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                           const Direction& dir) {
  if (combine_field(dir.v.d(), s.field_d()) != s.field_d())
    fail(Err::FieldMismatch, "direction is not expressible over the surface field; rebase first");
  // rotate the direction horizontal, as in decompose
  const Quad& dx = dir.v.x;
  const Quad& dy = dir.v.y;
  Quad n2 = dx * dx + dy * dy;
  Mat2K R{dx, dy, -dy, dx};
  if (auto lam = sqrt_in_field(n2, combine_field(n2.d(), s.field_d())))
    R = Mat2K{dx / *lam, dy / *lam, -dy / *lam, dx / *lam};
  TranslationSurface rs = apply_matrix(s, R);

  IVec w_chain = h.edge_chain(c.w);

  ReturnIET out;
  out.dir = dir;
  out.rot = R;
  Vec2K hol_rot = R.apply(h.holonomy(c.w));
  out.hol_perp = -hol_rot.y;

  // section: all non-horizontal edge pairs, parameterized by height
  std::vector<int> in_section(h.cx.E, 0);
  for (int k = 0; k < h.cx.E; ++k) {
    EdgeRef rep = h.cx.pairs[k].a;
    Vec2K d = rs.polygon(rep.poly).edge_vec(rep.edge);
    if (d.y.is_zero()) continue;
    in_section[k] = 1;
    Vec2K A = rs.polygon(rep.poly).vertex(rep.edge);
    Vec2K B = rs.polygon(rep.poly).vertex(rep.edge + 1);
    Quad lo = A.y < B.y ? A.y : B.y;
    Quad hi = A.y < B.y ? B.y : A.y;
    out.section.push_back({k, lo, hi});
  }
  if (out.section.empty()) fail(Err::NotExtractable, "no transversal edges in this direction");

  out.total_length = Quad(0);
  out.sum_mu_f = Quad(0);

  // every section element is parameterized by height in its REPRESENTATIVE
  // edge's chart; entry-side work below converts to and from that chart
  for (const auto& se : out.section) {
    EdgeRef rep = h.cx.pairs[se.pair].a;
    // the flow crosses the edge into the polygon on its east side
    Vec2K dvec = rs.polygon(rep.poly).edge_vec(rep.edge);
    EdgeRef entry = dvec.y.sign() < 0 ? rep : rs.partner(rep);
    int q = entry.poly;
    const Polygon& poly = rs.polygon(q);
    // height offset from the entry chart to the rep chart (0 when entry == rep)
    Quad to_rep(0);
    if (!(entry == rep)) {
      Vec2K A0 = poly.vertex(entry.edge);
      Vec2K Bp0 = rs.polygon(rep.poly).vertex(rep.edge + 1);
      to_rep = (Bp0 - A0).y;  // across() translation for the entry edge
    }
    Vec2K A = poly.vertex(entry.edge);
    Vec2K B = poly.vertex(entry.edge + 1);
    Vec2K ed = B - A;
    Quad elo = A.y < B.y ? A.y : B.y;
    Quad ehi = A.y < B.y ? B.y : A.y;
    // breakpoints in the entry chart: vertex heights of q inside the range
    std::vector<Quad> cuts{elo, ehi};
    for (const auto& v : poly.v)
      if ((v.y - elo).sign() > 0 && (ehi - v.y).sign() > 0) cuts.push_back(v.y);
    std::sort(cuts.begin(), cuts.end(), [](const Quad& a, const Quad& b) { return a < b; });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto point_at_height = [&](const Quad& yy) {
      Quad tpar = (yy - A.y) / ed.y;
      return Vec2K{A.x + tpar * ed.x, yy};
    };

    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      Quad mid = (cuts[i] + cuts[i + 1]) / Quad(2);
      Vec2K X = point_at_height(mid);
      // one horizontal step through polygon q
      bool have = false;
      Quad best_t(0);
      int exit_e = -1;
      for (int e = 0; e < poly.size(); ++e) {
        if (e == entry.edge) continue;
        Vec2K C = poly.vertex(e), D = poly.vertex(e + 1);
        Vec2K dd = D - C;
        Quad den = cross(Vec2K{Quad(1), Quad(0)}, dd);
        if (den.is_zero()) continue;
        Vec2K CX = C - X;
        Quad t = cross(CX, dd) / den;
        if (t.sign() <= 0) continue;
        Quad sp = cross(CX, Vec2K{Quad(1), Quad(0)}) / den;
        if (sp.sign() < 0 || (sp - Quad(1)).sign() > 0) continue;
        if (!have || t < best_t) {
          have = true;
          best_t = t;
          exit_e = e;
        }
      }
      if (!have || exit_e < 0) fail(Err::NotExtractable, "return step found no exit");

      EdgeRef xe{q, exit_e};
      auto [k2, sg2] = h.cx.oriented(xe);
      // height offset from the exit chart to the destination's rep chart
      Quad dst_shift(0);
      if (sg2 < 0) {
        EdgeRef f = rs.partner(xe);
        Vec2K C = poly.vertex(exit_e);
        Vec2K Bp = rs.polygon(f.poly).vertex(f.edge + 1);
        dst_shift = (Bp - C).y;
      }
      IETPiece piece;
      piece.src_pair = se.pair;
      piece.y0 = cuts[i] + to_rep;
      piece.y1 = cuts[i + 1] + to_rep;
      piece.dst_pair = k2;
      piece.dst_y0 = cuts[i] + dst_shift;
      piece.dst_y1 = cuts[i + 1] + dst_shift;
      piece.f = Int(-sg2) * w_chain[k2];
      out.pieces.push_back(piece);
      Quad mu = cuts[i + 1] - cuts[i];
      out.sum_mu_f += mu * Quad(Rat(piece.f));
    }
    out.total_length += se.yhi - se.ylo;
  }
  std::sort(out.pieces.begin(), out.pieces.end(), [](const IETPiece& a, const IETPiece& b) {
    if (a.src_pair != b.src_pair) return a.src_pair < b.src_pair;
    return a.y0 < b.y0;
  });
  // adjacent pieces translating by the same amount onto the same edge are one
  // continuity interval
  std::vector<IETPiece> merged;
  for (const auto& p : out.pieces) {
    if (!merged.empty()) {
      IETPiece& q = merged.back();
      if (q.src_pair == p.src_pair && q.dst_pair == p.dst_pair && q.y1 == p.y0 &&
          q.dst_y1 == p.dst_y0 && q.f == p.f) {
        q.y1 = p.y1;
        q.dst_y1 = p.dst_y1;
        continue;
      }
    }
    merged.push_back(p);
  }
  out.pieces = std::move(merged);

  // the pieces must exchange the section: image intervals tile it exactly
  {
    std::map<int, std::vector<std::pair<Quad, Quad>>> img;
    for (const auto& pc : out.pieces) img[pc.dst_pair].push_back({pc.dst_y0, pc.dst_y1});
    for (const auto& se : out.section) {
      auto it = img.find(se.pair);
      if (it == img.end()) fail(Err::NotExtractable, "section element missed by the exchange");
      auto& v = it->second;
      std::sort(v.begin(), v.end(),
                [](const std::pair<Quad, Quad>& a, const std::pair<Quad, Quad>& b) { return a.first < b.first; });
      Quad cur = se.ylo;
      for (auto& iv : v) {
        if (!(iv.first == cur)) fail(Err::NotExtractable, "image intervals do not tile the section");
        cur = iv.second;
      }
      if (!(cur == se.yhi)) fail(Err::NotExtractable, "image intervals do not cover the section");
    }
  }

  // permutation: position of each piece's image in the global image order
  {
    std::vector<int> order(out.pieces.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const IETPiece &A = out.pieces[a], &B = out.pieces[b];
      if (A.dst_pair != B.dst_pair) return A.dst_pair < B.dst_pair;
      return A.dst_y0 < B.dst_y0;
    });
    out.permutation.assign(out.pieces.size(), 0);
    for (size_t slot = 0; slot < order.size(); ++slot) out.permutation[order[slot]] = int(slot);
  }

  // exact identity: sum mu(I_j) f_j = hol along the perpendicular
  if (!(out.sum_mu_f == out.hol_perp)) fail(Err::Internal, "return-map identity violated");
  return out;
}

RecurrenceSummary recurrence_verdict(const std::vector<FlowReport>& reports, double slope_tol,
                                     long min_returns, double match_tol) {
  RecurrenceSummary sum;
  std::vector<const FlowReport*> usable;
  for (const auto& r : reports) {
    if (r.excluded_periodic || r.hit_singularity) {
      ++sum.excluded;
      continue;
    }
    usable.push_back(&r);
  }
  sum.used = int(usable.size());
  if (sum.used < 3) {
    sum.note = "need at least 3 non-periodic sampled directions";
    return sum;
  }
  bool all_recurrent = true, all_transient = true;
  long minret = usable[0]->returns_to_zero;
  double maxslope = 0;
  for (auto* r : usable) {
    maxslope = std::max(maxslope, std::abs(r->drift_slope));
    minret = std::min(minret, r->returns_to_zero);
    bool rec = std::abs(r->drift_slope) < slope_tol && r->returns_to_zero >= min_returns;
    bool tra = std::abs(r->predicted_drift) > slope_tol &&
               std::abs(r->drift_slope - r->predicted_drift) <= match_tol * std::abs(r->predicted_drift);
    all_recurrent = all_recurrent && rec;
    all_transient = all_transient && tra;
  }
  sum.max_abs_slope = maxslope;
  sum.min_returns = minret;
  if (all_recurrent) {
    sum.call = RecurrenceCall::consistent_with_recurrent;
    sum.note = "heuristic evidence only: drifts vanish and returns accumulate";
  } else if (all_transient) {
    sum.call = RecurrenceCall::transient;
    sum.note = "heuristic evidence only: drifts match the nonzero prediction";
  } else {
    sum.note = "mixed signals; not classified";
  }
  return sum;
}

}  // namespace zc
