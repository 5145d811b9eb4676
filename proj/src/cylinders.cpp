#include "zc/cylinders.hpp"

#include <algorithm>
#include <map>

namespace zc {

Direction Direction::of(Vec2K w) {
  if (w.is_zero()) fail(Err::DimensionMismatch, "zero direction");
  int s = !w.x.is_zero() ? w.x.sign() : w.y.sign();
  if (s < 0) w = -w;
  return Direction{w};
}

namespace {

const Vec2K kEast{Quad(1), Quad(0)};
const Vec2K kWest{Quad(-1), Quad(0)};
const Vec2K kUp{Quad(0), Quad(1)};

// similarity taking dir to the positive horizontal axis; a true rotation
// whenever |dir| lies in the field
struct Rotation {
  Mat2K R, Rinv;
  bool metric;
  Quad det;
};

Rotation rotation_to_horizontal(const Direction& dir, long field_d) {
  const Quad& x = dir.v.x;
  const Quad& y = dir.v.y;
  Quad n2 = x * x + y * y;
  if (auto lam = sqrt_in_field(n2, combine_field(n2.d(), field_d))) {
    Quad l = *lam;
    Mat2K R{x / l, y / l, -y / l, x / l};
    return {R, R.inverse(), true, Quad(1)};
  }
  Mat2K R{x, y, -y, x};
  return {R, R.inverse(), false, n2};
}

struct Event {
  bool out = false;         // outgoing east ray vs incoming (west-facing) ray
  CornerRef corner;
  bool along_edge = false;  // the ray lies exactly on the corner's outgoing edge
  int sc = -1;              // out: separatrix traced from here; in: separatrix arriving
};

struct ClassEvents {
  std::vector<Event> ev;  // counterclockwise cyclic order
  int find(bool out, const CornerRef& c) const {
    for (int i = 0; i < int(ev.size()); ++i)
      if (ev[i].out == out && ev[i].corner == c) return i;
    fail(Err::Internal, "separatrix event lookup failed");
  }
};

bool is_along(const TranslationSurface& rs, const CornerRef& c) {
  return same_ray(rs.polygon(c.poly).edge_vec(c.v), kEast);
}

// the unique eastbound corner at a regular (unmarked) vertex class
CornerRef find_continuation(const TranslationSurface& rs, int cls) {
  for (const CornerRef& c : rs.corners_of_class(cls)) {
    int n = rs.polygon(c.poly).size();
    Vec2K a = rs.polygon(c.poly).edge_vec(c.v);
    Vec2K b = -rs.polygon(c.poly).edge_vec((c.v - 1 + n) % n);
    if (sector_contains_incl_excl(a, b, kEast)) return c;
  }
  fail(Err::Internal, "no eastbound continuation at a regular vertex");
}

// exact ray tracing state shared by the separatrix, probe and core passes
struct Tracer {
  const TranslationSurface& rs;  // rotated surface
  const CellComplex& cx;         // combinatorics shared with the base surface

  std::vector<std::vector<SubSeg>> chords;  // interior diagram pieces, per polygon
  std::vector<std::vector<int>> chord_sc;   // owning saddle connection of each chord
  std::map<EdgeRef, int> edge_sc;           // on-edge saddle connections

  Tracer(const TranslationSurface& rsurf, const CellComplex& cc)
      : rs(rsurf), cx(cc), chords(rsurf.num_polygons()), chord_sc(rsurf.num_polygons()) {}

  // boundary edge path from corner cs to corner ce of polygon p, as a chain
  void add_boundary_path(IVec& chain, int p, int cs, int ce) const {
    int n = rs.polygon(p).size();
    for (int l = ((cs % n) + n) % n; l != ((ce % n) + n) % n; l = (l + 1) % n) {
      auto [k, sg] = cx.oriented(EdgeRef{p, l});
      chain[k] += sg;
    }
  }

  // corner of the representative edge's start, seen inside e's polygon
  int snap_corner(const EdgeRef& e) const {
    auto [k, sg] = cx.oriented(e);
    (void)k;
    int n = rs.polygon(e.poly).size();
    return sg > 0 ? e.edge : (e.edge + 1) % n;
  }

  struct RayHit {
    bool vertex = false;
    int vertex_idx = -1;
    EdgeRef edge;
    Vec2K point;
  };

  // first boundary hit of X + t*u, t > 0, inside polygon p
  RayHit shoot(int p, const Vec2K& X, const Vec2K& u) const {
    const Polygon& poly = rs.polygon(p);
    int n = poly.size();
    bool have = false;
    Quad best_t(0);
    RayHit hit;
    for (int e = 0; e < n; ++e) {
      Vec2K A = poly.vertex(e), B = poly.vertex(e + 1);
      Vec2K d = B - A;
      Quad den = cross(u, d);
      if (den.is_zero()) continue;
      Vec2K AX = A - X;
      Quad t = cross(AX, d) / den;
      if (t.sign() <= 0) continue;
      Quad s = cross(AX, u) / den;
      if (s.sign() < 0 || (s - Quad(1)).sign() > 0) continue;
      if (!have || t < best_t) {
        have = true;
        best_t = t;
        hit.point = Vec2K{X.x + t * u.x, X.y + t * u.y};
        if (s.is_zero()) {
          hit.vertex = true;
          hit.vertex_idx = e;
        } else if ((s - Quad(1)).is_zero()) {
          hit.vertex = true;
          hit.vertex_idx = (e + 1) % n;
        } else {
          hit.vertex = false;
          hit.edge = EdgeRef{p, e};
        }
      }
    }
    if (!have) fail(Err::Internal, "ray escaped its polygon");
    return hit;
  }

  Vec2K across(const EdgeRef& e, const Vec2K& X) const {
    EdgeRef f = rs.partner(e);
    Vec2K A = rs.polygon(e.poly).vertex(e.edge);
    Vec2K Bp = rs.polygon(f.poly).vertex(f.edge + 1);
    return X + (Bp - A);
  }
};

struct TraceResult {
  bool closed = false;
  SaddleConnection sc;
  CornerRef arrival_corner;  // corner owning the incoming west ray
};

// forward separatrix of an OUT event, traced until a marked vertex class
TraceResult trace_separatrix(Tracer& T, const Event& start, long cap) {
  const TranslationSurface& rs = T.rs;
  TraceResult out;
  SaddleConnection& sc = out.sc;
  sc.chain.assign(T.cx.E, Int(0));
  sc.start_class = rs.corner_class(start.corner);
  sc.length_x = Quad(0);

  CornerRef c = start.corner;
  bool along = start.along_edge;
  long steps = 0;

  for (;;) {
    if (++steps > cap) return out;
    if (along) {
      EdgeRef e{c.poly, c.v};
      int n = rs.polygon(c.poly).size();
      Vec2K A = rs.polygon(c.poly).vertex(c.v);
      Vec2K B = rs.polygon(c.poly).vertex(c.v + 1);
      EdgeRef f = rs.partner(e);
      sc.segs.push_back({c.poly, A, B, true, e});
      sc.segs.push_back({f.poly, rs.polygon(f.poly).vertex(f.edge + 1), rs.polygon(f.poly).vertex(f.edge),
                         true, f});
      T.add_boundary_path(sc.chain, c.poly, c.v, (c.v + 1) % n);
      sc.length_x += (B - A).x;
      int arr_cls = rs.corner_class(c.poly, c.v + 1);
      CornerRef owner{f.poly, f.edge};
      if (rs.is_marked_class(arr_cls)) {
        sc.end_class = arr_cls;
        out.closed = true;
        out.arrival_corner = owner;
        return out;
      }
      c = find_continuation(rs, arr_cls);
      along = is_along(rs, c);
      continue;
    }
    // interior travel from the corner's vertex through polygon interiors
    Vec2K X = rs.polygon(c.poly).vertex(c.v);
    int p = c.poly;
    int entry_snap = c.v;
    for (;;) {
      if (++steps > cap) return out;
      Tracer::RayHit hit = T.shoot(p, X, kEast);
      sc.segs.push_back({p, X, hit.point, false, {}});
      T.chords[p].push_back({p, X, hit.point, false, {}});
      T.chord_sc[p].push_back(-1);  // patched with the sc id by decompose
      sc.length_x += (hit.point - X).x;
      if (hit.vertex) {
        T.add_boundary_path(sc.chain, p, entry_snap, hit.vertex_idx);
        int arr_cls = rs.corner_class(p, hit.vertex_idx);
        if (rs.is_marked_class(arr_cls)) {
          sc.end_class = arr_cls;
          out.closed = true;
          out.arrival_corner = CornerRef{p, hit.vertex_idx};
          return out;
        }
        c = find_continuation(rs, arr_cls);
        along = is_along(rs, c);
        break;
      }
      auto [k, sg] = T.cx.oriented(hit.edge);
      sc.crossings.push_back({k, -sg});
      T.add_boundary_path(sc.chain, p, entry_snap, T.snap_corner(hit.edge));
      EdgeRef f = rs.partner(hit.edge);
      X = T.across(hit.edge, hit.point);
      p = f.poly;
      entry_snap = T.snap_corner(f);
    }
  }
}

struct ProbeResult {
  bool ok = false;
  int sc = -1;
  Quad height;
  Vec2K start;
  int start_poly = -1;
};

// vertical probe from a point on a bottom saddle connection up to the first
// diagram point; fails (ok = false) on any degeneracy, caller retries
ProbeResult probe_up(const Tracer& T, const SubSeg& seg, const Rat& lambda, long cap) {
  const TranslationSurface& rs = T.rs;
  ProbeResult res;
  Vec2K X{seg.p0.x + Quad(lambda) * (seg.p1.x - seg.p0.x), seg.p0.y};
  int p = seg.poly;
  if (seg.on_edge) {
    // start on the side whose polygon sits above the horizontal edge
    if (rs.polygon(seg.poly).edge_vec(seg.edge.edge).x.sign() < 0) {
      Vec2K Y = T.across(seg.edge, X);
      p = rs.partner(seg.edge).poly;
      X = Y;
    }
  }
  res.start = X;
  res.start_poly = p;
  Quad risen(0);
  long steps = 0;
  for (;;) {
    if (++steps > cap) return res;
    bool have = false, graze = false;
    Quad best(0), graze_best(0);
    int best_sc = -1;
    for (size_t i = 0; i < T.chords[p].size(); ++i) {
      const SubSeg& ch = T.chords[p][i];
      Quad dy = ch.p0.y - X.y;
      if (dy.sign() <= 0) continue;
      int cl = (X.x - ch.p0.x).sign(), cr = (ch.p1.x - X.x).sign();
      if (cl < 0 || cr < 0) continue;
      if (cl == 0 || cr == 0) {
        if (!graze || dy < graze_best) graze = true, graze_best = dy;
        continue;
      }
      if (!have || dy < best) {
        have = true;
        best = dy;
        best_sc = T.chord_sc[p][i];
      }
    }
    Tracer::RayHit hit = T.shoot(p, X, kUp);
    Quad dy_edge = hit.point.y - X.y;
    Quad first = have && best < dy_edge ? best : dy_edge;
    if (graze && graze_best <= first) return res;  // grazing a diagram endpoint: retry
    if (have && best < dy_edge) {
      res.ok = true;
      res.sc = best_sc;
      res.height = risen + best;
      return res;
    }
    if (hit.vertex) return res;
    auto it = T.edge_sc.find(hit.edge);
    if (it == T.edge_sc.end()) it = T.edge_sc.find(rs.partner(hit.edge));
    if (it != T.edge_sc.end()) {
      const Polygon& poly = rs.polygon(hit.edge.poly);
      Vec2K A = poly.vertex(hit.edge.edge), B = poly.vertex(hit.edge.edge + 1);
      if ((hit.point - A).is_zero() || (hit.point - B).is_zero()) return res;
      res.ok = true;
      res.sc = it->second;
      res.height = risen + dy_edge;
      return res;
    }
    risen += dy_edge;
    Vec2K Y = T.across(hit.edge, hit.point);
    p = rs.partner(hit.edge).poly;
    X = Y;
  }
}

struct CoreResult {
  bool ok = false;
  IVec dual;   // dual-edge crossing chain in Z^E
  IVec chain;  // homologous edge path in Z^E
  Quad length;
};

// core circle at height theta * h above a bottom point; closed eastbound trace
CoreResult trace_core(const Tracer& T, const Vec2K& bottom_pt, int bottom_poly, const Quad& height,
                      const Rat& theta, long cap) {
  const TranslationSurface& rs = T.rs;
  CoreResult res;
  Vec2K X = bottom_pt;
  int p = bottom_poly;
  Quad remain = Quad(theta) * height;
  long steps = 0;
  while (remain.sign() > 0) {
    if (++steps > cap) return res;
    Tracer::RayHit hit = T.shoot(p, X, kUp);
    Quad dy = hit.point.y - X.y;
    int c = (dy - remain).sign();
    if (c > 0) {
      X = Vec2K{X.x, X.y + remain};
      remain = Quad(0);
      break;
    }
    if (c == 0 || hit.vertex) return res;  // lands on an edge or vertex: retry
    remain -= dy;
    X = T.across(hit.edge, hit.point);
    p = rs.partner(hit.edge).poly;
  }

  res.dual.assign(T.cx.E, Int(0));
  res.chain.assign(T.cx.E, Int(0));
  res.length = Quad(0);
  const Vec2K X0 = X;
  const int p0 = p;
  int entry_snap = -1;
  EdgeRef first_entry;
  for (;;) {
    if (++steps > cap) return res;
    Tracer::RayHit hit = T.shoot(p, X, kEast);
    if (hit.vertex) return res;
    auto [k, sg] = T.cx.oriented(hit.edge);
    res.dual[k] += -sg;
    res.length += (hit.point - X).x;
    if (entry_snap >= 0)
      T.add_boundary_path(res.chain, p, entry_snap, T.snap_corner(hit.edge));
    else
      first_entry = hit.edge;
    EdgeRef f = rs.partner(hit.edge);
    Vec2K Y = T.across(hit.edge, hit.point);
    if (f.poly == p0 && (Y.y - X0.y).is_zero() && (X0.x - Y.x).sign() > 0) {
      Tracer::RayHit probe = T.shoot(f.poly, Y, kEast);
      if ((probe.point.x - X0.x).sign() > 0) {
        res.length += X0.x - Y.x;
        T.add_boundary_path(res.chain, f.poly, T.snap_corner(f), T.snap_corner(first_entry));
        res.ok = true;
        return res;
      }
    }
    X = Y;
    p = f.poly;
    entry_snap = T.snap_corner(f);
  }
}

}  // namespace

DecomposeOutcome decompose(const TranslationSurface& s, const HomologyModel& h, const Direction& dir,
                           long cap) {
  if (combine_field(dir.v.d(), s.field_d()) != s.field_d())
    fail(Err::FieldMismatch, "direction is not expressible over the surface field; rebase first");
  Rotation rot = rotation_to_horizontal(dir, s.field_d());
  TranslationSurface rs = apply_matrix(s, rot.R);

  DecomposeOutcome out;
  out.dec.dir = dir;
  out.dec.rot = rot.R;
  out.dec.rot_inv = rot.Rinv;
  out.dec.metric = rot.metric;
  out.dec.det_rot = rot.det;

  Tracer T(rs, h.cx);

  std::map<int, ClassEvents> events;
  for (int cls : rs.marked_classes()) {
    ClassEvents ce;
    for (const CornerRef& c : rs.corners_of_class(cls)) {
      int n = rs.polygon(c.poly).size();
      Vec2K a = rs.polygon(c.poly).edge_vec(c.v);
      Vec2K b = -rs.polygon(c.poly).edge_vec((c.v - 1 + n) % n);
      bool has_e = sector_contains_incl_excl(a, b, kEast);
      bool has_w = sector_contains_incl_excl(a, b, kWest);
      Event evE{true, c, same_ray(a, kEast), -1};
      Event evW{false, c, false, -1};
      if (has_e && has_w) {
        if (sector_contains_incl_excl(a, kWest, kEast)) {
          ce.ev.push_back(evE);
          ce.ev.push_back(evW);
        } else {
          ce.ev.push_back(evW);
          ce.ev.push_back(evE);
        }
      } else if (has_e) {
        ce.ev.push_back(evE);
      } else if (has_w) {
        ce.ev.push_back(evW);
      }
    }
    if (int(ce.ev.size()) != 2 * rs.cone_multiple(cls))
      fail(Err::Internal, "event count disagrees with the cone angle");
    for (size_t i = 0; i < ce.ev.size(); ++i)
      if (ce.ev[i].out == ce.ev[(i + 1) % ce.ev.size()].out)
        fail(Err::Internal, "separatrix events do not alternate");
    events[cls] = std::move(ce);
  }

  std::vector<SaddleConnection>& scs = out.dec.sc;
  struct Arrival {
    int cls = -1;
    int event_idx = -1;
  };
  std::vector<Arrival> arrivals;
  for (auto& [cls, ce] : events) {
    for (auto& ev : ce.ev) {
      if (!ev.out) continue;
      std::vector<size_t> marks(rs.num_polygons());
      for (int p = 0; p < rs.num_polygons(); ++p) marks[p] = T.chords[p].size();
      TraceResult tr = trace_separatrix(T, ev, cap);
      if (!tr.closed) return out;  // not certified periodic
      int id = int(scs.size());
      ev.sc = id;
      for (int p = 0; p < rs.num_polygons(); ++p)
        for (size_t i = marks[p]; i < T.chords[p].size(); ++i) T.chord_sc[p][i] = id;
      for (const SubSeg& sg : tr.sc.segs)
        if (sg.on_edge) T.edge_sc[sg.edge] = id;
      int idx = events.at(tr.sc.end_class).find(false, tr.arrival_corner);
      arrivals.push_back({tr.sc.end_class, idx});
      scs.push_back(std::move(tr.sc));
    }
  }
  for (size_t i = 0; i < scs.size(); ++i) {
    Event& in_ev = events.at(arrivals[i].cls).ev[arrivals[i].event_idx];
    if (in_ev.sc != -1) fail(Err::Internal, "two separatrices arrive at one event");
    in_ev.sc = int(i);
  }

  // boundary successors: the OUT event adjacent to the terminal IN event,
  // clockwise for the cylinder above, counterclockwise for the one below
  auto neighbor_out = [&](int sc_id, int step) {
    const Arrival& ar = arrivals[sc_id];
    const ClassEvents& ce = events.at(ar.cls);
    int n = int(ce.ev.size());
    const Event& e = ce.ev[((ar.event_idx + step) % n + n) % n];
    if (!e.out || e.sc < 0) fail(Err::Internal, "boundary successor is not an out event");
    return e.sc;
  };

  int nsc = int(scs.size());
  std::vector<int> bot_orbit(nsc, -1), top_orbit(nsc, -1);
  std::vector<std::vector<int>> bots, tops;
  for (int i = 0; i < nsc; ++i) {
    if (bot_orbit[i] >= 0) continue;
    std::vector<int> orb;
    for (int j = i; bot_orbit[j] < 0; j = neighbor_out(j, -1)) {
      bot_orbit[j] = int(bots.size());
      orb.push_back(j);
    }
    bots.push_back(orb);
  }
  for (int i = 0; i < nsc; ++i) {
    if (top_orbit[i] >= 0) continue;
    std::vector<int> orb;
    for (int j = i; top_orbit[j] < 0; j = neighbor_out(j, +1)) {
      top_orbit[j] = int(tops.size());
      orb.push_back(j);
    }
    tops.push_back(orb);
  }

  const std::vector<Rat> params = {Rat(1, 2), Rat(1, 3), Rat(2, 3), Rat(1, 5), Rat(2, 5), Rat(3, 5),
                                   Rat(4, 5), Rat(1, 7), Rat(3, 7), Rat(5, 7), Rat(1, 11), Rat(5, 11)};
  std::vector<bool> top_used(tops.size(), false);
  for (const auto& orb : bots) {
    Cylinder cyl;
    cyl.bottom = orb;
    Quad circ(0);
    for (int id : orb) circ += scs[id].length_x;
    cyl.circumference = circ;

    bool done = false;
    for (const Rat& lam : params) {
      if (done) break;
      ProbeResult pr = probe_up(T, scs[orb[0]].segs[0], lam, cap);
      if (!pr.ok) continue;
      for (const Rat& th : params) {
        CoreResult cr = trace_core(T, pr.start, pr.start_poly, pr.height, th, cap);
        if (!cr.ok) continue;
        if (!(cr.length == circ)) fail(Err::Internal, "core circle length disagrees with the boundary");
        cyl.height = pr.height;
        cyl.modulus = cyl.height / cyl.circumference;
        if (top_used[top_orbit[pr.sc]]) fail(Err::Internal, "top boundary claimed twice");
        top_used[top_orbit[pr.sc]] = true;
        cyl.top = tops[top_orbit[pr.sc]];
        cyl.core_dual = cr.dual;
        cyl.core_abs = h.reduce_dual(cr.dual);
        IVec chain(h.cx.E, Int(0));
        for (int id : cyl.top)
          for (int k = 0; k < h.cx.E; ++k) chain[k] += scs[id].chain[k];
        cyl.core_rel = h.reduce_chain(chain);
        IVec core_rel2 = h.reduce_chain(cr.chain);
        if (core_rel2 != cyl.core_rel) fail(Err::Internal, "core class disagrees with the top boundary");
        done = true;
        break;
      }
    }
    if (!done) fail(Err::Internal, "vertical probe failed for a cylinder");
    Quad tlen(0);
    for (int id : cyl.top) tlen += scs[id].length_x;
    if (!(tlen == circ)) fail(Err::Internal, "top and bottom circumferences disagree");
    out.dec.cyls.push_back(std::move(cyl));
  }
  for (bool b : top_used)
    if (!b) fail(Err::Internal, "unmatched top boundary");

  // exact consistency of the decomposition
  Quad total(0);
  for (const auto& c : out.dec.cyls) total += c.circumference * c.height;
  if (!(total == out.dec.det_rot * s.invariants().area))
    fail(Err::Internal, "cylinder areas do not tile the surface");
  for (const auto& c : out.dec.cyls) {
    Vec2K hol = h.holonomy(c.core_rel);
    if (!cross(hol, dir.v).is_zero()) fail(Err::Internal, "core holonomy not parallel to the direction");
    if (!(out.dec.rot.apply(hol) == Vec2K{c.circumference, Quad(0)}))
      fail(Err::Internal, "core holonomy disagrees with the circumference");
    for (const auto& c2 : out.dec.cyls)
      if (h.pair(c.core_rel, c2.core_abs) != 0) fail(Err::Internal, "core curves intersect");
  }

  out.periodic = true;
  return out;
}

// ---------------------------------------------------------------------------
// multi-twists
// ---------------------------------------------------------------------------

std::optional<MultiTwist> multi_twist(const HomologyModel& h, const CylinderDecomposition& dec,
                                      bool right) {
  if (dec.cyls.empty()) fail(Err::DimensionMismatch, "empty decomposition");
  std::vector<Rat> q;  // modulus ratios m_j / m_0
  for (const auto& c : dec.cyls) {
    Quad r = c.modulus / dec.cyls[0].modulus;
    if (!r.is_rational()) return std::nullopt;
    q.push_back(r.rat());
  }
  Int L(1);
  for (const Rat& x : q) L = lcm(L, Int(x.get_den()));
  Quad mu = Quad(Rat(L)) / dec.cyls[0].modulus;  // least positive mu with mu*m_j in Z
  if (mu.sign() <= 0) fail(Err::Internal, "nonpositive twist parameter");
  Quad mu_signed = right ? mu : -mu;

  MultiTwist tw;
  tw.dec = dec;
  tw.right = right;
  tw.mu = mu;
  tw.mu_signed = mu_signed;
  for (const auto& cyl : dec.cyls) {
    Quad tj = -(mu_signed * cyl.modulus);
    if (!tj.is_rational() || tj.rat().get_den() != 1) fail(Err::Internal, "non-integral twist number");
    tw.t.push_back(tj.rat().get_num());
  }
  Mat2K shear{Quad(1), mu_signed, Quad(0), Quad(1)};
  tw.derivative = dec.rot_inv * shear * dec.rot;

  // x -> x + sum_j i(x, core_abs_j) t_j core_rel_j
  int n = h.rel_rank;
  tw.action_rel = IntMatrix::identity(n);
  for (size_t j = 0; j < dec.cyls.size(); ++j) {
    const Cylinder& cyl = dec.cyls[j];
    IVec pr(n, Int(0));  // pr_i = i(e_i, core_abs_j)
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < h.abs_rank; ++a)
        if (cyl.core_abs[a] != 0) pr[i] += h.pairing.at(i, a) * cyl.core_abs[a];
    for (int i = 0; i < n; ++i) {
      Int w = pr[i] * tw.t[j];
      if (w == 0) continue;
      for (int r = 0; r < n; ++r) tw.action_rel.at(r, i) += w * cyl.core_rel[r];
    }
  }
  return tw;
}

IntMatrix phi_map(const MultiTwist& t) {
  return t.action_rel - IntMatrix::identity(t.action_rel.rows());
}

Submodule core_span(const HomologyModel& h, const CylinderDecomposition& dec) {
  IntMatrix rows(int(dec.cyls.size()), h.rel_rank);
  for (size_t j = 0; j < dec.cyls.size(); ++j)
    for (int i = 0; i < h.rel_rank; ++i) rows.at(int(j), i) = dec.cyls[j].core_rel[i];
  // independent basis of the honest Z-span (no saturation)
  SmithResult s = smith(rows);
  IntMatrix ur = s.U * rows;
  std::vector<IVec> keep;
  for (int i = 0; i < ur.rows(); ++i) {
    IVec r = ur.row(i);
    if (!is_zero(r)) keep.push_back(r);
  }
  Submodule out{h.rel_rank, IntMatrix::from_rows(keep)};
  if (out.basis.rows() == 0) out.basis = IntMatrix(0, h.rel_rank);
  return out;
}

}  // namespace zc
