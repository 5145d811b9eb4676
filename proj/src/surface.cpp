#include "zc/surface.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace zc {

Quad Polygon::twice_area() const {
  Quad s(0);
  for (int i = 0; i < size(); ++i) s += cross(vertex(i), vertex(i + 1));
  return s;
}

// ---------------------------------------------------------------------------
// exact angular predicates
// ---------------------------------------------------------------------------

int angle_class(const Vec2K& a, const Vec2K& x) {
  int c = cross(a, x).sign();
  if (c > 0) return 1;
  if (c < 0) return 3;
  return dot(a, x).sign() > 0 ? 0 : 2;
}

bool same_ray(const Vec2K& u, const Vec2K& v) {
  return cross(u, v).is_zero() && dot(u, v).sign() > 0;
}

bool sector_contains_excl_incl(const Vec2K& a, const Vec2K& b, const Vec2K& u) {
  if (same_ray(u, a)) return false;
  if (same_ray(u, b)) return true;
  int cu = angle_class(a, u), cb = angle_class(a, b);
  if (cu != cb) return cu < cb;
  return cross(u, b).sign() > 0;
}

bool sector_contains_incl_excl(const Vec2K& a, const Vec2K& b, const Vec2K& u) {
  if (same_ray(u, a)) return true;
  if (same_ray(u, b)) return false;
  int cu = angle_class(a, u), cb = angle_class(a, b);
  if (cu != cb) return cu < cb;
  return cross(u, b).sign() > 0;
}

// ---------------------------------------------------------------------------
// polygon simplicity (exact)
// ---------------------------------------------------------------------------

namespace {

int orient(const Vec2K& p, const Vec2K& q, const Vec2K& r) { return cross(q - p, r - p).sign(); }

bool on_segment(const Vec2K& p, const Vec2K& q, const Vec2K& x) {
  // collinear assumed; is x within the closed box [p,q]?
  return dot(x - p, x - q).sign() <= 0;
}

// closed-segment intersection test
bool segments_meet(const Vec2K& a, const Vec2K& b, const Vec2K& c, const Vec2K& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

void check_simple(const Polygon& poly, int idx) {
  int n = poly.size();
  if (n < 3) fail(Err::NonSimplePolygon, "polygon " + std::to_string(idx) + " has fewer than 3 vertices");
  for (int i = 0; i < n; ++i)
    if (poly.edge_vec(i).is_zero())
      fail(Err::NonSimplePolygon, "polygon " + std::to_string(idx) + " has a zero-length edge");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vec2K a = poly.vertex(i), b = poly.vertex(i + 1);
      Vec2K c = poly.vertex(j), d = poly.vertex(j + 1);
      bool adj_fwd = (j == i + 1), adj_bwd = (i == 0 && j == n - 1);
      if (adj_fwd || adj_bwd) {
        // edges share exactly one endpoint; they must not fold back onto each other
        const Vec2K& shared = adj_fwd ? b : a;
        const Vec2K& e1 = adj_fwd ? a : b;
        const Vec2K& e2 = adj_fwd ? d : c;
        if (orient(shared, e1, e2) == 0 && dot(e1 - shared, e2 - shared).sign() > 0)
          fail(Err::NonSimplePolygon, "polygon " + std::to_string(idx) + " folds back at a vertex");
        continue;
      }
      if (segments_meet(a, b, c, d))
        fail(Err::NonSimplePolygon, "polygon " + std::to_string(idx) + " self-intersects");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TranslationSurface
// ---------------------------------------------------------------------------

TranslationSurface TranslationSurface::build(SurfaceData data) {
  TranslationSurface s;
  s.data_ = std::move(data);
  s.validate();
  return s;
}

int TranslationSurface::corner_class(const CornerRef& cr) const {
  CornerRef c{cr.poly, ((cr.v % polygon(cr.poly).size()) + polygon(cr.poly).size()) % polygon(cr.poly).size()};
  auto it = class_of_.find(c);
  if (it == class_of_.end()) fail(Err::DimensionMismatch, "corner reference out of range");
  return it->second;
}

EdgeRef TranslationSurface::partner(const EdgeRef& e) const {
  auto it = partner_.find(e);
  if (it == partner_.end()) fail(Err::NotGlued, "edge has no gluing partner");
  return it->second;
}

CornerRef TranslationSurface::succ_corner(const CornerRef& c) const {
  int n = polygon(c.poly).size();
  EdgeRef prev{c.poly, (c.v - 1 + n) % n};
  return partner_.count(prev) ? CornerRef{partner_.at(prev).poly, partner_.at(prev).edge}
                              : (fail(Err::NotGlued, "unpaired edge in corner walk"), CornerRef{});
}

void TranslationSurface::validate() {
  const auto& polys = data_.polygons;
  if (polys.empty()) fail(Err::NonSimplePolygon, "surface has no polygons");
  if (data_.field_d != 0 && (data_.field_d <= 1 || !is_square_free(data_.field_d)))
    fail(Err::FieldMismatch, "field_d must be 0 or a square-free integer > 1");

  for (int p = 0; p < int(polys.size()); ++p) {
    for (const auto& v : polys[p].v) {
      combine_field(combine_field(v.x.d(), v.y.d()), data_.field_d);
    }
    if (polys[p].twice_area().sign() <= 0)
      fail(Err::OrientationError, "polygon " + std::to_string(p) + " is not counterclockwise");
    check_simple(polys[p], p);
  }

  // gluing: perfect matching with opposite edge vectors
  partner_.clear();
  std::set<EdgeRef> seen;
  for (const auto& pr : data_.gluing) {
    for (const EdgeRef& e : {pr.a, pr.b}) {
      if (e.poly < 0 || e.poly >= int(polys.size()) || e.edge < 0 || e.edge >= polys[e.poly].size())
        fail(Err::NotGlued, "gluing references a nonexistent edge");
      if (!seen.insert(e).second) fail(Err::NotGlued, "edge appears in two gluing pairs");
    }
    if (pr.a == pr.b) fail(Err::NotGlued, "edge glued to itself");
    Vec2K va = polygon(pr.a.poly).edge_vec(pr.a.edge);
    Vec2K vb = polygon(pr.b.poly).edge_vec(pr.b.edge);
    if (!(va == -vb))
      fail(Err::EdgeLengthMismatch, "glued edges are not opposite translates");
    partner_[pr.a] = pr.b;
    partner_[pr.b] = pr.a;
  }
  int total_edges = 0;
  for (const auto& p : polys) total_edges += p.size();
  if (int(seen.size()) != total_edges) fail(Err::NotGlued, "some edges are unglued");

  // connectivity of the polygon adjacency graph
  {
    std::vector<bool> vis(polys.size(), false);
    std::queue<int> q;
    q.push(0);
    vis[0] = true;
    while (!q.empty()) {
      int p = q.front();
      q.pop();
      for (int e = 0; e < polys[p].size(); ++e) {
        int t = partner_.at(EdgeRef{p, e}).poly;
        if (!vis[t]) {
          vis[t] = true;
          q.push(t);
        }
      }
    }
    for (bool b : vis)
      if (!b) fail(Err::Disconnected, "surface is not connected");
  }

  // vertex classes: orbits of the counterclockwise corner walk
  class_of_.clear();
  class_corners_.clear();
  cone_mult_.clear();
  std::vector<CornerRef> all;
  for (int p = 0; p < int(polys.size()); ++p)
    for (int v = 0; v < polys[p].size(); ++v) all.push_back({p, v});
  const Vec2K east{Quad(1), Quad(0)};
  for (const auto& c0 : all) {
    if (class_of_.count(c0)) continue;
    int cls = int(class_corners_.size());
    std::vector<CornerRef> orbit;
    int winding = 0;
    CornerRef c = c0;
    do {
      class_of_[c] = cls;
      orbit.push_back(c);
      int n = polygon(c.poly).size();
      Vec2K a = polygon(c.poly).edge_vec(c.v);
      Vec2K b = -polygon(c.poly).edge_vec((c.v - 1 + n) % n);
      if (same_ray(a, b))
        fail(Err::NonSimplePolygon, "degenerate corner angle");
      if (sector_contains_excl_incl(a, b, east)) ++winding;
      CornerRef nx = succ_corner(c);
      // the walk must be angle-continuous: next outgoing ray equals our closing ray
      if (!(polygon(nx.poly).edge_vec(nx.v) == b))
        fail(Err::Internal, "corner walk lost angular continuity");
      c = nx;
    } while (!(c == c0));
    class_corners_.push_back(orbit);
    if (winding <= 0) fail(Err::Internal, "nonpositive cone angle");
    cone_mult_.push_back(winding);
  }
  n_classes_ = int(class_corners_.size());

  // marked points
  marked_class_.assign(n_classes_, false);
  if (data_.marked.all_vertices) {
    marked_class_.assign(n_classes_, true);
  } else {
    for (const auto& c : data_.marked.corners) marked_class_[corner_class(c)] = true;
  }
  marked_list_.clear();
  for (int i = 0; i < n_classes_; ++i)
    if (marked_class_[i]) marked_list_.push_back(i);
  if (marked_list_.empty()) fail(Err::UnpuncturedSingularity, "marked set P must be nonempty");
  for (int i = 0; i < n_classes_; ++i)
    if (cone_mult_[i] != 1 && !marked_class_[i])
      fail(Err::UnpuncturedSingularity, "cone point outside the marked set");

  // Euler characteristic and invariants
  int V = n_classes_, E = int(data_.gluing.size()), F = int(polys.size());
  int chi = V - E + F;
  if ((2 - chi) % 2 != 0 || chi > 2) fail(Err::Internal, "inconsistent Euler characteristic");
  int g = (2 - chi) / 2;
  int gb = 0;
  for (int m : cone_mult_) gb += m - 1;
  if (gb != 2 * g - 2) fail(Err::Internal, "Gauss-Bonnet violation");

  inv_.genus = g;
  inv_.num_marked = int(marked_list_.size());
  Quad ta(0);
  for (const auto& p : polys) ta += p.twice_area();
  inv_.area = ta / Quad(2);
  inv_.cone_multiples.clear();
  for (int i = 0; i < n_classes_; ++i) inv_.cone_multiples.push_back(cone_mult_[i]);
}

SurfaceInvariants validate(const TranslationSurface& s) { return s.invariants(); }

TranslationSurface apply_matrix(const TranslationSurface& s, const Mat2K& A) {
  if (A.det().is_zero()) fail(Err::SingularMatrix, "apply_matrix with singular matrix");
  long d = combine_field(s.field_d(), A.d());
  SurfaceData out = s.data();
  out.field_d = d;
  for (auto& p : out.polygons)
    for (auto& v : p.v) v = A.apply(v);
  if (A.det().sign() < 0) fail(Err::OrientationError, "apply_matrix must preserve orientation");
  return TranslationSurface::build(std::move(out));
}

TranslationSurface rebase_field(const TranslationSurface& s, long d_new) {
  if (d_new != 0 && (d_new <= 1 || !is_square_free(d_new)))
    fail(Err::NoEmbedding, "target field parameter must be 0 or square-free > 1");
  if (s.field_d() == d_new) return s;
  if (s.field_d() != 0) fail(Err::NoEmbedding, "no embedding between distinct quadratic fields");
  SurfaceData out = s.data();
  out.field_d = d_new;
  return TranslationSurface::build(std::move(out));
}

}  // namespace zc
