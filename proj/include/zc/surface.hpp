#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "zc/quad.hpp"

namespace zc {

struct Polygon {
  std::vector<Vec2K> v;  // counterclockwise
  int size() const { return int(v.size()); }
  const Vec2K& vertex(int i) const { return v[((i % size()) + size()) % size()]; }
  Vec2K edge_vec(int i) const { return vertex(i + 1) - vertex(i); }
  Quad twice_area() const;
};

struct EdgeRef {
  int poly = -1;
  int edge = -1;
  bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
  bool operator<(const EdgeRef& o) const { return poly != o.poly ? poly < o.poly : edge < o.edge; }
};

struct GluePair {
  EdgeRef a, b;
};

struct CornerRef {
  int poly = -1;
  int v = -1;
  bool operator==(const CornerRef& o) const { return poly == o.poly && v == o.v; }
  bool operator<(const CornerRef& o) const { return poly != o.poly ? poly < o.poly : v < o.v; }
};

enum class LatticeFlag { yes, no, unknown };

struct SurfaceMetadata {
  std::string name;
  LatticeFlag veech_group_is_lattice = LatticeFlag::unknown;
};

// marked points: every vertex class, or the classes of an explicit corner list
struct MarkedSpec {
  bool all_vertices = true;
  std::vector<CornerRef> corners;
};

struct SurfaceData {
  long field_d = 0;
  std::vector<Polygon> polygons;
  std::vector<GluePair> gluing;
  MarkedSpec marked;
  SurfaceMetadata metadata;
};

struct SurfaceInvariants {
  int genus = 0;
  int num_marked = 0;
  Quad area;
  std::vector<int> cone_multiples;  // total angle / 2pi per vertex class, class order
};

// Validated, immutable polygonal presentation of a compact translation
// surface with marked points. Construction runs the full validator.
class TranslationSurface {
 public:
  TranslationSurface() = default;  // empty placeholder; real instances come from build()
  static TranslationSurface build(SurfaceData data);

  long field_d() const { return data_.field_d; }
  const std::vector<Polygon>& polygons() const { return data_.polygons; }
  const Polygon& polygon(int i) const { return data_.polygons[i]; }
  int num_polygons() const { return int(data_.polygons.size()); }
  const std::vector<GluePair>& gluing() const { return data_.gluing; }
  const SurfaceMetadata& metadata() const { return data_.metadata; }
  const MarkedSpec& marked_spec() const { return data_.marked; }
  const SurfaceData& data() const { return data_; }

  const SurfaceInvariants& invariants() const { return inv_; }

  int num_classes() const { return n_classes_; }
  int corner_class(const CornerRef& c) const;
  int corner_class(int poly, int v) const { return corner_class(CornerRef{poly, v}); }
  int cone_multiple(int cls) const { return cone_mult_[cls]; }
  bool is_marked_class(int cls) const { return marked_class_[cls]; }
  const std::vector<int>& marked_classes() const { return marked_list_; }

  EdgeRef partner(const EdgeRef& e) const;
  // next corner counterclockwise around the same vertex class
  CornerRef succ_corner(const CornerRef& c) const;
  // all corners of a class, in counterclockwise walk order from the canonical one
  const std::vector<CornerRef>& corners_of_class(int cls) const { return class_corners_[cls]; }

  Vec2K edge_vector(const EdgeRef& e) const { return polygon(e.poly).edge_vec(e.edge); }

 private:
  void validate();

  SurfaceData data_;
  SurfaceInvariants inv_;
  int n_classes_ = 0;
  std::map<CornerRef, int> class_of_;
  std::vector<std::vector<CornerRef>> class_corners_;
  std::vector<int> cone_mult_;
  std::vector<bool> marked_class_;
  std::vector<int> marked_list_;
  std::map<EdgeRef, EdgeRef> partner_;
};

SurfaceInvariants validate(const TranslationSurface& s);

TranslationSurface apply_matrix(const TranslationSurface& s, const Mat2K& A);
TranslationSurface rebase_field(const TranslationSurface& s, long d_new);

// exact angular predicates on nonzero vectors
// 0: same ray as a; 1: ccw angle in (0,pi); 2: pi; 3: ccw angle in (pi,2pi)
int angle_class(const Vec2K& a, const Vec2K& x);
// is u inside the half-open ccw sector (a, b] ?
bool sector_contains_excl_incl(const Vec2K& a, const Vec2K& b, const Vec2K& u);
// is u inside the half-open ccw sector [a, b) ?
bool sector_contains_incl_excl(const Vec2K& a, const Vec2K& b, const Vec2K& u);
bool same_ray(const Vec2K& u, const Vec2K& v);

}  // namespace zc
