#pragma once

#include <functional>
#include <optional>

#include "zc/automorph.hpp"
#include "zc/surface.hpp"

namespace zc {

// Rational interval exchange of [0, c): pieces [breaks[i], breaks[i+1]) are
// reordered by perm (perm[i] = slot of piece i in the image order).
struct RatIET {
  Rat c;
  std::vector<Rat> breaks;  // ascending, first = 0, implicit end = c
  std::vector<int> perm;

  int pieces() const { return int(breaks.size()); }
  Rat piece_len(int i) const { return (i + 1 < pieces() ? breaks[i + 1] : c) - breaks[i]; }
  Rat image_start(int i) const;
  Rat apply(const Rat& x) const;
  Rat apply_inv(const Rat& x) const;
  void check() const;  // InvalidIET
};

struct MarkedPoint {
  int circle;  // index i: the circle glued by T_i (bottom of C_i to top of C_{i+1})
  Rat x;       // position measured on the bottom edge of C_i
  Rat height;  // 0 = on the circle; otherwise interior height inside C_i measured from its bottom
};

// Stack of same-circumference cylinders glued bottom-to-top by rational
// interval exchanges; every horizontal decomposition it produces consists of
// homologous cylinders.
struct CylinderIETSpec {
  int k = 1;
  Rat c = 1;
  std::vector<Rat> widths;
  std::vector<RatIET> iets;  // iets[i] glues bottom of C_i to top of C_{i+1 mod k}
  std::vector<MarkedPoint> marked;
  std::string name = "cylinder_iet";
};

TranslationSurface build_cylinder_iet(CylinderIETSpec spec);

// deterministic pseudo-random generator specs for property tests
CylinderIETSpec random_cylinder_iet_spec(unsigned long seed);

struct CatalogExpected {
  int genus = 0;
  int num_marked = 0;
  std::vector<int> cone_multiples;  // sorted
  int rel_rank = 0, rk_W = 0, rk_W0 = 0, k_degree = 1;
  LatticeFlag lattice = LatticeFlag::unknown;
};

struct CatalogEntry {
  std::string name;
  CatalogExpected expected;
  std::function<TranslationSurface()> builder;
};

const std::vector<CatalogEntry>& catalog_entries();
std::vector<std::string> catalog_names();
TranslationSurface catalog_get(const std::string& name);
const CatalogEntry& catalog_entry(const std::string& name);

// the two derivative -I automorphisms of the octagon double cover: the
// sheet-preserving one and its composition with the deck exchange
std::vector<std::vector<PolygonMapEntry>> octagon_minus_identity_maps();

}  // namespace zc
