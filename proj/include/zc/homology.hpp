#pragma once

#include "zc/intmat.hpp"
#include "zc/surface.hpp"

namespace zc {

// Cellular model: one oriented edge per glued pair (the representative is the
// pair's first EdgeRef, oriented as its polygon traverses it). The dual graph
// has the polygons as nodes and one dual edge e* per pair, oriented so that it
// crosses e from its right side to its left side (sigma_e = +1 throughout).
struct CellComplex {
  int E = 0;
  std::vector<GluePair> pairs;
  std::vector<int> start_cl, end_cl;        // endpoints of the representative
  std::vector<int> face_left, face_right;   // polygon of rep / of partner
  IntMatrix d1;      // classes x E
  IntMatrix d2;      // E x F (face boundaries)
  IntMatrix dual_d;  // F x E (dual edge boundaries: left - right)

  // pair id and sign (+1 if e is the representative orientation) of an EdgeRef
  std::pair<int, int> oriented(const EdgeRef& e) const;
  std::map<EdgeRef, std::pair<int, int>> index;
};

struct HomologyModel {
  TranslationSurface surf;
  CellComplex cx;
  QuotientModel rel;  // H1(M,P;Z) over edge chains
  QuotientModel abs;  // H1(M°;Z) over dual-edge chains
  int rel_rank = 0, abs_rank = 0;
  IntMatrix pairing;            // rel_rank x abs_rank, |det| = 1
  std::vector<Vec2K> hol_basis; // holonomy of each relative basis class
  IntMatrix boundary;           // #P x rel_rank (multiplicity of each marked class in the boundary)
  IntMatrix Jmat;               // #P x rel_rank (pairing with clockwise puncture loops)
  std::vector<IVec> puncture_loops;  // clockwise dual cycles, one per marked class (Z^E)
  Submodule W, W0;              // holonomy-free subspaces, ambient = rel_rank
  int k_degree = 1;             // [k:Q]
  bool k_rank_mismatch = false; // hol rank on H1(M;Z) vs H1(M,P;Z) disagreed

  int num_marked() const { return int(surf.marked_classes().size()); }

  IVec reduce_chain(const IVec& edge_chain) const { return rel.reduce(edge_chain); }
  IVec edge_chain(const IVec& rel_coords) const { return rel.lift(rel_coords); }
  IVec reduce_dual(const IVec& dual_chain) const { return abs.reduce(dual_chain); }
  IVec dual_chain(const IVec& abs_coords) const { return abs.lift(abs_coords); }

  Vec2K holonomy(const IVec& rel_coords) const;
  Vec2K holonomy_of_chain(const IVec& edge_chain) const;
  IVec J(const IVec& rel_coords) const { return Jmat.apply(rel_coords); }
  // i(x, y) for x in rel coordinates, y in abs coordinates
  Int pair(const IVec& rel_coords, const IVec& abs_coords) const;
  // i(x, y) for raw chains (x over edges, y over dual edges)
  Int pair_chains(const IVec& edge_chain, const IVec& dual_chain) const;
};

HomologyModel build_homology(const TranslationSurface& s);

struct HolonomyFree {
  Submodule W, W0;
  int rk_W = 0, rk_W0 = 0;
};
HolonomyFree holonomy_free(const HomologyModel& h);
int holonomy_degree(const HomologyModel& h);

IVec puncture_pairing_J(const HomologyModel& h, const IVec& rel_coords);

}  // namespace zc
