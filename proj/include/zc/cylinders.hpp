#pragma once

#include <optional>

#include "zc/homology.hpp"

namespace zc {

struct Direction {
  Vec2K v;
  // canonical: first nonzero coordinate positive
  static Direction of(Vec2K w);
  bool parallel(const Direction& o) const { return cross(v, o.v).is_zero(); }
};

// one straight piece of a saddle connection inside a polygon (rotated frame)
struct SubSeg {
  int poly = -1;
  Vec2K p0, p1;       // p0.y == p1.y, p0.x < p1.x
  bool on_edge = false;
  EdgeRef edge;       // valid when on_edge
};

struct SaddleConnection {
  int start_class = -1, end_class = -1;
  std::vector<std::pair<int, int>> crossings;  // (edge pair, +-1) transversal crossings in order
  IVec chain;       // homologous edge chain in Z^E (relative cycle rel P)
  Quad length_x;    // rotated-frame length
  std::vector<SubSeg> segs;
};

struct Cylinder {
  Quad circumference, height, modulus;
  std::vector<int> bottom, top;  // indices into the decomposition's saddle connections
  IVec core_rel;   // class of the core in H1(M,P;Z) (top-boundary chain), rel coordinates
  IVec core_abs;   // class of the core in H1(M°;Z), abs coordinates
  IVec core_dual;  // raw dual-edge chain of the core circle (Z^E)
};

struct CylinderDecomposition {
  Direction dir;
  Mat2K rot, rot_inv;  // exact similarity taking dir to the horizontal axis
  bool metric = false; // true when rot is a genuine rotation (lengths are metric)
  Quad det_rot;
  std::vector<SaddleConnection> sc;
  std::vector<Cylinder> cyls;
};

struct DecomposeOutcome {
  bool periodic = false;
  CylinderDecomposition dec;  // valid when periodic
};

// Trace the separatrix diagram in the given direction and cut into cylinders.
// cap bounds the number of polygon steps per separatrix.
DecomposeOutcome decompose(const TranslationSurface& s, const HomologyModel& h, const Direction& dir,
                           long cap = 100000);

struct MultiTwist {
  CylinderDecomposition dec;
  bool right = true;   // twist sense
  Quad mu;             // > 0: |upper entry| of the rotated-frame derivative
  Quad mu_signed;      // right ? +mu : -mu
  std::vector<Int> t;  // twist numbers of the homology action; t_j = -mu_signed * m_j
  Mat2K derivative;    // original frame
  IntMatrix action_rel;
};

// Smallest parabolic preserving the decomposition; nullopt when the moduli
// are incommensurable.
std::optional<MultiTwist> multi_twist(const HomologyModel& h, const CylinderDecomposition& dec,
                                      bool right);

IntMatrix phi_map(const MultiTwist& t);  // action_rel - I
Submodule core_span(const HomologyModel& h, const CylinderDecomposition& dec);

}  // namespace zc
