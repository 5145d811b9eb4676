#pragma once

#include <optional>

#include "zc/cylinders.hpp"

namespace zc {

struct PolygonMapEntry {
  int src = -1, dst = -1;
  Vec2K offset;     // image of polygon src is D * src + offset
  int vshift = 0;   // vertex i of src maps to vertex i + vshift of dst
};

// Affine automorphism given combinatorially. Validated on construction:
// geometry matches, gluing preserved, pairing equivariance, hol equivariance.
struct AffineAuto {
  Mat2K derivative;
  int det_sign = 1;
  std::vector<PolygonMapEntry> poly_map;  // empty for formula-built multi-twists
  IntMatrix action_rel;                   // on H1(M,P;Z), rel basis
  std::optional<IntMatrix> action_abs;    // on H1(M°;Z), abs basis (polygon-map autos)
  std::vector<int> rho;                   // permutation of the marked classes (marked-list order)
  bool from_multitwist = false;

  bool rho_is_identity() const {
    for (size_t i = 0; i < rho.size(); ++i)
      if (rho[i] != int(i)) return false;
    return true;
  }
};

AffineAuto build_auto(const TranslationSurface& s, const HomologyModel& h, const Mat2K& derivative,
                      const std::vector<PolygonMapEntry>& pmap);
AffineAuto auto_of_twist(const HomologyModel& h, const MultiTwist& t);
// composition f ∘ g as an action (derivative and homology matrices multiply)
AffineAuto compose(const HomologyModel& h, const AffineAuto& f, const AffineAuto& g);

struct RestrictedActions {
  IntMatrix psi0;  // on W0
  IntMatrix psi;   // on W
};
RestrictedActions restrict_actions(const HomologyModel& h, const AffineAuto& f);

// h_f : W/W0 -> W0, w + W0 -> f_*(w) - w, for f in ker(psi0) ∩ ker(rho);
// returned as a (rk W0) x (rk W - rk W0) matrix in the fixed complement basis
IntMatrix h_f_map(const HomologyModel& h, const AffineAuto& f);

// saturated kernel of (psi(f) - sign * I) inside W, as a Submodule of H1(M,P;Z)
Submodule fixed_subspace(const HomologyModel& h, const AffineAuto& f, int sign);

// fixed complement data for W/W0 computations
struct WSplit {
  IntMatrix w0_in_w;        // rk W0 x rk W
  IntMatrix complement;     // (rk W - rk W0) x rk W: basis of a complement of W0 in W
};
WSplit w_split(const HomologyModel& h);

}  // namespace zc
