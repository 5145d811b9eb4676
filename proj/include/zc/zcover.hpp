#pragma once

#include <json.hpp>

#include "zc/automorph.hpp"

namespace zc {

// projective class w of H1(M,P;Z) determining the Z-cover of M°
struct ZCoverClass {
  IVec w;  // rel coordinates; primitive, first nonzero coordinate positive
  Vec2K hol_w;
  bool recurrent = false;  // hol(w) = 0
  bool in_W = false;       // same as recurrent (kept for report clarity)
};

ZCoverClass canonicalize(const HomologyModel& h, IVec w);

enum class LiftKind { lifts_plus, lifts_minus, no_lift };
const char* lift_kind_name(LiftKind k);

struct LiftVerdict {
  LiftKind kind = LiftKind::no_lift;
  std::optional<bool> phi_w_zero;  // multi-twists only
};

LiftVerdict check_lift(const HomologyModel& h, const AffineAuto& f, const ZCoverClass& c);

struct RankIdentityReport {
  Int lhs, rhs;         // rk W - rk(W ∩ ker phi)  vs  rk<gamma_j> - [k:Q]
  bool holds = false;
  bool acts_trivially_on_W = false;
  int rk_W = 0, rk_W_ker_phi = 0, rk_core = 0, k_degree = 0;
};

// computes both sides independently; throws IdentityViolated on mismatch
RankIdentityReport multitwist_rank_identity(const HomologyModel& h, const MultiTwist& t);

enum class CertKind {
  FirstKind_via_kernel,
  FirstKind_dimension2,
  InfiniteIndex,
  NonRecurrentElementary,
  None,
};
const char* cert_kind_name(CertKind k);

struct Hypothesis {
  std::string name;
  bool verified = false;  // false: asserted_metadata
  std::string note;
};

struct Certificate {
  CertKind kind = CertKind::None;
  std::vector<Hypothesis> hypotheses;
  nlohmann::json evidence;
};

struct FoundTwist {
  Direction dir;
  MultiTwist twist;
  bool psi_trivial = false;
};

struct CoverAnalysis {
  ZCoverClass cls;
  std::vector<Certificate> certificates;
  std::vector<FoundTwist> twists;
  bool nonelementary_evidence = false;
};

CoverAnalysis certify(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                      const std::vector<Direction>& directions, long cap = 100000);

// twist search shared by certify and the CLI
std::vector<FoundTwist> find_multitwists(const TranslationSurface& s, const HomologyModel& h,
                                         const std::vector<Direction>& directions, long cap,
                                         bool parallel = false);

nlohmann::json certificate_json(const Certificate& c);

}  // namespace zc
