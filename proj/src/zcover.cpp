#include "zc/zcover.hpp"

#include "zc/sweep.hpp"

namespace zc {

const char* lift_kind_name(LiftKind k) {
  switch (k) {
    case LiftKind::lifts_plus: return "lifts_plus";
    case LiftKind::lifts_minus: return "lifts_minus";
    case LiftKind::no_lift: return "no_lift";
  }
  return "?";
}

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::FirstKind_via_kernel: return "FirstKind_via_kernel";
    case CertKind::FirstKind_dimension2: return "FirstKind_dimension2";
    case CertKind::InfiniteIndex: return "InfiniteIndex";
    case CertKind::NonRecurrentElementary: return "NonRecurrentElementary";
    case CertKind::None: return "None";
  }
  return "?";
}

ZCoverClass canonicalize(const HomologyModel& h, IVec w) {
  if (int(w.size()) != h.rel_rank) fail(Err::DimensionMismatch, "cover class coordinate length");
  if (is_zero(w)) fail(Err::ZeroClass, "the zero class defines no Z-cover");
  Int g = content(w);
  for (auto& x : w) x /= g;
  for (const auto& x : w) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : w) y = -y;
    break;
  }
  ZCoverClass c;
  c.w = w;
  c.hol_w = h.holonomy(w);
  c.recurrent = c.hol_w.is_zero();
  c.in_W = c.recurrent;
  return c;
}

LiftVerdict check_lift(const HomologyModel& h, const AffineAuto& f, const ZCoverClass& c) {
  LiftVerdict v;
  IVec img = f.action_rel.apply(c.w);
  if (img == c.w)
    v.kind = LiftKind::lifts_plus;
  else if (img == neg(c.w))
    v.kind = LiftKind::lifts_minus;
  else
    v.kind = LiftKind::no_lift;
  if (f.from_multitwist) {
    IVec d = img;
    for (size_t i = 0; i < d.size(); ++i) d[i] -= c.w[i];
    bool phi_zero = is_zero(d);
    v.phi_w_zero = phi_zero;
    // for multi-twists the +1 criteria must coincide
    if (phi_zero != (v.kind == LiftKind::lifts_plus))
      fail(Err::Internal, "phi(w) = 0 disagrees with f_*(w) = w");
  }
  return v;
}

RankIdentityReport multitwist_rank_identity(const HomologyModel& h, const MultiTwist& t) {
  RankIdentityReport rep;
  IntMatrix phi = phi_map(t);
  Submodule kphi = kernel(phi);
  Submodule wkp = intersect(h.W, kphi);
  Submodule core = core_span(h, t.dec);
  rep.rk_W = h.W.rank();
  rep.rk_W_ker_phi = wkp.rank();
  rep.rk_core = core.rank();
  rep.k_degree = h.k_degree;
  rep.lhs = rep.rk_W - rep.rk_W_ker_phi;
  rep.rhs = rep.rk_core - rep.k_degree;
  rep.holds = (rep.lhs == rep.rhs);
  rep.acts_trivially_on_W = (rep.rk_core == rep.k_degree);
  if (!rep.holds)
    fail(Err::IdentityViolated,
         "rank identity fails: lhs=" + rep.lhs.get_str() + " rhs=" + rep.rhs.get_str());
  // the triviality criterion must match the actual restricted action
  RestrictedActions ra = restrict_actions(h, auto_of_twist(h, t));
  bool trivial = ra.psi == IntMatrix::identity(h.W.rank());
  if (trivial != rep.acts_trivially_on_W)
    fail(Err::IdentityViolated, "triviality criterion disagrees with psi");
  return rep;
}

std::vector<FoundTwist> find_multitwists(const TranslationSurface& s, const HomologyModel& h,
                                         const std::vector<Direction>& directions, long cap,
                                         bool parallel) {
  std::vector<DirectionReport> reps = sweep_directions(s, h, directions, cap, parallel);
  std::vector<FoundTwist> out;
  for (auto& r : reps) {
    if (!r.periodic || !r.twist) continue;
    FoundTwist ft;
    ft.dir = r.dir;
    ft.twist = *r.twist;
    RestrictedActions ra = restrict_actions(h, auto_of_twist(h, ft.twist));
    ft.psi_trivial = (ra.psi == IntMatrix::identity(h.W.rank()));
    out.push_back(std::move(ft));
  }
  return out;
}

namespace {

nlohmann::json dir_json(const Direction& d) {
  return nlohmann::json::array({quad_str(d.v.x), quad_str(d.v.y)});
}

nlohmann::json mat_json(const Mat2K& m) {
  return nlohmann::json::array({nlohmann::json::array({quad_str(m.a11), quad_str(m.a12)}),
                                nlohmann::json::array({quad_str(m.a21), quad_str(m.a22)})});
}

}  // namespace

nlohmann::json certificate_json(const Certificate& c) {
  nlohmann::json hyp = nlohmann::json::array();
  for (const auto& hh : c.hypotheses)
    hyp.push_back({{"name", hh.name},
                   {"status", hh.verified ? "verified" : "asserted_metadata"},
                   {"note", hh.note}});
  return {{"kind", cert_kind_name(c.kind)}, {"hypotheses", hyp}, {"evidence", c.evidence}};
}

CoverAnalysis certify(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                      const std::vector<Direction>& directions, long cap) {
  CoverAnalysis out;
  out.cls = c;
  out.twists = find_multitwists(s, h, directions, cap);

  // (a) non-elementarity: parabolics with two distinct invariant directions
  const FoundTwist* first = out.twists.empty() ? nullptr : &out.twists[0];
  const FoundTwist* second = nullptr;
  for (const auto& t : out.twists)
    if (first && !t.dir.parallel(first->dir)) {
      second = &t;
      break;
    }
  out.nonelementary_evidence = (first && second);

  auto lattice_flag = s.metadata().veech_group_is_lattice;
  auto lattice_hyp = [&](std::vector<Hypothesis>& hyp) {
    hyp.push_back({"veech_group_is_lattice", false,
                   lattice_flag == LatticeFlag::yes ? "declared true in surface metadata"
                                                    : "not declared; conclusion conditional"});
  };
  auto nonelem_hyp = [&](std::vector<Hypothesis>& hyp) {
    hyp.push_back({"veech_group_nonelementary", true,
                   "two parabolic derivatives with non-proportional invariant directions"});
  };

  if (!c.recurrent) {
    // (e) non-recurrent covers have elementary symmetry groups
    Certificate cert;
    cert.kind = CertKind::NonRecurrentElementary;
    cert.hypotheses.push_back({"hol_w_nonzero", true, "computed exactly"});
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& t : out.twists) {
      LiftVerdict v = check_lift(h, auto_of_twist(h, t.twist), c);
      if (v.kind == LiftKind::no_lift) continue;
      // every lifting derivative must fix the line R*hol(w)
      Vec2K img = t.twist.derivative.apply(c.hol_w);
      bool eigen = (img == c.hol_w) || (img == -c.hol_w);
      if (!eigen) fail(Err::Internal, "lifting derivative does not fix hol(w)");
      checks.push_back({{"direction", dir_json(t.dir)}, {"eigenvector_check", "passed"}});
    }
    cert.evidence = {{"hol_w", {quad_str(c.hol_w.x), quad_str(c.hol_w.y)}},
                     {"lifting_derivative_checks", checks}};
    out.certificates.push_back(std::move(cert));
    return out;
  }

  // (b) a multi-twist acting trivially on W with nontrivial derivative
  for (const auto& t : out.twists) {
    if (!t.psi_trivial || !out.nonelementary_evidence) continue;
    if (t.twist.derivative == Mat2K::identity()) continue;
    Certificate cert;
    cert.kind = CertKind::FirstKind_via_kernel;
    nonelem_hyp(cert.hypotheses);
    cert.hypotheses.push_back({"kernel_psi0_nontrivial", true,
                               "multi-twist acts trivially on W, derivative is not the identity"});
    lattice_hyp(cert.hypotheses);
    cert.evidence = {{"twist_direction", dir_json(t.dir)},
                     {"twist_derivative", mat_json(t.twist.derivative)},
                     {"conclusion", "limit set of the cover's Veech group equals the ambient limit set"}};
    out.certificates.push_back(std::move(cert));
    break;
  }

  // (c) rk W0 <= 2 with the lattice hypothesis from metadata
  if (h.W0.rank() <= 2 && lattice_flag == LatticeFlag::yes) {
    Certificate cert;
    cert.kind = CertKind::FirstKind_dimension2;
    cert.hypotheses.push_back({"rk_W0_at_most_2", true, "rk W0 = " + std::to_string(h.W0.rank())});
    lattice_hyp(cert.hypotheses);
    cert.evidence = {{"rk_W0", h.W0.rank()}};
    out.certificates.push_back(std::move(cert));
  }

  // (d) a multi-twist moving w witnesses infinite index
  for (const auto& t : out.twists) {
    LiftVerdict v = check_lift(h, auto_of_twist(h, t.twist), c);
    if (v.kind == LiftKind::lifts_plus) continue;
    Certificate cert;
    cert.kind = CertKind::InfiniteIndex;
    cert.hypotheses.push_back({"multitwist_moves_w", true, "f_*(w) != w computed exactly"});
    cert.evidence = {{"twist_direction", dir_json(t.dir)},
                     {"twist_derivative", mat_json(t.twist.derivative)},
                     {"conclusion",
                      "the cover's derivative group has infinite index; infinite generation follows "
                      "only together with a first-kind certificate"}};
    out.certificates.push_back(std::move(cert));
    break;
  }

  if (out.certificates.empty()) {
    Certificate cert;
    cert.kind = CertKind::None;
    cert.evidence = {{"note", "no decision rule fired with the searched directions"}};
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

}  // namespace zc
