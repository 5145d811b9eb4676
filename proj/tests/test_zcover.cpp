#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zc/catalog.hpp"
#include "zc/sweep.hpp"
#include "zc/zcover.hpp"

using namespace zc;

namespace {

struct Model {
  TranslationSurface s;
  HomologyModel h;
  explicit Model(const std::string& name) : s(catalog_get(name)), h(build_homology(s)) {}
};

}  // namespace

TEST_CASE("canonical projective classes") {
  Model m("domino_torus");
  IVec w = {Int(2), Int(4), Int(-6)};
  ZCoverClass c = canonicalize(m.h, w);
  CHECK(c.w == IVec{Int(1), Int(2), Int(-3)});
  IVec w3 = {Int(6), Int(12), Int(-18)};
  CHECK(canonicalize(m.h, w3).w == c.w);  // 3w ~ w
  IVec wneg = {Int(-2), Int(-4), Int(6)};
  CHECK(canonicalize(m.h, wneg).w == c.w);  // -w ~ w
  CHECK_THROWS_AS(canonicalize(m.h, IVec(3, Int(0))), Error);
}

TEST_CASE("lift verdicts against phi on the domino torus") {
  Model md("domino_torus");
  // vertical edge pairs: e1, e2
  std::vector<int> vert;
  for (int k = 0; k < md.h.cx.E; ++k)
    if (md.s.edge_vector(md.h.cx.pairs[k].a).x.is_zero()) vert.push_back(k);
  REQUIRE(vert.size() == 2);
  IVec e1(md.h.cx.E, Int(0)), e2(md.h.cx.E, Int(0));
  e1[vert[0]] = 1;
  e2[vert[1]] = 1;

  auto dec = decompose(md.s, md.h, Direction::of({Quad(1), Quad(0)}), 1000);
  REQUIRE(dec.periodic);
  auto tw = multi_twist(md.h, dec.dec, true);
  REQUIRE(tw.has_value());
  AffineAuto f = auto_of_twist(md.h, *tw);

  // w = e1 - e2 pairs trivially with every horizontal core: it lifts
  IVec diff = e1;
  for (int k = 0; k < md.h.cx.E; ++k) diff[k] -= e2[k];
  ZCoverClass w = canonicalize(md.h, md.h.reduce_chain(diff));
  LiftVerdict v = check_lift(md.h, f, w);
  CHECK(v.kind == LiftKind::lifts_plus);
  REQUIRE(v.phi_w_zero.has_value());
  CHECK(*v.phi_w_zero);

  // a class pairing nontrivially with the core does not lift
  IVec vert_only = md.h.reduce_chain(e1);
  ZCoverClass w2 = canonicalize(md.h, vert_only);
  LiftVerdict v2 = check_lift(md.h, f, w2);
  CHECK(v2.kind == LiftKind::no_lift);
  CHECK(!*v2.phi_w_zero);
}

TEST_CASE("lifts on eW and octagon recurrent covers") {
  Model mw("eierlegende_wollmilchsau");
  auto dec = decompose(mw.s, mw.h, Direction::of({Quad(1), Quad(0)}), 100000);
  auto tw = multi_twist(mw.h, dec.dec, true);
  AffineAuto f = auto_of_twist(mw.h, *tw);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    IVec w(mw.h.rel_rank, Int(0));
    bool nz = false;
    for (int j = 0; j < mw.h.W.rank(); ++j) {
      long c = long(rng() % 5) - 2;
      if (c) nz = true;
      for (int k = 0; k < mw.h.rel_rank; ++k) w[k] += Int(c) * mw.h.W.basis.at(j, k);
    }
    if (!nz) continue;
    ZCoverClass cls = canonicalize(mw.h, w);
    CHECK(check_lift(mw.h, f, cls).kind == LiftKind::lifts_plus);
  }

  Model mo("octagon_double_cover");
  Quad r2 = Quad::sqrt_d(2);
  auto decf = decompose(mo.s, mo.h, Direction::of({Quad(1) + r2, Quad(1)}), 100000);
  AffineAuto fo = auto_of_twist(mo.h, *multi_twist(mo.h, decf.dec, true));
  for (int j = 0; j < mo.h.W.rank(); ++j) {
    ZCoverClass cls = canonicalize(mo.h, mo.h.W.basis.row(j));
    CHECK(check_lift(mo.h, fo, cls).kind == LiftKind::lifts_plus);
  }
}

TEST_CASE("rank identity reports") {
  Model mw("eierlegende_wollmilchsau");
  auto dec = decompose(mw.s, mw.h, Direction::of({Quad(1), Quad(0)}), 100000);
  auto tw = multi_twist(mw.h, dec.dec, true);
  RankIdentityReport rep = multitwist_rank_identity(mw.h, *tw);
  CHECK(rep.holds);
  CHECK(rep.lhs == 0);  // 7 - 7
  CHECK(rep.rhs == 0);  // 1 - 1
  CHECK(rep.acts_trivially_on_W);

  Model mo("octagon_double_cover");
  Quad r2 = Quad::sqrt_d(2);
  auto decf = decompose(mo.s, mo.h, Direction::of({Quad(1) + r2, Quad(1)}), 100000);
  RankIdentityReport rf = multitwist_rank_identity(mo.h, *multi_twist(mo.h, decf.dec, true));
  CHECK(rf.holds);
  CHECK(rf.lhs == 0);  // 3 - 3 = 2 - 2
  CHECK(rf.acts_trivially_on_W);

  auto dech = decompose(mo.s, mo.h, Direction::of({Quad(1), Quad(0)}), 100000);
  RankIdentityReport rh = multitwist_rank_identity(mo.h, *multi_twist(mo.h, dech.dec, true));
  CHECK(rh.holds);
  CHECK(rh.lhs == 1);  // rk W - rk(W ∩ ker phi) = 3 - 2
  CHECK(rh.rhs == 1);  // rk<gamma> - [k:Q] = 3 - 2
  CHECK(!rh.acts_trivially_on_W);
}

TEST_CASE("certificates") {
  Model mw("eierlegende_wollmilchsau");
  std::vector<Direction> dirs = default_directions(0, 12);
  ZCoverClass cls = canonicalize(mw.h, mw.h.W.basis.row(0));
  CoverAnalysis an = certify(mw.s, mw.h, cls, dirs, 100000);
  CHECK(an.nonelementary_evidence);
  bool kernel_cert = false;
  for (const auto& c : an.certificates)
    if (c.kind == CertKind::FirstKind_via_kernel) kernel_cert = true;
  CHECK(kernel_cert);

  // non-recurrent class: elementary certificate with eigenvector checks
  IVec w(mw.h.rel_rank, Int(0));
  w[0] = 1;
  ZCoverClass nr = canonicalize(mw.h, w);
  if (!nr.recurrent) {
    CoverAnalysis an2 = certify(mw.s, mw.h, nr, dirs, 100000);
    REQUIRE(an2.certificates.size() >= 1);
    CHECK(an2.certificates[0].kind == CertKind::NonRecurrentElementary);
  }

  // genus-2-style gate: domino torus has rk W0 = 0 <= 2 and lattice metadata
  Model md("domino_torus");
  ZCoverClass dc = canonicalize(md.h, md.h.W.basis.row(0));
  CoverAnalysis an3 = certify(md.s, md.h, dc, dirs, 100000);
  bool dim2 = false;
  for (const auto& c : an3.certificates)
    if (c.kind == CertKind::FirstKind_dimension2) {
      dim2 = true;
      for (const auto& hyp : c.hypotheses)
        if (hyp.name == "veech_group_is_lattice") CHECK(!hyp.verified);
    }
  CHECK(dim2);
}

TEST_CASE("genus-2 origami activates the dimension-2 gate") {
  // one cylinder of circumference 3 whose bottom is swapped onto its top by a
  // transposition: a three-square origami of genus 2 with one 6pi point
  CylinderIETSpec spec;
  spec.k = 1;
  spec.c = 3;
  spec.widths = {Rat(1)};
  spec.iets = {RatIET{Rat(3), {Rat(0), Rat(1), Rat(2)}, {1, 0, 2}}};
  spec.name = "three_square_origami";
  TranslationSurface s0 = build_cylinder_iet(spec);
  SurfaceData d = s0.data();
  d.metadata.veech_group_is_lattice = LatticeFlag::yes;  // square-tiled
  TranslationSurface s = TranslationSurface::build(d);
  CHECK(s.invariants().genus == 2);
  HomologyModel h = build_homology(s);
  CHECK(h.k_degree == 1);
  CHECK(h.W0.rank() == 2);  // = 2(g - 1): the dimension-2 theorem applies
  ZCoverClass c = canonicalize(h, h.W.basis.row(0));
  REQUIRE(c.recurrent);
  CoverAnalysis an = certify(s, h, c, default_directions(0, 12), 100000);
  bool dim2 = false;
  for (const auto& cert : an.certificates)
    if (cert.kind == CertKind::FirstKind_dimension2) dim2 = true;
  CHECK(dim2);
}

TEST_CASE("certificate JSON shape") {
  Certificate c;
  c.kind = CertKind::FirstKind_dimension2;
  c.hypotheses.push_back({"rk_W0_at_most_2", true, "rk W0 = 2"});
  c.hypotheses.push_back({"veech_group_is_lattice", false, "metadata"});
  c.evidence = {{"rk_W0", 2}};
  auto j = certificate_json(c);
  CHECK(j["kind"] == "FirstKind_dimension2");
  CHECK(j["hypotheses"][0]["status"] == "verified");
  CHECK(j["hypotheses"][1]["status"] == "asserted_metadata");
}
