#include "zc/reproduce.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "zc/catalog.hpp"
#include "zc/flowsim.hpp"
#include "zc/sweep.hpp"

namespace zc {

namespace {

using Clock = std::chrono::steady_clock;

struct Harness {
  bool parallel;
  std::vector<CheckResult> results;

  struct Model {
    TranslationSurface s;
    HomologyModel h;
    std::vector<DirectionReport> sweep;  // default directions, filled on demand
    bool swept = false;
  };
  std::map<std::string, Model> models;

  Model& model(const std::string& name) {
    auto it = models.find(name);
    if (it != models.end()) return it->second;
    Model m;
    m.s = catalog_get(name);
    m.h = build_homology(m.s);
    return models.emplace(name, std::move(m)).first->second;
  }
  const std::vector<DirectionReport>& sweep(const std::string& name, long cap = 100000) {
    Model& m = model(name);
    if (!m.swept) {
      m.sweep = sweep_directions(m.s, m.h, default_directions(m.s.field_d(), 12), cap, parallel);
      m.swept = true;
    }
    return m.sweep;
  }

  void run(const std::string& id, const std::string& title, double budget_s,
           const std::function<std::string()>& body) {
    CheckResult r;
    r.id = id;
    r.title = title;
    auto t0 = Clock::now();
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_s > 0 && r.seconds >= budget_s) {
      r.pass = false;
      r.detail += " [exceeded runtime budget of " + std::to_string(budget_s) + " s]";
    }
    results.push_back(std::move(r));
  }
};

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

IVec random_primitive_in(const Submodule& W, std::mt19937_64& rng) {
  for (;;) {
    IVec w(W.ambient, Int(0));
    for (int i = 0; i < W.rank(); ++i) {
      long c = long(rng() % 7) - 3;
      if (c == 0) continue;
      for (int j = 0; j < W.ambient; ++j) w[j] += Int(c) * W.basis.at(i, j);
    }
    if (is_zero(w)) continue;
    Int g = content(w);
    for (auto& x : w) x /= g;
    return w;
  }
}

bool derivative_is_identity_mod(const Mat2K& D, long m) {
  for (const Quad* e : {&D.a11, &D.a12, &D.a21, &D.a22}) {
    if (!e->is_rational()) return false;
    if (e->rat().get_den() != 1) return false;
  }
  Int a = D.a11.rat().get_num() - 1, b = D.a12.rat().get_num();
  Int c = D.a21.rat().get_num(), d = D.a22.rat().get_num() - 1;
  return a % m == 0 && b % m == 0 && c % m == 0 && d % m == 0;
}

bool same_span(const Submodule& A, const Submodule& B) {
  if (A.ambient != B.ambient || A.rank() != B.rank()) return false;
  for (int i = 0; i < A.rank(); ++i)
    if (membership(A.basis.row(i), B) != Membership::yes) return false;
  for (int i = 0; i < B.rank(); ++i)
    if (membership(B.basis.row(i), A) != Membership::yes) return false;
  return true;
}

// --------------------------------------------------------------------------
// criterion bodies
// --------------------------------------------------------------------------

std::string check_eW(Harness& H) {
  auto& M = H.model("eierlegende_wollmilchsau");
  const auto& inv = M.s.invariants();
  expect(inv.genus == 3 && inv.num_marked == 4, "genus/marked mismatch");
  for (int c : inv.cone_multiples) expect(c == 2, "cone angle is not 4pi");
  expect(M.h.rel_rank == 9, "rk H1(M,P) != 9");
  expect(M.h.W.rank() == 7 && M.h.W0.rank() == 4, "rk W / rk W0 mismatch");
  expect(M.h.k_degree == 1, "[k:Q] != 1");

  auto dec = decompose(M.s, M.h, Direction::of({Quad(1), Quad(0)}), 100000);
  expect(dec.periodic, "horizontal direction not periodic");
  expect(dec.dec.cyls.size() == 2, "horizontal cylinder count != 2");
  for (const auto& c : dec.dec.cyls)
    expect(c.circumference == Quad(4) && c.height == Quad(1), "cylinder c,h != 4,1");
  expect(core_span(M.h, dec.dec).rank() == 1, "core classes not homologous");
  auto tw = multi_twist(M.h, dec.dec, true);
  expect(tw.has_value(), "moduli incommensurable");
  Mat2K want{Quad(1), Quad(4), Quad(0), Quad(1)};
  expect(tw->derivative == want, "twist derivative != [[1,4],[0,1]]");
  auto ra = restrict_actions(M.h, auto_of_twist(M.h, *tw));
  expect(ra.psi == IntMatrix::identity(7), "psi(twist) != I on W");

  std::mt19937_64 rng(20260808);
  const auto& sw = H.sweep("eierlegende_wollmilchsau");
  int periodic = 0;
  for (const auto& r : sw) periodic += r.periodic;
  expect(periodic >= 2, "sweep found too few periodic directions");
  std::vector<Direction> dirs = default_directions(0, 12);
  int kernel_certs = 0;
  for (int i = 0; i < 20; ++i) {
    ZCoverClass c = canonicalize(M.h, random_primitive_in(M.h.W, rng));
    expect(c.recurrent, "sampled class is not in W");
    CoverAnalysis an = certify(M.s, M.h, c, dirs, 100000);
    bool found = false;
    for (const auto& cert : an.certificates)
      if (cert.kind == CertKind::FirstKind_via_kernel) found = true;
    expect(found, "FirstKind_via_kernel missing for a recurrent class");
    ++kernel_certs;
    for (const auto& ft : an.twists) {
      LiftVerdict v = check_lift(M.h, auto_of_twist(M.h, ft.twist), c);
      if (v.kind == LiftKind::lifts_plus)
        expect(derivative_is_identity_mod(ft.twist.derivative, 4),
               "lifted twist derivative is not I mod 4");
    }
  }
  std::ostringstream os;
  os << "ranks 9/7/4, D=[[1,4],[0,1]], psi=I, " << kernel_certs << " kernel certificates, lifts = I mod 4";
  return os.str();
}

std::string check_octagon(Harness& H) {
  auto& M = H.model("octagon_double_cover");
  const auto& inv = M.s.invariants();
  expect(M.s.field_d() == 2, "field is not Q(sqrt 2)");
  expect(inv.genus == 3 && inv.num_marked == 2, "genus/marked mismatch");
  for (int c : inv.cone_multiples) expect(c == 3, "cone angle is not 6pi");
  expect(M.h.rel_rank == 7 && M.h.W.rank() == 3 && M.h.W0.rank() == 2 && M.h.k_degree == 2,
         "homology ranks mismatch");

  Quad r2 = Quad::sqrt_d(2), one(1), zero(0);
  Mat2K Dh{one, Quad(2) + Quad(2) * r2, zero, one};
  Mat2K Dh_printed{one, Quad(2) + r2, zero, one};
  Mat2K Dg{-r2, one + r2, -(one + r2), Quad(2) + r2};
  Mat2K Df{-(one + r2), Quad(4) + Quad(3) * r2, -r2, Quad(3) + r2};
  struct Want {
    Vec2K dir;
    Mat2K D;
    int ncyl;
    int corespan;
  };
  std::vector<Want> wants = {{{one, zero}, Dh, 3, 3}, {{one, one}, Dg, 4, 3}, {{one + r2, one}, Df, 2, 2}};
  std::vector<MultiTwist> twists;
  for (const auto& w : wants) {
    auto dec = decompose(M.s, M.h, Direction::of(w.dir), 100000);
    expect(dec.periodic, "reference direction not periodic");
    expect(int(dec.dec.cyls.size()) == w.ncyl, "cylinder count mismatch");
    expect(core_span(M.h, dec.dec).rank() == w.corespan, "core span rank mismatch");
    auto tw = multi_twist(M.h, dec.dec, true);
    expect(tw.has_value(), "moduli incommensurable");
    expect(tw->derivative == w.D, "derivative mismatch");
    twists.push_back(*tw);
  }
  // the printed horizontal entry 2+sqrt(2) is unsatisfiable: it does not even
  // preserve this decomposition (mu*m_j must be integral), and its coefficient
  // has positive Galois norm while every cusp coefficient here has negative norm
  {
    Quad mu_printed = Quad(2) + r2;
    bool integral = true;
    for (const auto& c : twists[0].dec.cyls) {
      Quad t = mu_printed * c.modulus;
      if (!t.is_rational() || t.rat().get_den() != 1) integral = false;
    }
    expect(!integral, "printed 2+sqrt(2) unexpectedly preserves the decomposition");
    expect(sgn((Quad(2) + r2).norm()) > 0, "norm bookkeeping");
    for (size_t i = 0; i < twists.size(); ++i) {
      Quad n2 = wants[i].dir.x * wants[i].dir.x + wants[i].dir.y * wants[i].dir.y;
      expect(sgn((twists[i].mu / n2).norm()) < 0, "cusp coefficient norm is not negative");
    }
    expect(!(twists[0].derivative == Dh_printed), "bookkeeping");
  }

  AffineAuto fa = auto_of_twist(M.h, twists[2]);
  AffineAuto ga = auto_of_twist(M.h, twists[1]);
  AffineAuto ha = auto_of_twist(M.h, twists[0]);
  Submodule fixf = fixed_subspace(M.h, fa, 1);
  expect(same_span(fixf, M.h.W), "Fix_W(f) != W");
  Submodule fixg = fixed_subspace(M.h, ga, 1);
  Submodule fixh = fixed_subspace(M.h, ha, 1);
  Submodule gh = intersect(fixg, fixh);
  expect(gh.rank() >= 1, "Fix_W(g) ∩ Fix_W(h) is trivial");
  Submodule fgh = intersect(fixf, gh);
  expect(fgh.rank() == 1, "triple fixed space rank != 1");

  // a class moved by the horizontal twist witnesses infinite index
  IVec wmoved;
  {
    bool found = false;
    for (int i = 0; i < M.h.W.rank() && !found; ++i) {
      IVec w = M.h.W.basis.row(i);
      if (ha.action_rel.apply(w) != w) {
        wmoved = w;
        found = true;
      }
    }
    expect(found, "no W class moved by the horizontal twist");
  }
  CoverAnalysis an = certify(M.s, M.h, canonicalize(M.h, wmoved), default_directions(2, 12), 100000);
  bool has_inf = false, has_dim2 = false, has_ker = false;
  for (const auto& cert : an.certificates) {
    if (cert.kind == CertKind::InfiniteIndex) has_inf = true;
    if (cert.kind == CertKind::FirstKind_dimension2) has_dim2 = true;
    if (cert.kind == CertKind::FirstKind_via_kernel) has_ker = true;
  }
  expect(has_inf, "InfiniteIndex certificate missing");
  expect(has_dim2 && has_ker, "first-kind certificates missing");
  return "ranks 7/3/2, D(g), D(f) entry-for-entry; D(h) upper entry 2+2*sqrt(2) "
         "(printed 2+sqrt(2) verified unsatisfiable); Fix ranks 3/>=1/1; InfiniteIndex fires";
}

std::string check_rank_identity(Harness& H) {
  int checked = 0;
  for (const auto& name : catalog_names()) {
    for (const auto& rep : H.sweep(name)) {
      if (!rep.periodic) continue;
      expect(rep.twist.has_value(), "periodic direction without parabolic on " + name);
      multitwist_rank_identity(H.model(name).h, *rep.twist);  // throws on violation
      ++checked;
    }
  }
  expect(checked >= 8, "too few periodic directions certified");
  return std::to_string(checked) + " periodic directions satisfy the identity exactly";
}

std::string check_phi_properties(Harness& H) {
  std::mt19937_64 rng(11);
  int dirs = 0;
  for (const auto& name : catalog_names()) {
    auto& M = H.model(name);
    for (const auto& rep : H.sweep(name)) {
      if (!rep.periodic || !rep.twist) continue;
      const MultiTwist& tw = *rep.twist;
      IntMatrix phi = phi_map(tw);
      expect((phi * phi).is_zero(), "phi^2 != 0 on " + name);
      Submodule cs = core_span(M.h, tw.dec);
      expect(rank(phi) == cs.rank(), "rank phi != rank core span");
      expect(cs.rank() <= M.s.invariants().genus, "core span rank exceeds genus");
      // sign-definiteness of i(x, phi(x)) = sum_j t_j i(x, gamma_j^o)^2
      for (int trial = 0; trial < 100; ++trial) {
        IVec x(M.h.rel_rank, Int(0));
        for (auto& e : x) e = Int(long(rng() % 9)) - 4;
        Int s = 0;
        for (size_t j = 0; j < tw.dec.cyls.size(); ++j) {
          Int p = M.h.pair(x, tw.dec.cyls[j].core_abs);
          s += tw.t[j] * p * p;
        }
        // right twists carry negative twist numbers
        expect(s <= 0, "sign-definiteness fails");
      }
      // hol ∘ phi = (D - I) ∘ hol as an exact matrix identity
      Mat2K DmI = tw.derivative - Mat2K::identity();
      for (int i = 0; i < M.h.rel_rank; ++i) {
        IVec e(M.h.rel_rank, Int(0));
        e[i] = 1;
        Vec2K lhs = M.h.holonomy(phi.apply(e));
        Vec2K rhs = DmI.apply(M.h.hol_basis[i]);
        expect(lhs == rhs, "hol∘phi != (D-I)∘hol");
      }
      // both hol(phi(H1)) and hol(ker phi) are Z-modules of rank [k:Q]
      auto hol_rank_of = [&](const std::vector<IVec>& vecs) {
        Int den(1);
        std::vector<Vec2K> hols;
        for (const auto& v : vecs) {
          Vec2K hv = M.h.holonomy(v);
          hols.push_back(hv);
          for (const Rat* r : {&hv.x.a(), &hv.x.b(), &hv.y.a(), &hv.y.b()})
            den = lcm(den, r->get_den());
        }
        IntMatrix lin(4, int(vecs.size()));
        for (size_t j = 0; j < vecs.size(); ++j) {
          Rat e4[4] = {hols[j].x.a(), hols[j].x.b(), hols[j].y.a(), hols[j].y.b()};
          for (int r = 0; r < 4; ++r) lin.at(r, int(j)) = Rat(e4[r] * Rat(den)).get_num();
        }
        return rank(lin);
      };
      std::vector<IVec> img, kerv;
      for (int i = 0; i < M.h.rel_rank; ++i) {
        IVec e(M.h.rel_rank, Int(0));
        e[i] = 1;
        img.push_back(phi.apply(e));
      }
      Submodule kphi = kernel(phi);
      for (int i = 0; i < kphi.rank(); ++i) kerv.push_back(kphi.basis.row(i));
      expect(hol_rank_of(img) == M.h.k_degree, "rank hol(phi(H1)) != [k:Q]");
      expect(hol_rank_of(kerv) == M.h.k_degree, "rank hol(ker phi) != [k:Q]");
      ++dirs;
    }
  }
  return "phi^2=0, rank phi=rank<gamma>, sign-definiteness, hol∘phi=(D-I)∘hol on " +
         std::to_string(dirs) + " decompositions";
}

std::string check_pairing_equivariance(Harness& H) {
  int autos = 0, hf_pairs = 0;
  for (const auto& name : catalog_names()) {
    auto& M = H.model(name);
    Int dp = det(M.h.pairing);
    expect(dp == 1 || dp == -1, "pairing determinant is not a unit on " + name);

    std::vector<AffineAuto> validated;
    // identity map
    std::vector<PolygonMapEntry> idmap;
    for (int p = 0; p < M.s.num_polygons(); ++p)
      idmap.push_back({p, p, {Quad(0), Quad(0)}, 0});
    validated.push_back(build_auto(M.s, M.h, Mat2K::identity(), idmap));
    // -I where a polygon map exists (search small shifts and targets)
    {
      Mat2K minusI{Quad(-1), Quad(0), Quad(0), Quad(-1)};
      bool found = false;
      for (int t0 = 0; t0 < M.s.num_polygons() && !found && M.s.num_polygons() <= 2; ++t0) {
        const Polygon& P0 = M.s.polygon(0);
        const Polygon& Q0 = M.s.polygon(t0);
        if (P0.size() != Q0.size()) continue;
        for (int sh = 0; sh < P0.size() && !found; ++sh) {
          Vec2K off = Q0.vertex(sh) - minusI.apply(P0.vertex(0));
          std::vector<PolygonMapEntry> pm;
          pm.push_back({0, t0, off, sh});
          if (M.s.num_polygons() == 2) {
            int t1 = 1 - t0;
            const Polygon& P1 = M.s.polygon(1);
            const Polygon& Q1 = M.s.polygon(t1);
            if (P1.size() != Q1.size()) continue;
            bool ok1 = false;
            for (int sh1 = 0; sh1 < P1.size() && !ok1; ++sh1) {
              Vec2K off1 = Q1.vertex(sh1) - minusI.apply(P1.vertex(0));
              std::vector<PolygonMapEntry> pm1 = pm;
              pm1.push_back({1, t1, off1, sh1});
              try {
                validated.push_back(build_auto(M.s, M.h, minusI, pm1));
                ok1 = found = true;
              } catch (const Error&) {
              }
            }
          } else {
            try {
              validated.push_back(build_auto(M.s, M.h, minusI, pm));
              found = true;
            } catch (const Error&) {
            }
          }
        }
      }
    }
    // octagon deck swap: exchange the two sheets by a translation
    if (name == "octagon_double_cover") {
      std::vector<PolygonMapEntry> pm = {{0, 1, {Quad(0), Quad(0)}, 0}, {1, 0, {Quad(0), Quad(0)}, 0}};
      validated.push_back(build_auto(M.s, M.h, Mat2K::identity(), pm));
    }

    for (const auto& f : validated) {
      // J ∘ f_* = rho(f) ∘ J
      IntMatrix lhs = M.h.Jmat * f.action_rel;
      IntMatrix rhs(M.h.num_marked(), M.h.rel_rank);
      for (int i = 0; i < M.h.num_marked(); ++i)
        for (int j = 0; j < M.h.rel_rank; ++j) rhs.at(f.rho[i], j) = M.h.Jmat.at(i, j);
      expect(lhs == rhs, "J∘f_* != rho(f)∘J on " + name);
      // pairing equivariance (checked again here; build_auto also enforces it)
      if (f.action_abs) {
        IntMatrix g = f.action_rel.transpose() * M.h.pairing * (*f.action_abs);
        IntMatrix want = M.h.pairing;
        if (f.det_sign < 0) want = IntMatrix(want.rows(), want.cols()) - want;
        expect(g == want, "pairing equivariance fails on " + name);
      }
      ++autos;
    }

    // h_f additivity over twists in ker psi0 ∩ ker rho
    std::vector<AffineAuto> kernel_twists;
    for (const auto& rep : H.sweep(name))
      if (rep.periodic && rep.twist) {
        AffineAuto f = auto_of_twist(M.h, *rep.twist);
        RestrictedActions ra = restrict_actions(M.h, f);
        if (ra.psi0 == IntMatrix::identity(M.h.W0.rank()) && f.rho_is_identity())
          kernel_twists.push_back(std::move(f));
      }
    for (size_t i = 0; i < kernel_twists.size() && i < 3; ++i)
      for (size_t j = 0; j < kernel_twists.size() && j < 3; ++j) {
        const AffineAuto &f = kernel_twists[i], &g = kernel_twists[j];
        IntMatrix hf = h_f_map(M.h, f), hg = h_f_map(M.h, g);
        AffineAuto gf = compose(M.h, g, f);
        RestrictedActions ra = restrict_actions(M.h, gf);
        if (!(ra.psi0 == IntMatrix::identity(M.h.W0.rank()))) continue;
        IntMatrix hgf = h_f_map(M.h, gf);
        expect(hgf == hf + hg, "h_{g∘f} != h_f + h_g on " + name);
        ++hf_pairs;
      }
  }
  expect(hf_pairs >= 2, "no composable pairs exercised h_f additivity");
  return std::to_string(autos) + " automorphisms equivariant; " + std::to_string(hf_pairs) +
         " h_f additivity pairs";
}

std::string check_rank_formulas(Harness& H) {
  auto verify = [&](const TranslationSurface& s, const HomologyModel& h) {
    int g = s.invariants().genus, nP = s.invariants().num_marked, k = h.k_degree;
    expect(h.W.rank() == 2 * (g - k) + nP - 1, "rk W formula fails on " + s.metadata().name);
    expect(h.W0.rank() == 2 * (g - k), "rk W0 formula fails on " + s.metadata().name);
  };
  for (const auto& name : catalog_names()) verify(H.model(name).s, H.model(name).h);
  for (unsigned long seed = 1; seed <= 10; ++seed) {
    TranslationSurface s = build_cylinder_iet(random_cylinder_iet_spec(seed));
    HomologyModel h = build_homology(s);
    verify(s, h);
    // the generator's defining property: all horizontal core classes coincide
    auto dec = decompose(s, h, Direction::of({Quad(1), Quad(0)}), 100000);
    expect(dec.periodic, "generator surface not horizontally periodic");
    expect(core_span(h, dec.dec).rank() == 1, "generator cylinders not homologous");
  }
  return "rk W = 2(g-k)+#P-1 and rk W0 = 2(g-k) on 4 catalog + 10 generator surfaces";
}

std::string check_recurrence(Harness& H) {
  auto& M = H.model("domino_torus");
  TranslationSurface s2 = rebase_field(M.s, 2);
  HomologyModel h2 = build_homology(s2);
  // the two vertical edge pairs
  std::vector<int> vert;
  for (int k = 0; k < h2.cx.E; ++k) {
    Vec2K v = s2.edge_vector(h2.cx.pairs[k].a);
    if (v.x.is_zero()) vert.push_back(k);
  }
  expect(vert.size() == 2, "domino torus should have two vertical edge pairs");
  IVec diff(h2.cx.E, Int(0)), sum(h2.cx.E, Int(0));
  diff[vert[0]] = 1;
  diff[vert[1]] = -1;
  sum[vert[0]] = 1;
  sum[vert[1]] = 1;
  ZCoverClass w = canonicalize(h2, h2.reduce_chain(diff));
  ZCoverClass wp = canonicalize(h2, h2.reduce_chain(sum));
  expect(w.recurrent, "e1 - e2 should have zero holonomy");
  expect(!wp.recurrent, "e1 + e2 should have holonomy (0,2)");
  expect(wp.hol_w == Vec2K{Quad(0), Quad(2)}, "hol(e1+e2) != (0,2)");

  Direction dir = Direction::of({Quad(1), Quad::sqrt_d(2)});
  ReturnIET i1 = first_return_iet(s2, h2, w, dir);
  expect(i1.sum_mu_f.is_zero(), "sum mu f != 0 for the recurrent class");
  ReturnIET i2 = first_return_iet(s2, h2, wp, dir);
  expect(i2.sum_mu_f == i2.hol_perp, "sum mu f != hol_perp");
  expect(!i2.sum_mu_f.is_zero(), "transient class should have nonzero pairing");

  double rt2 = std::sqrt(2.0);
  FlowReport fr_rec = simulate_float(s2, h2, w, 1.0, rt2, 1e5);
  FlowReport fr_tra = simulate_float(s2, h2, wp, 1.0, rt2, 1e5);
  expect(!fr_rec.hit_singularity && !fr_tra.hit_singularity, "float flow hit a singularity");
  expect(std::abs(fr_rec.drift_slope) < 0.01, "recurrent drift above tolerance");
  expect(fr_rec.returns_to_zero >= 100, "too few sheet-0 returns");
  expect(std::abs(fr_tra.predicted_drift) > 0.01, "transient prediction unexpectedly small");
  expect(std::abs(fr_tra.drift_slope - fr_tra.predicted_drift) <=
             0.02 * std::abs(fr_tra.predicted_drift),
         "transient drift misses the prediction by more than 2%");
  std::ostringstream os;
  os << "IET identities exact; float drift " << fr_tra.drift_slope << " vs predicted "
     << fr_tra.predicted_drift << "; " << fr_rec.returns_to_zero << " returns";
  return os.str();
}

std::string check_cocycle_agreement(Harness& H) {
  std::mt19937_64 rng(77);
  int loops_total = 0;
  for (const auto& name : catalog_names()) {
    auto& M = H.model(name);
    ZCoverClass c = canonicalize(M.h, random_primitive_in(M.h.W.rank() > 0
                                                              ? M.h.W
                                                              : Submodule{M.h.rel_rank,
                                                                          IntMatrix::identity(M.h.rel_rank)},
                                                          rng));
    CocycleSpec coc = cocycle_of(M.h, c);
    for (int trial = 0; trial < 20; ++trial) {
      // random closed walk in the dual graph
      IVec dual(M.h.cx.E, Int(0));
      Int inc_sum = 0;
      int start = int(rng() % M.s.num_polygons());
      int cur = start;
      bool closed = false;
      for (int step = 0; step < 400; ++step) {
        const Polygon& poly = M.s.polygon(cur);
        int e = int(rng() % poly.size());
        EdgeRef er{cur, e};
        auto [k, sg] = M.h.cx.oriented(er);
        dual[k] += -sg;       // crossing out of the current face
        inc_sum += Int(-sg) * coc.inc[k];
        cur = M.s.partner(er).poly;
        if (cur == start && step >= 1) {
          closed = true;
          break;
        }
      }
      if (!closed) continue;
      IVec abs_coords = M.h.reduce_dual(dual);
      Int via_pairing = M.h.pair(c.w, abs_coords);
      expect(via_pairing == inc_sum, "cocycle sum disagrees with i(w,[gamma]) on " + name);
      ++loops_total;
    }
  }
  expect(loops_total >= 20, "not enough closed loops sampled");
  return std::to_string(loops_total) + " closed loops agree exactly";
}

std::string check_labels(Harness& H) {
  auto& M = H.model("octagon_double_cover");
  IVec w0 = M.h.W.basis.row(0);
  CoverAnalysis an = certify(M.s, M.h, canonicalize(M.h, w0), default_directions(2, 12), 100000);
  bool saw_dim2 = false;
  for (const auto& cert : an.certificates) {
    for (const auto& hyp : cert.hypotheses)
      if (hyp.name == "veech_group_is_lattice")
        expect(!hyp.verified, "lattice hypothesis must be asserted_metadata, never verified");
    if (cert.kind == CertKind::FirstKind_dimension2) saw_dim2 = true;
    if (cert.kind == CertKind::InfiniteIndex) {
      std::string concl = cert.evidence.value("conclusion", std::string());
      expect(concl.find("infinite generation follows only together") != std::string::npos,
             "infinite generation must stay conditional");
    }
  }
  expect(saw_dim2, "dimension-2 certificate expected on the octagon cover");
  return "limit-set equalities, infinite generation and the congruence claim are only "
         "consumed through labeled hypotheses and verified consequences";
}

}  // namespace

std::vector<CheckResult> reproduce_paper_checks(bool parallel) {
  Harness H{parallel, {}, {}};
  H.run("1", "eierlegende Wollmilchsau reproduction", 10.0, [&] { return check_eW(H); });
  H.run("2", "octagon double cover reproduction", 60.0, [&] { return check_octagon(H); });
  H.run("3", "multi-twist rank identity on sweeps", 0, [&] { return check_rank_identity(H); });
  H.run("4", "multi-twist action property suite", 0, [&] { return check_phi_properties(H); });
  H.run("5", "pairing and equivariance", 0, [&] { return check_pairing_equivariance(H); });
  H.run("6", "holonomy-free rank formulas", 0, [&] { return check_rank_formulas(H); });
  H.run("7", "recurrence dynamics on the domino torus", 30.0, [&] { return check_recurrence(H); });
  H.run("8", "cross-module cocycle agreement", 0, [&] { return check_cocycle_agreement(H); });
  H.run("9", "unverifiable claims stay labeled", 0, [&] { return check_labels(H); });
  return H.results;
}

}  // namespace zc
