// zcov: exact analysis of compact translation surfaces and their Z-covers
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "zc/catalog.hpp"
#include "zc/flowsim.hpp"
#include "zc/reproduce.hpp"
#include "zc/surface_json.hpp"
#include "zc/sweep.hpp"

using namespace zc;

namespace {

struct Common {
  std::string in = "-";
  std::string out;
  long field = -1;
  long cap = 100000;
  unsigned long seed = 1;
};

void emit(const Common& c, const json& j) {
  std::string text = canonical_dump(j);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) fail(Err::ParseError, "cannot open output file '" + c.out + "'");
    f << text;
  }
}

TranslationSurface load_surface(const Common& c) {
  TranslationSurface s = read_surface_file(c.in);
  if (c.field >= 0) s = rebase_field(s, c.field);
  return s;
}

IVec parse_int_vector(const std::string& str) {
  IVec out;
  std::string cur;
  for (char ch : str + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(Int(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  return out;
}

ZCoverClass parse_cover_class(const HomologyModel& h, const std::string& w_basis,
                              const std::string& w_edges) {
  if (!w_edges.empty()) {
    IVec chain = parse_int_vector(w_edges);
    if (int(chain.size()) != h.cx.E) fail(Err::DimensionMismatch, "edge chain length mismatch");
    return canonicalize(h, h.reduce_chain(chain));
  }
  IVec w = parse_int_vector(w_basis);
  return canonicalize(h, w);
}

json cylinders_json(const HomologyModel& h, const CylinderDecomposition& dec) {
  json cyls = json::array();
  for (const auto& c : dec.cyls) {
    cyls.push_back({{"circumference", quad_str(c.circumference)},
                    {"height", quad_str(c.height)},
                    {"modulus", quad_str(c.modulus)},
                    {"core_rel", ivec_json(c.core_rel)},
                    {"core_abs", ivec_json(c.core_abs)}});
  }
  return {{"direction", vec_json(dec.dir.v)},
          {"metric_frame", dec.metric},
          {"frame_determinant", quad_str(dec.det_rot)},
          {"num_saddle_connections", dec.sc.size()},
          {"cylinders", cyls},
          {"core_span_rank", core_span(h, dec).rank()}};
}

json twist_json(const MultiTwist& tw) {
  json t = json::array();
  for (const auto& x : tw.t) t.push_back(x.get_str());
  return {{"sense", tw.right ? "right" : "left"},
          {"mu", quad_str(tw.mu)},
          {"twist_numbers", t},
          {"derivative", mat_json(tw.derivative)}};
}

json intmat_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(ivec_json(m.row(i)));
  return rows;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact translation-surface and Z-cover analysis"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Common c;
  app.add_option("--in", c.in, "surface JSON file ('-' = stdin)");
  app.add_option("--out", c.out, "write the JSON output here instead of stdout");
  app.add_option("--field", c.field, "rebase the surface to Q(sqrt d) first");
  app.add_option("--cap", c.cap, "separatrix crossing budget");
  app.add_option("--seed", c.seed, "seed for sampled-direction commands");

  // catalog
  auto* cat = app.add_subcommand("catalog", "built-in example surfaces");
  cat->fallthrough();
  auto* cat_list = cat->add_subcommand("list", "list catalog names");
  std::string cat_name;
  auto* cat_get = cat->add_subcommand("get", "emit a catalog surface as JSON");
  cat_get->add_option("name", cat_name, "surface name")->required();

  // surface
  auto* surf = app.add_subcommand("surface", "validation and invariants");
  surf->fallthrough();
  auto* surf_validate = surf->add_subcommand("validate", "validate and report invariants");
  auto* surf_info = surf->add_subcommand("info", "invariants plus class/edge tables");

  // homology
  auto* hom = app.add_subcommand("homology", "homology of (M,P) and M°");
  hom->fallthrough();
  auto* hom_basis = hom->add_subcommand("basis", "bases, pairing and edge table");
  auto* hom_ranks = hom->add_subcommand("ranks", "rank summary");

  // cylinders / twist
  std::string dir_str, sign_str = "right";
  auto* cyl = app.add_subcommand("cylinders", "cylinder decomposition in a direction");
  cyl->add_option("--direction", dir_str, "direction \"x,y\" in the exact grammar")->required();
  auto* twist = app.add_subcommand("twist", "multi-twist of a periodic direction");
  twist->add_option("--direction", dir_str, "direction \"x,y\"")->required();
  twist->add_option("--sign", sign_str, "left or right")->check(CLI::IsMember({"left", "right"}));

  // auto check
  std::string map_path, deriv_str = "1,0;0,1";
  auto* auto_cmd = app.add_subcommand("auto", "affine automorphisms");
  auto_cmd->fallthrough();
  auto* auto_check = auto_cmd->add_subcommand("check", "validate a polygon map");
  auto_check->add_option("--map", map_path, "polygon map JSON file")->required();
  auto_check->add_option("--derivative", deriv_str, "derivative \"a,b;c,d\"");

  // cover analyze
  std::string w_str, w_edges;
  auto* cover = app.add_subcommand("cover", "Z-cover analysis");
  cover->fallthrough();
  auto* cover_an = cover->add_subcommand("analyze", "certificates for the cover of class w");
  cover_an->add_option("-w,--w", w_str, "class in homology-basis coordinates");
  cover_an->add_option("--w-edges", w_edges, "class as an edge chain");

  // simulate
  double time_budget = 1000;
  bool use_float = false;
  int samples = 0;
  std::string trace_path, start_str;
  auto* sim = app.add_subcommand("simulate", "straight-line flow with the deck cocycle");
  sim->add_option("-w,--w", w_str, "class in homology-basis coordinates");
  sim->add_option("--w-edges", w_edges, "class as an edge chain");
  sim->add_option("--direction", dir_str, "direction \"x,y\"");
  sim->add_option("--time", time_budget, "time budget");
  sim->add_flag("--float", use_float, "guarded double-precision mode");
  sim->add_option("--trace", trace_path, "write (t,polygon,sheet) CSV here");
  sim->add_option("--start", start_str, "start point \"x,y\" (exact mode)");
  sim->add_option("--samples", samples, "recurrence verdict over N random directions (float)");

  // iet
  auto* iet = app.add_subcommand("iet", "first-return interval exchange with cocycle");
  iet->add_option("-w,--w", w_str, "class in homology-basis coordinates");
  iet->add_option("--w-edges", w_edges, "class as an edge chain");
  iet->add_option("--direction", dir_str, "direction \"x,y\"")->required();

  // reproduce-paper
  bool serial = false;
  auto* repro = app.add_subcommand("reproduce-paper", "run the reference reproduction suite");
  repro->add_flag("--serial", serial, "disable the parallel sweep kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 64;
  }

  if (*cat_list) {
    json names = json::array();
    for (const auto& n : catalog_names()) names.push_back(n);
    emit(c, report_envelope("catalog list", nullptr, names));
    return 0;
  }
  if (*cat_get) {
    TranslationSurface s = catalog_get(cat_name);
    emit(c, surface_to_json(s));
    return 0;
  }
  if (*repro) {
    auto checks = reproduce_paper_checks(!serial);
    bool all = true;
    json rows = json::array();
    for (const auto& r : checks) {
      all = all && r.pass;
      fprintf(stderr, "[%s] criterion %s: %s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
              r.title.c_str(), r.seconds, r.detail.c_str());
      rows.push_back({{"id", r.id},
                      {"title", r.title},
                      {"pass", r.pass},
                      {"seconds", r.seconds},
                      {"detail", r.detail}});
    }
    emit(c, report_envelope("reproduce-paper", nullptr, {{"all_pass", all}, {"criteria", rows}}));
    return all ? 0 : 2;
  }

  TranslationSurface s = load_surface(c);

  if (*surf_validate || *surf_info) {
    const auto& inv = s.invariants();
    json cones = json::array();
    for (int m : inv.cone_multiples) cones.push_back(m);
    json result = {{"genus", inv.genus},
                   {"num_marked", inv.num_marked},
                   {"area", quad_str(inv.area)},
                   {"cone_angle_multiples", cones},
                   {"num_vertex_classes", s.num_classes()},
                   {"num_edge_pairs", s.gluing().size()},
                   {"num_polygons", s.num_polygons()},
                   {"field_d", s.field_d()}};
    if (*surf_info) {
      json classes = json::array();
      for (int cl = 0; cl < s.num_classes(); ++cl) {
        json corners = json::array();
        for (const auto& cr : s.corners_of_class(cl)) corners.push_back({cr.poly, cr.v});
        classes.push_back({{"cone_multiple", s.cone_multiple(cl)},
                           {"marked", s.is_marked_class(cl)},
                           {"corners", corners}});
      }
      result["vertex_classes"] = classes;
    }
    emit(c, report_envelope("surface validate", &s, result));
    return 0;
  }

  HomologyModel h = build_homology(s);

  if (*hom_ranks) {
    json result = {{"rk_rel", h.rel_rank},
                   {"rk_abs", h.abs_rank},
                   {"rk_W", h.W.rank()},
                   {"rk_W0", h.W0.rank()},
                   {"k_degree", h.k_degree},
                   {"k_rank_mismatch_warning", h.k_rank_mismatch}};
    emit(c, report_envelope("homology ranks", &s, result));
    return 0;
  }
  if (*hom_basis) {
    json edges = json::array();
    for (int k = 0; k < h.cx.E; ++k) {
      const auto& pr = h.cx.pairs[k];
      edges.push_back({{"id", k},
                       {"rep", {pr.a.poly, pr.a.edge}},
                       {"partner", {pr.b.poly, pr.b.edge}},
                       {"vector", vec_json(s.edge_vector(pr.a))}});
    }
    json basis = json::array();
    for (int i = 0; i < h.rel_rank; ++i) {
      basis.push_back({{"chain", ivec_json(h.rel.lift_rows().row(i))},
                       {"holonomy", vec_json(h.hol_basis[i])}});
    }
    json result = {{"edge_pairs", edges},
                   {"relative_basis", basis},
                   {"pairing_matrix", intmat_json(h.pairing)},
                   {"J_matrix", intmat_json(h.Jmat)},
                   {"W", submodule_json(h.W)},
                   {"W0", submodule_json(h.W0)}};
    emit(c, report_envelope("homology basis", &s, result));
    return 0;
  }

  if (*cyl || *twist) {
    Direction dir = Direction::of(vec_from_string(dir_str));
    DecomposeOutcome dec = decompose(s, h, dir, c.cap);
    if (!dec.periodic) {
      json result = {{"periodic", false}, {"note", "crossing budget exceeded; not certified periodic"}};
      emit(c, report_envelope(*cyl ? "cylinders" : "twist", &s, result));
      return 0;
    }
    json result = cylinders_json(h, dec.dec);
    result["periodic"] = true;
    auto tw = multi_twist(h, dec.dec, sign_str == "right");
    if (tw) {
      result["multi_twist"] = twist_json(*tw);
      if (*twist) {
        result["action_rel"] = intmat_json(tw->action_rel);
        RestrictedActions ra = restrict_actions(h, auto_of_twist(h, *tw));
        result["psi"] = intmat_json(ra.psi);
        result["psi0"] = intmat_json(ra.psi0);
        RankIdentityReport rep = multitwist_rank_identity(h, *tw);
        result["rank_identity"] = {{"lhs", rep.lhs.get_str()},
                                   {"rhs", rep.rhs.get_str()},
                                   {"acts_trivially_on_W", rep.acts_trivially_on_W}};
      }
    } else {
      result["multi_twist"] = nullptr;
      result["incommensurable"] = true;
    }
    emit(c, report_envelope(*cyl ? "cylinders" : "twist", &s, result));
    return 0;
  }

  if (*auto_check) {
    std::ifstream mf(map_path);
    if (!mf) fail(Err::ParseError, "cannot open map file '" + map_path + "'");
    json mj;
    mf >> mj;
    auto pmap = polygon_map_from_json(mj);
    auto semi = deriv_str.find(';');
    if (semi == std::string::npos) fail(Err::ParseError, "derivative must be \"a,b;c,d\"");
    Vec2K row1 = vec_from_string(deriv_str.substr(0, semi));
    Vec2K row2 = vec_from_string(deriv_str.substr(semi + 1));
    Mat2K D{row1.x, row1.y, row2.x, row2.y};
    AffineAuto f = build_auto(s, h, D, pmap);
    RestrictedActions ra = restrict_actions(h, f);
    json rho = json::array();
    for (int r : f.rho) rho.push_back(r);
    json result = {{"valid", true},
                   {"derivative", mat_json(f.derivative)},
                   {"action_rel", intmat_json(f.action_rel)},
                   {"psi", intmat_json(ra.psi)},
                   {"psi0", intmat_json(ra.psi0)},
                   {"rho", rho}};
    emit(c, report_envelope("auto check", &s, result));
    return 0;
  }

  if (*cover_an) {
    ZCoverClass cls = parse_cover_class(h, w_str, w_edges);
    CoverAnalysis an = certify(s, h, cls, default_directions(s.field_d(), 12), c.cap);
    json certs = json::array();
    for (const auto& cert : an.certificates) certs.push_back(certificate_json(cert));
    json twists = json::array();
    for (const auto& t : an.twists) {
      LiftVerdict v = check_lift(h, auto_of_twist(h, t.twist), cls);
      twists.push_back({{"direction", vec_json(t.dir.v)},
                        {"derivative", mat_json(t.twist.derivative)},
                        {"psi_trivial", t.psi_trivial},
                        {"lift", lift_kind_name(v.kind)}});
    }
    json result = {{"w", ivec_json(cls.w)},
                   {"hol_w", vec_json(cls.hol_w)},
                   {"recurrent", cls.recurrent},
                   {"nonelementary_evidence", an.nonelementary_evidence},
                   {"certificates", certs},
                   {"twists", twists}};
    emit(c, report_envelope("cover analyze", &s, result, c.seed));
    return 0;
  }

  if (*sim) {
    ZCoverClass cls = parse_cover_class(h, w_str, w_edges);
    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!trace_path.empty()) {
      trace_file.open(trace_path);
      if (!trace_file) fail(Err::ParseError, "cannot open trace file");
      trace = &trace_file;
    }
    auto report_json = [](const FlowReport& r) {
      return json{{"total_time", r.total_time},
                  {"crossings", r.crossings},
                  {"max_abs_sheet", r.max_abs_sheet},
                  {"returns_to_zero", r.returns_to_zero},
                  {"final_sheet", r.final_sheet},
                  {"drift_slope", r.drift_slope},
                  {"predicted_drift", r.predicted_drift},
                  {"exact_mode", r.exact_mode},
                  {"budget_exhausted", r.budget_exhausted},
                  {"hit_singularity", r.hit_singularity},
                  {"direction", {r.dir_x, r.dir_y}}};
    };
    if (samples > 0) {
      std::mt19937_64 rng(c.seed);
      std::vector<std::pair<double, double>> dirs;
      for (int i = 0; i < samples; ++i) {
        // slopes from square roots of non-square rationals: never in the field
        double sl = std::sqrt(2.0 + double(rng() % 1000) / 331.0);
        dirs.push_back({1.0, sl});
      }
      auto reports = simulate_batch(s, h, cls, dirs, time_budget, true);
      RecurrenceSummary sum = recurrence_verdict(reports);
      json runs = json::array();
      for (const auto& r : reports) runs.push_back(report_json(r));
      json result = {{"verdict", recurrence_call_name(sum.call)},
                     {"note", sum.note},
                     {"used", sum.used},
                     {"max_abs_slope", sum.max_abs_slope},
                     {"min_returns", sum.min_returns},
                     {"runs", runs}};
      emit(c, report_envelope("simulate --samples", &s, result, c.seed));
      return 0;
    }
    FlowReport r;
    if (use_float) {
      auto comma = dir_str.find(',');
      if (comma == std::string::npos) fail(Err::ParseError, "direction must be \"x,y\"");
      double dx = std::stod(dir_str.substr(0, comma)), dy = std::stod(dir_str.substr(comma + 1));
      r = simulate_float(s, h, cls, dx, dy, time_budget, 1e-9, trace);
    } else {
      Vec2K dir = vec_from_string(dir_str);
      std::optional<Vec2K> start;
      if (!start_str.empty()) start = vec_from_string(start_str);
      Rat T(time_budget);
      r = simulate(s, h, cls, dir, T, start ? &*start : nullptr, trace);
    }
    emit(c, report_envelope("simulate", &s, report_json(r), c.seed));
    return 0;
  }

  if (*iet) {
    ZCoverClass cls = parse_cover_class(h, w_str, w_edges);
    ReturnIET r = first_return_iet(s, h, cls, Direction::of(vec_from_string(dir_str)));
    json pieces = json::array();
    for (size_t i = 0; i < r.pieces.size(); ++i) {
      const auto& p = r.pieces[i];
      pieces.push_back({{"src_pair", p.src_pair},
                        {"y0", quad_str(p.y0)},
                        {"y1", quad_str(p.y1)},
                        {"dst_pair", p.dst_pair},
                        {"dst_y0", quad_str(p.dst_y0)},
                        {"cocycle", p.f.get_str()},
                        {"image_slot", r.permutation[i]}});
    }
    json section = json::array();
    for (const auto& se : r.section)
      section.push_back({{"pair", se.pair}, {"ylo", quad_str(se.ylo)}, {"yhi", quad_str(se.yhi)}});
    json result = {{"section", section},
                   {"pieces", pieces},
                   {"total_length", quad_str(r.total_length)},
                   {"sum_mu_f", quad_str(r.sum_mu_f)},
                   {"hol_perp", quad_str(r.hol_perp)}};
    emit(c, report_envelope("iet", &s, result));
    return 0;
  }

  fprintf(stderr, "no subcommand executed\n");
  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    json err = {{"error", err_name(e.code())}, {"message", e.what()}};
    fprintf(stderr, "%s\n", err.dump(2).c_str());
    return e.code() == Err::ParseError ? 65 : 2;
  } catch (const std::exception& e) {
    json err = {{"error", "Internal"}, {"message", e.what()}};
    fprintf(stderr, "%s\n", err.dump(2).c_str());
    return 2;
  }
}
