#include "zc/surface_json.hpp"

#include <fstream>
#include <iostream>

namespace zc {

namespace {
constexpr const char* kSurfaceSchema = "zcov-surface/1";
constexpr const char* kReportSchema = "zcov-report/1";
constexpr const char* kToolVersion = "0.1.0";
}  // namespace

SurfaceData surface_from_json(const json& j) {
  if (!j.is_object()) fail(Err::ParseError, "surface file must be a JSON object");
  SurfaceData d;
  d.field_d = j.value("field_d", 0L);
  if (!j.contains("polygons") || !j["polygons"].is_array())
    fail(Err::ParseError, "surface file needs a polygons array");
  for (const auto& pj : j["polygons"]) {
    Polygon p;
    for (const auto& vj : pj) {
      if (!vj.is_array() || vj.size() != 2) fail(Err::ParseError, "vertex must be [x, y]");
      p.v.push_back({parse_quad(vj[0].get<std::string>()), parse_quad(vj[1].get<std::string>())});
    }
    d.polygons.push_back(std::move(p));
  }
  if (!j.contains("gluings") || !j["gluings"].is_array())
    fail(Err::ParseError, "surface file needs a gluings array");
  for (const auto& gj : j["gluings"]) {
    if (!gj.is_array() || gj.size() != 2) fail(Err::ParseError, "gluing must pair two edges");
    auto ref = [](const json& e) {
      return EdgeRef{e.at(0).get<int>(), e.at(1).get<int>()};
    };
    d.gluing.push_back({ref(gj[0]), ref(gj[1])});
  }
  if (j.contains("marked")) {
    const auto& m = j["marked"];
    if (m.is_string() && m.get<std::string>() == "all_vertices") {
      d.marked.all_vertices = true;
    } else if (m.is_array()) {
      d.marked.all_vertices = false;
      for (const auto& c : m) d.marked.corners.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
    } else {
      fail(Err::ParseError, "marked must be \"all_vertices\" or a corner list");
    }
  }
  if (j.contains("metadata")) {
    const auto& m = j["metadata"];
    d.metadata.name = m.value("name", std::string());
    if (m.contains("veech_group_is_lattice")) {
      const auto& f = m["veech_group_is_lattice"];
      if (f.is_boolean())
        d.metadata.veech_group_is_lattice = f.get<bool>() ? LatticeFlag::yes : LatticeFlag::no;
      else
        d.metadata.veech_group_is_lattice = LatticeFlag::unknown;
    }
  }
  return d;
}

json surface_to_json(const TranslationSurface& s) {
  json j;
  j["schema"] = kSurfaceSchema;
  j["field_d"] = s.field_d();
  json polys = json::array();
  for (const auto& p : s.polygons()) {
    json pj = json::array();
    for (const auto& v : p.v) pj.push_back({quad_str(v.x), quad_str(v.y)});
    polys.push_back(pj);
  }
  j["polygons"] = polys;
  json gl = json::array();
  for (const auto& g : s.gluing())
    gl.push_back({{g.a.poly, g.a.edge}, {g.b.poly, g.b.edge}});
  j["gluings"] = gl;
  if (s.marked_spec().all_vertices) {
    j["marked"] = "all_vertices";
  } else {
    json mk = json::array();
    for (const auto& c : s.marked_spec().corners) mk.push_back({c.poly, c.v});
    j["marked"] = mk;
  }
  json meta;
  meta["name"] = s.metadata().name;
  switch (s.metadata().veech_group_is_lattice) {
    case LatticeFlag::yes: meta["veech_group_is_lattice"] = true; break;
    case LatticeFlag::no: meta["veech_group_is_lattice"] = false; break;
    case LatticeFlag::unknown: meta["veech_group_is_lattice"] = "unknown"; break;
  }
  j["metadata"] = meta;
  return j;
}

TranslationSurface read_surface(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Err::ParseError, std::string("bad JSON: ") + e.what());
  }
  return TranslationSurface::build(surface_from_json(j));
}

TranslationSurface read_surface_file(const std::string& path) {
  if (path.empty() || path == "-") return read_surface(std::cin);
  std::ifstream in(path);
  if (!in) fail(Err::ParseError, "cannot open '" + path + "'");
  return read_surface(in);
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string surface_hash(const TranslationSurface& s) {
  std::string doc = canonical_dump(surface_to_json(s));
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : doc) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  snprintf(buf, sizeof(buf), "fnv1a:%016llx", h);
  return buf;
}

json report_envelope(const std::string& command, const TranslationSurface* s, json result,
                     std::optional<unsigned long> seed) {
  json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  if (s) j["surface_hash"] = surface_hash(*s);
  if (seed) j["seed"] = *seed;
  j["result"] = std::move(result);
  return j;
}

std::vector<PolygonMapEntry> polygon_map_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object() && j.contains("map")) arr = &j["map"];
  if (!arr->is_array()) fail(Err::ParseError, "polygon map must be an array");
  std::vector<PolygonMapEntry> out;
  for (const auto& e : *arr) {
    PolygonMapEntry m;
    m.src = e.at("source_polygon").get<int>();
    m.dst = e.at("target_polygon").get<int>();
    const auto& off = e.at("offset");
    m.offset = {parse_quad(off.at(0).get<std::string>()), parse_quad(off.at(1).get<std::string>())};
    m.vshift = e.value("vertex_shift", 0);
    out.push_back(m);
  }
  return out;
}

json vec_json(const Vec2K& v) { return json::array({quad_str(v.x), quad_str(v.y)}); }

json mat_json(const Mat2K& m) {
  return json::array({json::array({quad_str(m.a11), quad_str(m.a12)}),
                      json::array({quad_str(m.a21), quad_str(m.a22)})});
}

json ivec_json(const IVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json submodule_json(const Submodule& m) {
  json rows = json::array();
  for (int i = 0; i < m.rank(); ++i) rows.push_back(ivec_json(m.basis.row(i)));
  return {{"ambient_rank", m.ambient}, {"rank", m.rank()}, {"basis", rows}};
}

Vec2K vec_from_string(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) fail(Err::ParseError, "direction must be \"x,y\"");
  return {parse_quad(s.substr(0, comma)), parse_quad(s.substr(comma + 1))};
}

}  // namespace zc
