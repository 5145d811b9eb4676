#pragma once

#include <json.hpp>

#include "zc/automorph.hpp"
#include "zc/surface.hpp"

namespace zc {

using json = nlohmann::json;

// {"schema": "...", "field_d": d, "polygons": [[["x","y"],...],...],
//  "gluings": [[[p,e],[p,e]],...], "marked": "all_vertices"|[[p,v],...],
//  "metadata": {"name":..., "veech_group_is_lattice": true|false|"unknown"}}
SurfaceData surface_from_json(const json& j);
json surface_to_json(const TranslationSurface& s);

TranslationSurface read_surface(std::istream& in);
TranslationSurface read_surface_file(const std::string& path_or_dash);

// canonical serialization: sorted keys, two-space indent, trailing newline
std::string canonical_dump(const json& j);
std::string surface_hash(const TranslationSurface& s);  // fnv1a-64 of the canonical form

json report_envelope(const std::string& command, const TranslationSurface* s, json result,
                     std::optional<unsigned long> seed = std::nullopt);

std::vector<PolygonMapEntry> polygon_map_from_json(const json& j);

json vec_json(const Vec2K& v);
json mat_json(const Mat2K& m);
json ivec_json(const IVec& v);
json submodule_json(const Submodule& m);
Vec2K vec_from_string(const std::string& s);  // "x,y" in the quad grammar

}  // namespace zc
