#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zc/catalog.hpp"
#include "zc/surface.hpp"

using namespace zc;

namespace {

SurfaceData unit_square_data() {
  SurfaceData d;
  Polygon sq;
  sq.v = {{Quad(0), Quad(0)}, {Quad(1), Quad(0)}, {Quad(1), Quad(1)}, {Quad(0), Quad(1)}};
  d.polygons = {sq};
  d.gluing = {{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
  d.marked.all_vertices = true;
  return d;
}

}  // namespace

TEST_CASE("square torus validates") {
  TranslationSurface s = TranslationSurface::build(unit_square_data());
  const auto& inv = s.invariants();
  CHECK(inv.genus == 1);
  CHECK(inv.num_marked == 1);
  CHECK(inv.area == Quad(1));
  REQUIRE(inv.cone_multiples.size() == 1);
  CHECK(inv.cone_multiples[0] == 1);
}

TEST_CASE("validation rejects bad inputs") {
  SUBCASE("clockwise polygon") {
    SurfaceData d = unit_square_data();
    std::reverse(d.polygons[0].v.begin(), d.polygons[0].v.end());
    CHECK_THROWS_WITH_AS(TranslationSurface::build(d), doctest::Contains("counterclockwise"), Error);
  }
  SUBCASE("edge length mismatch") {
    SurfaceData d = unit_square_data();
    d.polygons[0].v[1] = {Quad(2), Quad(0)};  // stretch the bottom edge only
    CHECK_THROWS_AS(TranslationSurface::build(d), Error);
  }
  SUBCASE("unglued edge") {
    SurfaceData d = unit_square_data();
    d.gluing.pop_back();
    try {
      TranslationSurface::build(d);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Err::NotGlued);
    }
  }
  SUBCASE("edge glued to itself") {
    SurfaceData d = unit_square_data();
    d.gluing = {{EdgeRef{0, 0}, EdgeRef{0, 0}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
    CHECK_THROWS_AS(TranslationSurface::build(d), Error);
  }
  SUBCASE("disconnected surface") {
    SurfaceData d = unit_square_data();
    d.polygons.push_back(d.polygons[0]);
    d.gluing.push_back({EdgeRef{1, 0}, EdgeRef{1, 2}});
    d.gluing.push_back({EdgeRef{1, 1}, EdgeRef{1, 3}});
    try {
      TranslationSurface::build(d);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Err::Disconnected);
    }
  }
  SUBCASE("self-intersecting polygon") {
    SurfaceData d = unit_square_data();
    std::swap(d.polygons[0].v[2], d.polygons[0].v[3]);  // bowtie
    CHECK_THROWS_AS(TranslationSurface::build(d), Error);
  }
  SUBCASE("singularity outside the marked set") {
    TranslationSurface ew = catalog_get("eierlegende_wollmilchsau");
    SurfaceData d = ew.data();
    d.marked.all_vertices = false;
    d.marked.corners = {ew.corners_of_class(0)[0]};  // only one of the four cone points
    try {
      TranslationSurface::build(d);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Err::UnpuncturedSingularity);
    }
  }
}

TEST_CASE("catalog invariants and Gauss-Bonnet") {
  for (const auto& entry : catalog_entries()) {
    TranslationSurface s = entry.builder();
    const auto& inv = s.invariants();
    CHECK(inv.genus == entry.expected.genus);
    CHECK(inv.num_marked == entry.expected.num_marked);
    std::vector<int> cones = inv.cone_multiples;
    std::sort(cones.begin(), cones.end());
    CHECK(cones == entry.expected.cone_multiples);
    int total = 0;
    for (int c : inv.cone_multiples) total += c - 1;
    CHECK(total == 2 * inv.genus - 2);
    CHECK(inv.area.sign() > 0);
  }
}

TEST_CASE("apply_matrix preserves combinatorics and scales area") {
  TranslationSurface t = TranslationSurface::build(unit_square_data());
  CHECK(apply_matrix(t, Mat2K::identity()).invariants().area == Quad(1));
  TranslationSurface st = apply_matrix(t, Mat2K{Quad(2), Quad(0), Quad(0), Quad(1)});
  CHECK(st.invariants().area == Quad(2));
  CHECK(st.invariants().genus == 1);

  TranslationSurface oc = catalog_get("octagon_double_cover");
  Mat2K shear{Quad(1), Quad(1), Quad(0), Quad(1)};
  TranslationSurface os = apply_matrix(oc, shear);
  CHECK(os.invariants().genus == oc.invariants().genus);
  CHECK(os.invariants().cone_multiples == oc.invariants().cone_multiples);
  CHECK(os.invariants().num_marked == oc.invariants().num_marked);
  CHECK(os.invariants().area == oc.invariants().area);
  CHECK_THROWS_AS(apply_matrix(t, Mat2K{Quad(1), Quad(1), Quad(1), Quad(1)}), Error);
}

TEST_CASE("rebase_field embeddings") {
  TranslationSurface t = TranslationSurface::build(unit_square_data());
  TranslationSurface t2 = rebase_field(t, 2);
  CHECK(t2.field_d() == 2);
  CHECK(t2.invariants().genus == 1);
  CHECK(t2.invariants().area == Quad(1));
  TranslationSurface oc = catalog_get("octagon_double_cover");
  CHECK(rebase_field(oc, 2).field_d() == 2);  // identity
  CHECK_THROWS_AS(rebase_field(oc, 5), Error);
  TranslationSurface ew5 = rebase_field(catalog_get("eierlegende_wollmilchsau"), 5);
  CHECK(ew5.invariants().genus == 3);
}

TEST_CASE("angular predicates") {
  Vec2K e{Quad(1), Quad(0)}, n{Quad(0), Quad(1)}, w{Quad(-1), Quad(0)}, sdir{Quad(0), Quad(-1)};
  CHECK(sector_contains_incl_excl(e, n, e));
  CHECK(!sector_contains_incl_excl(e, n, n));
  CHECK(sector_contains_excl_incl(e, n, n));
  CHECK(!sector_contains_excl_incl(e, n, e));
  CHECK(sector_contains_incl_excl(n, sdir, w));
  CHECK(!sector_contains_incl_excl(sdir, n, w));
  CHECK(angle_class(e, n) == 1);
  CHECK(angle_class(e, w) == 2);
  CHECK(angle_class(e, sdir) == 3);
  CHECK(same_ray(e, Vec2K{Quad(5), Quad(0)}));
}
