#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zc/catalog.hpp"
#include "zc/sweep.hpp"

using namespace zc;

// the OpenMP kernels must agree with the serial reference exactly

TEST_CASE("direction sweep: parallel equals serial") {
  for (const char* name : {"eierlegende_wollmilchsau", "octagon_double_cover"}) {
    TranslationSurface s = catalog_get(name);
    HomologyModel h = build_homology(s);
    auto dirs = default_directions(s.field_d(), 12);
    CHECK(dirs.size() >= 12);
    auto serial = sweep_directions(s, h, dirs, 20000, false);
    auto parallel = sweep_directions(s, h, dirs, 20000, true);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].periodic == parallel[i].periodic);
      CHECK(serial[i].twist.has_value() == parallel[i].twist.has_value());
      if (serial[i].twist && parallel[i].twist) {
        CHECK(serial[i].twist->derivative == parallel[i].twist->derivative);
        CHECK(serial[i].twist->action_rel == parallel[i].twist->action_rel);
        CHECK(serial[i].twist->t == parallel[i].twist->t);
      }
      if (serial[i].dec && parallel[i].dec) {
        REQUIRE(serial[i].dec->cyls.size() == parallel[i].dec->cyls.size());
        for (size_t c = 0; c < serial[i].dec->cyls.size(); ++c) {
          CHECK(serial[i].dec->cyls[c].circumference == parallel[i].dec->cyls[c].circumference);
          CHECK(serial[i].dec->cyls[c].height == parallel[i].dec->cyls[c].height);
          CHECK(serial[i].dec->cyls[c].core_rel == parallel[i].dec->cyls[c].core_rel);
        }
      }
    }
  }
}

TEST_CASE("simulation batch: parallel equals serial") {
  TranslationSurface s = rebase_field(catalog_get("domino_torus"), 2);
  HomologyModel h = build_homology(s);
  IVec w(h.rel_rank, Int(0));
  w[0] = 1;
  ZCoverClass c = canonicalize(h, w);
  std::vector<std::pair<double, double>> dirs;
  for (int i = 0; i < 8; ++i) dirs.push_back({1.0, std::sqrt(2.0 + i * 0.37)});
  auto serial = simulate_batch(s, h, c, dirs, 5e3, false);
  auto parallel = simulate_batch(s, h, c, dirs, 5e3, true);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].crossings == parallel[i].crossings);
    CHECK(serial[i].final_sheet == parallel[i].final_sheet);
    CHECK(serial[i].max_abs_sheet == parallel[i].max_abs_sheet);
    CHECK(serial[i].returns_to_zero == parallel[i].returns_to_zero);
    CHECK(serial[i].drift_slope == doctest::Approx(parallel[i].drift_slope));
  }
}
