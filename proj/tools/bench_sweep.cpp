// benchmark: OpenMP sweep/simulation kernels against the serial reference
#include <chrono>
#include <cstdio>

#include "zc/catalog.hpp"
#include "zc/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace zc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  printf("OpenMP not available; both runs are serial\n");
#endif

  for (const char* name : {"eierlegende_wollmilchsau", "octagon_double_cover"}) {
    TranslationSurface s = catalog_get(name);
    HomologyModel h = build_homology(s);
    auto dirs = default_directions(s.field_d(), 24);

    auto t0 = Clock::now();
    auto serial = sweep_directions(s, h, dirs, 100000, false);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto par = sweep_directions(s, h, dirs, 100000, true);
    double tp = seconds_since(t0);

    bool identical = serial.size() == par.size();
    int periodic = 0;
    for (size_t i = 0; i < serial.size() && identical; ++i) {
      identical = serial[i].periodic == par[i].periodic &&
                  serial[i].twist.has_value() == par[i].twist.has_value();
      if (identical && serial[i].twist)
        identical = serial[i].twist->derivative == par[i].twist->derivative;
      periodic += serial[i].periodic;
    }
    printf("%-28s sweep of %zu directions (%d periodic): serial %.3fs, parallel %.3fs, x%.2f, %s\n",
           name, dirs.size(), periodic, ts, tp, ts / tp, identical ? "results identical" : "MISMATCH");
  }

  {
    TranslationSurface s = catalog_get("domino_torus");
    TranslationSurface s2 = rebase_field(s, 2);
    HomologyModel h = build_homology(s2);
    IVec w(h.rel_rank, Int(0));
    w[0] = 1;
    ZCoverClass c = canonicalize(h, w);
    std::vector<std::pair<double, double>> dirs;
    for (int i = 0; i < 24; ++i) dirs.push_back({1.0, std::sqrt(2.0 + i / 7.0)});

    auto t0 = Clock::now();
    auto serial = simulate_batch(s2, h, c, dirs, 2e4, false);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto par = simulate_batch(s2, h, c, dirs, 2e4, true);
    double tp = seconds_since(t0);
    bool identical = serial.size() == par.size();
    for (size_t i = 0; i < serial.size() && identical; ++i)
      identical = serial[i].crossings == par[i].crossings &&
                  serial[i].final_sheet == par[i].final_sheet;
    printf("%-28s batch of %zu simulations: serial %.3fs, parallel %.3fs, x%.2f, %s\n",
           "domino_torus (float flow)", dirs.size(), ts, tp, ts / tp,
           identical ? "results identical" : "MISMATCH");
  }
  return 0;
}
