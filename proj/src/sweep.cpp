#include "zc/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zc {

std::vector<DirectionReport> sweep_directions(const TranslationSurface& s, const HomologyModel& h,
                                              const std::vector<Direction>& dirs, long cap,
                                              bool parallel) {
  std::vector<DirectionReport> out(dirs.size());
  auto work = [&](int i) {
    DirectionReport& r = out[i];
    r.dir = dirs[i];
    DecomposeOutcome dec = decompose(s, h, dirs[i], cap);
    r.periodic = dec.periodic;
    if (!dec.periodic) return;
    r.twist = multi_twist(h, dec.dec, /*right=*/true);
    r.dec = std::move(dec.dec);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < int(dirs.size()); ++i) work(i);
  } else {
    for (int i = 0; i < int(dirs.size()); ++i) work(i);
  }
  return out;
}

std::vector<FlowReport> simulate_batch(const TranslationSurface& s, const HomologyModel& h,
                                       const ZCoverClass& c,
                                       const std::vector<std::pair<double, double>>& dirs, double T,
                                       bool parallel) {
  std::vector<FlowReport> out(dirs.size());
  auto work = [&](int i) {
    out[i] = simulate_float(s, h, c, dirs[i].first, dirs[i].second, T);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < int(dirs.size()); ++i) work(i);
  } else {
    for (int i = 0; i < int(dirs.size()); ++i) work(i);
  }
  return out;
}

std::vector<Direction> default_directions(long field_d, int count) {
  std::vector<Direction> out;
  auto add = [&](Quad x, Quad y) { out.push_back(Direction::of({std::move(x), std::move(y)})); };
  add(1, 0);
  add(0, 1);
  add(1, 1);
  add(Quad(1), Quad(-1));
  if (field_d != 0) {
    Quad r = Quad::sqrt_d(field_d);
    add(Quad(1) + r, Quad(1));
    add(Quad(1), Quad(1) + r);
    add(Quad(1) + r, Quad(-1));
    add(r, Quad(1));
  }
  // primitive rational slopes in a deterministic spiral
  for (int q = 1; int(out.size()) < count && q <= 16; ++q)
    for (int p = 1; p <= q + 1 && int(out.size()) < count; ++p) {
      if (std::gcd(p, q) != 1 || p == q) continue;
      add(Quad(q), Quad(p));
      if (int(out.size()) < count) add(Quad(p), Quad(q));
      if (int(out.size()) < count) add(Quad(q), Quad(-p));
    }
  return out;
}

}  // namespace zc
