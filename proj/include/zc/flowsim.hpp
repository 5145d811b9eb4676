#pragma once

#include <ostream>

#include "zc/zcover.hpp"

namespace zc {

// Deck cocycle of the cover M~_w: crossing edge pair e from its right side to
// its left side changes the sheet by inc[e] (the coefficient of the canonical
// edge-chain representative of w).
struct CocycleSpec {
  IVec inc;
};

CocycleSpec cocycle_of(const HomologyModel& h, const ZCoverClass& c);

struct FlowReport {
  double total_time = 0;
  long crossings = 0;
  long max_abs_sheet = 0;
  long returns_to_zero = 0;
  long final_sheet = 0;
  double drift_slope = 0;      // least-squares slope of sheet against time
  double predicted_drift = 0;  // <hol(w), (dir_y, -dir_x)> / Area, per unit time
  bool exact_mode = false;
  bool budget_exhausted = false;
  bool hit_singularity = false;
  bool excluded_periodic = false;  // set by recurrence sampling when dir is periodic
  double dir_x = 0, dir_y = 0;
};

// exact straight-line flow; dir over the surface field, time is the ray
// parameter (position = start + t * dir)
FlowReport simulate(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                    const Vec2K& dir, const Rat& T, const Vec2K* start = nullptr,
                    std::ostream* trace = nullptr, long max_crossings = 10000000);

// guarded double-precision flow at unit speed
FlowReport simulate_float(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                          double dir_x, double dir_y, double T, double eps = 1e-9,
                          std::ostream* trace = nullptr, long max_crossings = 100000000);

struct IETPiece {
  int src_pair = -1;
  Quad y0, y1;      // subinterval of the source edge (rotated-frame heights)
  int dst_pair = -1;
  Quad dst_y0, dst_y1;
  Int f;            // cocycle value of the return
};

struct ReturnIET {
  Direction dir;
  Mat2K rot;
  struct SectionEdge {
    int pair = -1;
    Quad ylo, yhi;
  };
  std::vector<SectionEdge> section;  // all edges transversal to the flow
  std::vector<IETPiece> pieces;      // sorted by (src_pair, y0)
  std::vector<int> permutation;      // slot of each piece in the image order
  Quad total_length;
  Quad sum_mu_f;   // sum of mu(I_j) * f_j
  Quad hol_perp;   // exact prediction: -(R hol(w))_y
};

ReturnIET first_return_iet(const TranslationSurface& s, const HomologyModel& h, const ZCoverClass& c,
                           const Direction& dir);

enum class RecurrenceCall { consistent_with_recurrent, transient, inconclusive };
const char* recurrence_call_name(RecurrenceCall c);

struct RecurrenceSummary {
  RecurrenceCall call = RecurrenceCall::inconclusive;
  int used = 0, excluded = 0;
  double max_abs_slope = 0;
  long min_returns = 0;
  std::string note;  // heuristic evidence, never a proof
};

RecurrenceSummary recurrence_verdict(const std::vector<FlowReport>& reports,
                                     double slope_tol = 0.01, long min_returns = 100,
                                     double match_tol = 0.02);

}  // namespace zc
