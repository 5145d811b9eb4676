#pragma once

#include "zc/cylinders.hpp"
#include "zc/flowsim.hpp"

namespace zc {

struct DirectionReport {
  Direction dir;
  bool periodic = false;
  std::optional<CylinderDecomposition> dec;
  std::optional<MultiTwist> twist;  // right twist, when the moduli are commensurable
};

// Decompose many directions. The parallel path (OpenMP) and the serial path
// produce identical results; directions are independent tasks.
std::vector<DirectionReport> sweep_directions(const TranslationSurface& s, const HomologyModel& h,
                                              const std::vector<Direction>& dirs, long cap,
                                              bool parallel);

// Independent float-mode simulations over many directions, merged in order.
std::vector<FlowReport> simulate_batch(const TranslationSurface& s, const HomologyModel& h,
                                       const ZCoverClass& c,
                                       const std::vector<std::pair<double, double>>& dirs, double T,
                                       bool parallel);

// default sweep list: >= 12 primitive directions, plus field-specific ones
std::vector<Direction> default_directions(long field_d, int count = 12);

}  // namespace zc
