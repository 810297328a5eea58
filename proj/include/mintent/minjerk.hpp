#pragma once

#include <vector>

#include "mintent/common.hpp"

namespace mintent {

// Rest-to-rest point-to-point segment. The unique minimum-jerk solution with
// zero boundary velocity/acceleration is the quintic blend
//   s(tau) = 10 tau^3 - 15 tau^4 + 6 tau^5.
struct MinJerkSegment {
  Vec3 start;
  Vec3 goal;
  double duration_s{1.0};
};

struct MotionState {
  Vec3 position;
  Vec3 velocity;
  Vec3 acceleration;
};

double min_jerk_blend(double tau);         // s
double min_jerk_blend_vel(double tau);     // ds/dtau
double min_jerk_blend_acc(double tau);     // d2s/dtau2
double min_jerk_blend_jerk(double tau);    // d3s/dtau3

// t must lie in [0, duration]; throws ConfigError otherwise.
MotionState min_jerk_evaluate(const MinJerkSegment& seg, double t);

struct SampledPath {
  std::vector<double> times;
  std::vector<Vec3> positions;
};

// Uniform grid that includes both endpoints; the step is duration/(n-1) with
// n = round(duration * rate) + 1 (at least 2 samples).
SampledPath min_jerk_sample(const MinJerkSegment& seg, double rate_hz);

}  // namespace mintent
