#include "mintent/minjerk.hpp"

#include <cmath>

namespace mintent {

double min_jerk_blend(double tau) {
  const double t3 = tau * tau * tau;
  return t3 * (10.0 + tau * (-15.0 + 6.0 * tau));
}

double min_jerk_blend_vel(double tau) {
  const double t2 = tau * tau;
  return t2 * (30.0 + tau * (-60.0 + 30.0 * tau));
}

double min_jerk_blend_acc(double tau) {
  return tau * (60.0 + tau * (-180.0 + 120.0 * tau));
}

double min_jerk_blend_jerk(double tau) {
  return 60.0 + tau * (-360.0 + 360.0 * tau);
}

MotionState min_jerk_evaluate(const MinJerkSegment& seg, double t) {
  if (seg.duration_s <= 0.0) throw ConfigError("min-jerk segment needs duration > 0");
  if (t < 0.0 || t > seg.duration_s) {
    throw ConfigError("min-jerk query t=" + fmt_double(t) + " outside [0, " +
                      fmt_double(seg.duration_s) + "]");
  }
  const double tau = t / seg.duration_s;
  const Vec3 delta = seg.goal - seg.start;
  MotionState out;
  out.position = seg.start + delta * min_jerk_blend(tau);
  out.velocity = delta * (min_jerk_blend_vel(tau) / seg.duration_s);
  out.acceleration = delta * (min_jerk_blend_acc(tau) / (seg.duration_s * seg.duration_s));
  return out;
}

SampledPath min_jerk_sample(const MinJerkSegment& seg, double rate_hz) {
  if (rate_hz <= 0.0) throw ConfigError("sample rate must be positive");
  if (seg.duration_s <= 0.0) throw ConfigError("min-jerk segment needs duration > 0");
  const int n = std::max(2, static_cast<int>(std::lround(seg.duration_s * rate_hz)) + 1);
  const double step = seg.duration_s / static_cast<double>(n - 1);
  SampledPath path;
  path.times.reserve(n);
  path.positions.reserve(n);
  for (int i = 0; i < n; ++i) {
    // last point lands exactly on the duration
    const double t = (i == n - 1) ? seg.duration_s : step * static_cast<double>(i);
    path.times.push_back(t);
    path.positions.push_back(min_jerk_evaluate(seg, t).position);
  }
  return path;
}

}  // namespace mintent
