#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mintent/dataset.hpp"

namespace mintent {

// ---- fixation targets --------------------------------------------------------

enum class TargetKind { InitialObject, PlaceMarker, PartnerFace, HandoverPoint };

struct FixationTarget {
  TargetKind kind{TargetKind::InitialObject};
  Direction direction{Direction::Middle};  // meaningless for InitialObject
  Vec3 point;

  bool same_target(const FixationTarget& o) const {
    if (kind != o.kind) return false;
    return kind == TargetKind::InitialObject || direction == o.direction;
  }
};

std::string target_kind_name(TargetKind k);
FixationTarget make_target(TargetKind kind, Direction d, const SceneGeometry& scene);

// All ten scene targets, initial object first.
std::vector<FixationTarget> scene_targets(const SceneGeometry& scene);

// Nearest scene target within the assignment radius, if any.
std::optional<FixationTarget> nearest_scene_target(const Vec3& p, const SceneGeometry& scene,
                                                   double radius_m);

// ---- fixation detection --------------------------------------------------------

struct Fixation {
  double start_s{0.0};
  double end_s{0.0};
  Vec3 centroid;
  double dispersion_m{0.0};

  double duration() const { return end_s - start_s; }
};

struct FixationParams {
  double dispersion_threshold_m{0.03};  // max per-axis extent inside a fixation
  double min_duration_s{0.1};
};

// Dispersion-threshold identification (I-DT): maximal windows whose spatial
// extent stays under the threshold and that last at least min_duration.
std::vector<Fixation> detect_fixations(const Stream& gaze, const FixationParams& params);

// ---- gaze scripts ----------------------------------------------------------------

// GoalOnly belongs to placing; the other four are the giving patterns:
// hand only, face only, hand then face, face then hand.
enum class GazePattern { GoalOnly, HandOnly, FaceOnly, HandThenFace, FaceThenHand };

std::string gaze_pattern_name(GazePattern p);
GazePattern gaze_pattern_from_name(const std::string& name);

struct GazeEvent {
  double t_s{0.0};
  FixationTarget target;
};

struct GazeScript {
  std::vector<GazeEvent> events;  // starts with InitialObject at t=0
  GazePattern pattern{GazePattern::GoalOnly};
  ActionLabel label;

  // active target at time t (last event with t_s <= t)
  const FixationTarget& target_at(double t) const;
  std::string to_json(const std::string& config_hash = "") const;
};

struct GazeTiming {
  double pickup_s{0.5};
  double dwell_s{0.4};
  int switch_repeats{1};  // # of post-pickup targets beyond the first, for switching patterns
};

// Deterministic event sequence for one (label, pattern) pair. GoalOnly is only
// compatible with placing, the rest only with giving.
GazeScript generate_script(const ActionLabel& label, GazePattern pattern,
                           const GazeTiming& timing, const SceneGeometry& scene);

// ---- pattern classification ------------------------------------------------------

struct PatternClassification {
  std::optional<GazePattern> pattern;
  std::vector<std::size_t> unassigned;  // fixation indices with no target in radius
  std::string diagnostics;
};

PatternClassification classify_pattern(const std::vector<Fixation>& fixations,
                                       const SceneGeometry& scene, ActionType action,
                                       double assignment_radius_m = 0.1);

// ---- eye/head timelines --------------------------------------------------------------

struct EyeHeadConfig {
  double head_lag_s{0.25};
  double head_rate_limit_rad_s{3.0};
  double sample_rate_hz{120.0};
  double settle_tail_s{0.5};  // extra time after the last switch
};

struct EyeHeadTimeline {
  Stream eye_direction;   // unit vectors, steps at each switch
  Stream head_direction;  // unit vectors, lagged and slew-limited
};

// Saccades are instantaneous at stream resolution; the head tracks the same
// target sequence delayed by head_lag and limited to head_rate_limit.
EyeHeadTimeline eye_head_timeline(const GazeScript& script, const EyeHeadConfig& config,
                                  const Vec3& viewpoint, double duration_s = 0.0);

// Gaze-point stream a script would produce: active target plus isotropic noise.
Stream synthesize_gaze_stream(const GazeScript& script, double duration_s, double rate_hz,
                              double noise_std_m, Rng& rng);

}  // namespace mintent
