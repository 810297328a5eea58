#include "mintent/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace mintent {

std::string target_kind_name(TargetKind k) {
  switch (k) {
    case TargetKind::InitialObject: return "initial_object";
    case TargetKind::PlaceMarker: return "place_marker";
    case TargetKind::PartnerFace: return "partner_face";
    case TargetKind::HandoverPoint: return "handover_point";
  }
  return "?";
}

FixationTarget make_target(TargetKind kind, Direction d, const SceneGeometry& scene) {
  FixationTarget t;
  t.kind = kind;
  t.direction = d;
  switch (kind) {
    case TargetKind::InitialObject: t.point = scene.ball_start; break;
    case TargetKind::PlaceMarker: t.point = scene.place_marker(d); break;
    case TargetKind::PartnerFace: t.point = scene.partner_face(d); break;
    case TargetKind::HandoverPoint: t.point = scene.handover_point(d); break;
  }
  return t;
}

std::vector<FixationTarget> scene_targets(const SceneGeometry& scene) {
  std::vector<FixationTarget> out;
  out.push_back(make_target(TargetKind::InitialObject, Direction::Middle, scene));
  for (auto kind : {TargetKind::PlaceMarker, TargetKind::PartnerFace, TargetKind::HandoverPoint}) {
    for (auto d : {Direction::Left, Direction::Middle, Direction::Right}) {
      out.push_back(make_target(kind, d, scene));
    }
  }
  return out;
}

std::optional<FixationTarget> nearest_scene_target(const Vec3& p, const SceneGeometry& scene,
                                                   double radius_m) {
  std::optional<FixationTarget> best;
  double best_dist = radius_m;
  for (const auto& target : scene_targets(scene)) {
    const double d = (p - target.point).norm();
    if (d <= best_dist) {
      best_dist = d;
      best = target;
    }
  }
  return best;
}

// ---- I-DT fixation detection ---------------------------------------------------

namespace {

struct Extent {
  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};

  void add(const Vec3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  // dispersion: largest per-axis extent of the window
  double dispersion() const {
    return std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  }
};

Vec3 sample_point(const TimedSample& s) {
  Vec3 p;
  p.x = s.value.size() > 0 ? s.value[0] : 0.0;
  p.y = s.value.size() > 1 ? s.value[1] : 0.0;
  p.z = s.value.size() > 2 ? s.value[2] : 0.0;
  return p;
}

}  // namespace

std::vector<Fixation> detect_fixations(const Stream& gaze, const FixationParams& params) {
  if (params.dispersion_threshold_m <= 0.0 || params.min_duration_s <= 0.0) {
    throw ConfigError("fixation parameters must be positive");
  }
  if (gaze.dim != 2 && gaze.dim != 3) {
    throw ConfigError("gaze stream must have dim 2 or 3, got " + std::to_string(gaze.dim));
  }
  std::vector<Fixation> out;
  const auto& samples = gaze.samples;
  const std::size_t n = samples.size();
  std::size_t start = 0;
  while (start < n) {
    // grow a window until it first covers min_duration
    Extent ext;
    std::size_t end = start;
    ext.add(sample_point(samples[start]));
    while (end + 1 < n && samples[end].t - samples[start].t < params.min_duration_s) {
      ++end;
      ext.add(sample_point(samples[end]));
    }
    if (samples[end].t - samples[start].t < params.min_duration_s) break;  // tail too short
    if (ext.dispersion() > params.dispersion_threshold_m) {
      ++start;
      continue;
    }
    // the window is a fixation; extend it while dispersion stays under threshold
    while (end + 1 < n) {
      Extent trial = ext;
      trial.add(sample_point(samples[end + 1]));
      if (trial.dispersion() > params.dispersion_threshold_m) break;
      ext = trial;
      ++end;
    }
    Fixation fix;
    fix.start_s = samples[start].t;
    fix.end_s = samples[end].t;
    Vec3 sum;
    for (std::size_t i = start; i <= end; ++i) sum += sample_point(samples[i]);
    fix.centroid = sum * (1.0 / static_cast<double>(end - start + 1));
    fix.dispersion_m = ext.dispersion();
    out.push_back(fix);
    start = end + 1;
  }
  return out;
}

// ---- patterns & scripts ----------------------------------------------------------

std::string gaze_pattern_name(GazePattern p) {
  switch (p) {
    case GazePattern::GoalOnly: return "goal_only";
    case GazePattern::HandOnly: return "hand_only";
    case GazePattern::FaceOnly: return "face_only";
    case GazePattern::HandThenFace: return "hand_then_face";
    case GazePattern::FaceThenHand: return "face_then_hand";
  }
  return "?";
}

GazePattern gaze_pattern_from_name(const std::string& name) {
  for (auto p : {GazePattern::GoalOnly, GazePattern::HandOnly, GazePattern::FaceOnly,
                 GazePattern::HandThenFace, GazePattern::FaceThenHand}) {
    if (gaze_pattern_name(p) == name) return p;
  }
  throw ConfigError("unknown gaze pattern '" + name + "'");
}

const FixationTarget& GazeScript::target_at(double t) const {
  if (events.empty()) throw ConfigError("empty gaze script");
  const FixationTarget* active = &events.front().target;
  for (const auto& ev : events) {
    if (ev.t_s <= t) active = &ev.target;
    else break;
  }
  return *active;
}

std::string GazeScript::to_json(const std::string& config_hash) const {
  nlohmann::json j;
  j["format"] = "gaze-script-v1";
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  if (!config_hash.empty()) j["config_hash"] = config_hash;
  j["label"] = label.token();
  j["pattern"] = gaze_pattern_name(pattern);
  nlohmann::json events_json = nlohmann::json::array();
  for (const auto& ev : events) {
    nlohmann::json e;
    e["t"] = ev.t_s;
    e["kind"] = target_kind_name(ev.target.kind);
    e["direction"] = direction_name(ev.target.direction);
    e["point"] = {ev.target.point.x, ev.target.point.y, ev.target.point.z};
    events_json.push_back(e);
  }
  j["events"] = events_json;
  return j.dump(2) + "\n";
}

GazeScript generate_script(const ActionLabel& label, GazePattern pattern,
                           const GazeTiming& timing, const SceneGeometry& scene) {
  const bool place = label.action == ActionType::Place;
  if (place != (pattern == GazePattern::GoalOnly)) {
    throw ConfigError("pattern " + gaze_pattern_name(pattern) + " is incompatible with a " +
                      action_name(label.action) + " action");
  }
  if (timing.pickup_s <= 0.0 || timing.dwell_s <= 0.0) {
    throw ConfigError("gaze timing values must be positive");
  }

  GazeScript script;
  script.pattern = pattern;
  script.label = label;
  script.events.push_back({0.0, make_target(TargetKind::InitialObject, Direction::Middle, scene)});

  const Direction d = label.direction;
  double t = timing.pickup_s;
  switch (pattern) {
    case GazePattern::GoalOnly:
      script.events.push_back({t, make_target(TargetKind::PlaceMarker, d, scene)});
      break;
    case GazePattern::HandOnly:
      script.events.push_back({t, make_target(TargetKind::HandoverPoint, d, scene)});
      break;
    case GazePattern::FaceOnly:
      script.events.push_back({t, make_target(TargetKind::PartnerFace, d, scene)});
      break;
    case GazePattern::HandThenFace:
    case GazePattern::FaceThenHand: {
      TargetKind first = pattern == GazePattern::HandThenFace ? TargetKind::HandoverPoint
                                                              : TargetKind::PartnerFace;
      TargetKind second = pattern == GazePattern::HandThenFace ? TargetKind::PartnerFace
                                                               : TargetKind::HandoverPoint;
      script.events.push_back({t, make_target(first, d, scene)});
      for (int i = 0; i < std::max(1, timing.switch_repeats); ++i) {
        t += timing.dwell_s;
        script.events.push_back({t, make_target(i % 2 == 0 ? second : first, d, scene)});
      }
      break;
    }
  }
  return script;
}

PatternClassification classify_pattern(const std::vector<Fixation>& fixations,
                                       const SceneGeometry& scene, ActionType action,
                                       double assignment_radius_m) {
  if (fixations.empty()) throw InsufficientDataError("classify_pattern needs at least one fixation");

  PatternClassification result;
  std::vector<FixationTarget> assigned;
  for (std::size_t i = 0; i < fixations.size(); ++i) {
    auto target = nearest_scene_target(fixations[i].centroid, scene, assignment_radius_m);
    if (!target.has_value()) {
      result.unassigned.push_back(i);
      continue;
    }
    if (assigned.empty() || !assigned.back().same_target(*target)) {
      assigned.push_back(*target);
    }
  }
  std::ostringstream diag;
  if (!result.unassigned.empty()) {
    diag << result.unassigned.size() << " fixation(s) outside the assignment radius; ";
  }
  if (assigned.empty()) {
    diag << "no fixation near any scene target";
    result.diagnostics = diag.str();
    return result;
  }

  // drop the leading initial-object dwell
  std::vector<FixationTarget> seq;
  for (const auto& t : assigned) {
    if (seq.empty() && t.kind == TargetKind::InitialObject) continue;
    seq.push_back(t);
  }
  if (seq.empty()) {
    diag << "gaze never left the initial object";
    result.diagnostics = diag.str();
    return result;
  }
  for (const auto& t : seq) {
    if (t.kind == TargetKind::InitialObject) {
      diag << "gaze returned to the initial object mid-action";
      result.diagnostics = diag.str();
      return result;
    }
    if (t.direction != seq.front().direction) {
      diag << "post-pickup fixations span multiple directions";
      result.diagnostics = diag.str();
      return result;
    }
  }

  const bool has_marker = std::any_of(seq.begin(), seq.end(), [](const FixationTarget& t) {
    return t.kind == TargetKind::PlaceMarker;
  });
  if (has_marker) {
    if (seq.size() == 1 && action == ActionType::Place) {
      result.pattern = GazePattern::GoalOnly;
    } else {
      diag << "place-marker fixations mixed with partner targets";
    }
    result.diagnostics = diag.str();
    return result;
  }

  if (action == ActionType::Place) {
    diag << "placing action but gaze went to partner targets";
    result.diagnostics = diag.str();
    return result;
  }
  if (seq.size() == 1) {
    result.pattern = seq.front().kind == TargetKind::HandoverPoint ? GazePattern::HandOnly
                                                                   : GazePattern::FaceOnly;
  } else {
    result.pattern = seq.front().kind == TargetKind::HandoverPoint ? GazePattern::HandThenFace
                                                                   : GazePattern::FaceThenHand;
  }
  result.diagnostics = diag.str();
  return result;
}

// ---- eye/head timelines --------------------------------------------------------------

namespace {

Vec3 direction_to(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  if (d.norm() == 0.0) throw NumericError("target coincides with the viewpoint");
  return d.normalized();
}

// rotate unit vector `current` toward unit vector `target` by at most max_angle
Vec3 rotate_toward(const Vec3& current, const Vec3& target, double max_angle) {
  const double angle = angle_between(current, target);
  if (angle <= max_angle) return target;
  const double sin_a = std::sin(angle);
  if (sin_a < 1e-12) {
    // antiparallel: leave the great circle through any perpendicular axis
    Vec3 axis = current.cross(Vec3{1.0, 0.0, 0.0});
    if (axis.norm() < 1e-9) axis = current.cross(Vec3{0.0, 1.0, 0.0});
    axis = axis.normalized();
    return (current * std::cos(max_angle) + axis * std::sin(max_angle)).normalized();
  }
  // slerp on the great circle
  const double t = max_angle / angle;
  const double w0 = std::sin((1.0 - t) * angle) / sin_a;
  const double w1 = std::sin(t * angle) / sin_a;
  Vec3 out = current * w0 + target * w1;
  return out.normalized();
}

}  // namespace

EyeHeadTimeline eye_head_timeline(const GazeScript& script, const EyeHeadConfig& config,
                                  const Vec3& viewpoint, double duration_s) {
  if (config.head_lag_s < 0.0) throw ConfigError("head lag must be >= 0");
  if (config.head_rate_limit_rad_s <= 0.0) throw ConfigError("head rate limit must be positive");
  if (config.sample_rate_hz <= 0.0) throw ConfigError("sample rate must be positive");
  if (script.events.empty()) throw ConfigError("empty gaze script");

  double total = duration_s;
  if (total <= 0.0) {
    total = script.events.back().t_s + config.head_lag_s + M_PI / config.head_rate_limit_rad_s +
            config.settle_tail_s;
  }
  const double dt = 1.0 / config.sample_rate_hz;
  const int n = static_cast<int>(std::floor(total * config.sample_rate_hz + 1e-9)) + 1;

  EyeHeadTimeline timeline;
  timeline.eye_direction.name = "eye_dir";
  timeline.eye_direction.nominal_rate_hz = config.sample_rate_hz;
  timeline.eye_direction.dim = 3;
  timeline.head_direction.name = "head_orient";
  timeline.head_direction.nominal_rate_hz = config.sample_rate_hz;
  timeline.head_direction.dim = 3;

  Vec3 head = direction_to(viewpoint, script.events.front().target.point);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const Vec3 eye = direction_to(viewpoint, script.target_at(t).point);
    // the head chases the target the eye had head_lag seconds ago
    const Vec3 head_goal =
        direction_to(viewpoint, script.target_at(t - config.head_lag_s).point);
    if (i > 0) head = rotate_toward(head, head_goal, config.head_rate_limit_rad_s * dt);
    timeline.eye_direction.samples.push_back({t, {eye.x, eye.y, eye.z}});
    timeline.head_direction.samples.push_back({t, {head.x, head.y, head.z}});
  }
  return timeline;
}

Stream synthesize_gaze_stream(const GazeScript& script, double duration_s, double rate_hz,
                              double noise_std_m, Rng& rng) {
  if (rate_hz <= 0.0 || duration_s <= 0.0) throw ConfigError("gaze stream needs positive rate and duration");
  if (noise_std_m < 0.0) throw ConfigError("gaze noise must be >= 0");
  Stream s;
  s.name = "gaze_point";
  s.nominal_rate_hz = rate_hz;
  s.dim = 3;
  const int n = static_cast<int>(std::floor(duration_s * rate_hz + 1e-9)) + 1;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    Vec3 p = script.target_at(t).point;
    if (noise_std_m > 0.0) {
      p.x += rng.normal(0.0, noise_std_m);
      p.y += rng.normal(0.0, noise_std_m);
      p.z += rng.normal(0.0, noise_std_m);
    }
    s.samples.push_back({t, {p.x, p.y, p.z}});
  }
  return s;
}

}  // namespace mintent
