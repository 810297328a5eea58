#include <algorithm>
#include <cmath>

#include "mintent/dataset.hpp"
#include "mintent/gaze.hpp"
#include "mintent/minjerk.hpp"

namespace mintent {

namespace {

constexpr std::array<GazePattern, 4> kGivePatterns = {
    GazePattern::HandOnly, GazePattern::FaceOnly, GazePattern::HandThenFace,
    GazePattern::FaceThenHand};

TrialRecord synthesize_trial(const SynthConfig& cfg, const ActionLabel& label, int trial_id,
                             std::uint64_t seed) {
  // every trial owns an independent generator so count changes or parallel
  // generation cannot shift another trial's draws
  Rng rng(hash_mix(seed, static_cast<std::uint64_t>(trial_id) + 1));

  TrialRecord trial;
  trial.trial_id = trial_id;
  trial.label = label;
  trial.scene = cfg.geometry;
  trial.scene.check();

  const auto& noise = cfg.noise;
  const auto& timing = cfg.timing;
  double pickup = timing.pickup_s;
  if (noise.pickup_jitter_s > 0.0) {
    pickup += rng.uniform(-noise.pickup_jitter_s, noise.pickup_jitter_s);
  }
  pickup = std::max(pickup, 0.0);
  double reach = timing.reach_duration_s;
  if (noise.duration_jitter_frac > 0.0) {
    reach *= 1.0 + rng.uniform(-noise.duration_jitter_frac, noise.duration_jitter_frac);
  }
  if (reach <= 0.0) throw ConfigError("synthesized reach duration must be positive");
  const double arm_onset = pickup + timing.arm_delay_s;
  const double trial_end = arm_onset + reach + timing.tail_s;
  if (trial_end <= 0.0) throw ConfigError("zero-duration trial");

  GazePattern pattern = GazePattern::GoalOnly;
  if (label.action == ActionType::Give) {
    std::vector<double> weights(cfg.give_pattern_weights.begin(), cfg.give_pattern_weights.end());
    pattern = kGivePatterns[rng.weighted_index(weights)];
  }
  GazeTiming gaze_timing;
  gaze_timing.pickup_s = std::max(pickup, 1e-3);
  gaze_timing.dwell_s = timing.dwell_s;
  const GazeScript script = generate_script(label, pattern, gaze_timing, trial.scene);

  // hand: hold at the start, minimum-jerk reach, hold at the goal
  if (cfg.hand_rate_hz <= 0.0 || cfg.gaze_rate_hz <= 0.0 || cfg.head_rate_hz <= 0.0) {
    throw ConfigError("stream rates must be positive");
  }
  MinJerkSegment segment{trial.scene.ball_start, trial.scene.goal_point(label), reach};
  Stream hand;
  hand.name = "hand_pos";
  hand.nominal_rate_hz = cfg.hand_rate_hz;
  hand.dim = 3;
  const int n_hand = static_cast<int>(std::floor(trial_end * cfg.hand_rate_hz + 1e-9)) + 1;
  for (int i = 0; i < n_hand; ++i) {
    const double t = static_cast<double>(i) / cfg.hand_rate_hz;
    Vec3 p;
    if (t <= arm_onset) {
      p = trial.scene.ball_start;
    } else if (t >= arm_onset + reach) {
      p = segment.goal;
    } else {
      p = min_jerk_evaluate(segment, t - arm_onset).position;
    }
    if (noise.hand_pos_std_m > 0.0) {
      p.x += rng.normal(0.0, noise.hand_pos_std_m);
      p.y += rng.normal(0.0, noise.hand_pos_std_m);
      p.z += rng.normal(0.0, noise.hand_pos_std_m);
    }
    hand.samples.push_back({t, {p.x, p.y, p.z}});
  }
  trial.streams.emplace(hand.name, std::move(hand));

  Stream gaze = synthesize_gaze_stream(script, trial_end, cfg.gaze_rate_hz,
                                       noise.gaze_std_m, rng);
  trial.streams.emplace(gaze.name, std::move(gaze));

  EyeHeadConfig head_cfg;
  head_cfg.head_lag_s = cfg.head_lag_s;
  head_cfg.head_rate_limit_rad_s = cfg.head_rate_limit_rad_s;
  head_cfg.sample_rate_hz = cfg.head_rate_hz;
  EyeHeadTimeline timeline = eye_head_timeline(script, head_cfg, cfg.viewpoint, trial_end);
  trial.streams.emplace("head_orient", std::move(timeline.head_direction));

  return trial;
}

}  // namespace

Dataset synthesize_dataset(const SynthConfig& config, const std::map<ActionLabel, int>& counts,
                           std::uint64_t seed) {
  for (const auto& [label, count] : counts) {
    if (count < 0) throw ConfigError("negative trial count for " + label.token());
  }
  if (config.noise.hand_pos_std_m < 0.0 || config.noise.gaze_std_m < 0.0 ||
      config.noise.pickup_jitter_s < 0.0 || config.noise.duration_jitter_frac < 0.0) {
    throw ConfigError("noise magnitudes must be >= 0");
  }

  Dataset dataset;
  int trial_id = 0;
  for (const auto& label : all_action_labels()) {
    auto it = counts.find(label);
    const int count = it == counts.end() ? 0 : it->second;
    for (int i = 0; i < count; ++i) {
      dataset.trials.push_back(synthesize_trial(config, label, trial_id, seed));
      ++trial_id;
    }
  }
  return dataset;
}

}  // namespace mintent
