#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mintent/dataset.hpp"
#include "mintent/gaze.hpp"
#include "mintent/gmm.hpp"

namespace mintent {

// ---- gates -------------------------------------------------------------------

// Information cuts, ordered: gaze; + head; + arm onset; + full arm.
enum class Gate { G, GH, GHA, GHAplus };

std::string gate_name(Gate g);
Gate gate_from_name(const std::string& name);
const std::vector<Gate>& all_gates();

// ---- observations ---------------------------------------------------------------

// Cues visible at a gate. At least one field must be engaged; an engaged gaze
// cue may still contain zero targets (nothing fixated yet).
struct Observation {
  std::optional<std::vector<FixationTarget>> gaze_targets;  // post-pickup sequence
  std::optional<Stream> head_direction;                     // truncated at the cut
  std::optional<std::vector<TimedSample>> arm_prefix;       // hand positions up to the cut

  bool empty() const {
    return !gaze_targets.has_value() && !head_direction.has_value() &&
           !arm_prefix.has_value();
  }
};

struct Posterior {
  std::array<double, kNumLabels> probs{};  // canonical label order, sums to 1

  ActionLabel argmax() const;
};

// log-score normalization shared by the classifier; exposed for direct testing
Posterior normalize_log_scores(const std::array<double, kNumLabels>& log_scores);

std::array<double, kNumLabels> uniform_priors();
std::array<double, kNumLabels> empirical_priors(const std::map<ActionLabel, int>& counts);

struct ClassifierConfig {
  std::array<double, 4> give_pattern_weights{0.25, 0.25, 0.25, 0.25};
  double target_confusion{1e-4};     // probability a fixated target is misread
  double head_angle_std_rad{0.15};
  double arm_obs_std_m{0.005};
  Vec3 viewpoint{0.0, -0.35, 0.55};
  double assignment_radius_m{0.1};
  FixationParams fixation;
  // gate-cut detection
  double gate_pad_s{0.15};               // observation window past each event
  double head_move_threshold_rad{0.05};
  double arm_speed_threshold_m_s{0.05};  // on windowed speed
  double speed_window_s{0.05};
};

// Posterior over the six labels: prior x gaze-sequence likelihood x
// head-direction likelihood x arm-prefix GMR predictive density, accumulated
// in log space and normalized.
Posterior classify(const Observation& obs, const ActionModels& models,
                   const std::array<double, kNumLabels>& priors,
                   const SceneGeometry& scene, const ClassifierConfig& config);

// ---- gated evaluation -------------------------------------------------------------

struct GateCuts {
  double t_g{0.0};
  double t_gh{0.0};
  double t_gha{0.0};
  double t_ghaplus{0.0};
};

// Event times recovered from the trial streams: first post-pickup saccade,
// head direction-change onset, arm speed-threshold crossing, stream end.
GateCuts detect_gate_cuts(const TrialRecord& trial, const ClassifierConfig& config);

Observation build_observation(const TrialRecord& trial, Gate gate, const GateCuts& cuts,
                              const ClassifierConfig& config);

struct AnovaRow {
  std::string source;  // factor A, factor B, interaction, residual, total
  double ss{0.0};
  int df{0};
  double ms{0.0};
  double f{0.0};
  double p{1.0};
};

struct AnovaResult {
  std::vector<AnovaRow> rows;
  std::string ss_type{"II"};

  const AnovaRow& row(const std::string& source) const;
};

// Two-way ANOVA with interaction over (factor A level, factor B level,
// response) tuples. Unbalanced designs use Type-II sums of squares; balanced
// designs reduce to the classical decomposition. Every (A, B) cell must be
// non-empty and both factors need at least two levels.
AnovaResult anova_two_way(
    const std::vector<std::tuple<std::string, std::string, double>>& responses);

struct TrialGateRow {
  int trial_id{0};
  Gate gate{Gate::G};
  ActionLabel truth;
  ActionLabel predicted;
  bool correct{false};
  bool correct_direction{false};
  bool correct_action{false};
};

struct GateResult {
  Gate gate{Gate::G};
  int n{0};
  double overall{0.0};
  double direction_marginal{0.0};
  double action_marginal{0.0};
  std::array<double, 3> by_direction{};           // accuracy per true direction
  std::array<double, 2> by_action{};              // accuracy per true action type
  std::array<std::array<int, kNumLabels>, kNumLabels> confusion{};  // [truth][pred]
};

struct GatedReport {
  std::vector<GateResult> gates;
  double chance_overall{1.0 / 6.0};
  double chance_direction{1.0 / 3.0};
  double chance_action{1.0 / 2.0};
  AnovaResult anova;  // factors: gate x action type, response: success
  std::vector<TrialGateRow> rows;
  std::uint64_t seed{0};

  std::string to_json(const std::string& config_hash = "") const;
  std::string rows_csv(const std::string& meta_comment = "") const;
  std::string summary_table() const;
};

// Scores every (trial, gate) pair of a held-out dataset. Train/test overlap is
// detected through the trial-id sets recorded in the model bundle.
GatedReport run_gated_eval(const Dataset& test, const ActionModels& models,
                           const std::vector<Gate>& gates, std::uint64_t seed,
                           const ClassifierConfig& config,
                           const std::array<double, kNumLabels>& priors);

}  // namespace mintent
