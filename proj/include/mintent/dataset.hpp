#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mintent/common.hpp"

namespace mintent {

// ---- labels ----------------------------------------------------------------

enum class ActionType { Place, Give };
enum class Direction { Left, Middle, Right };

// One of the six action-configurations: {place, give} x {left, middle, right}.
struct ActionLabel {
  ActionType action{ActionType::Place};
  Direction direction{Direction::Left};

  bool operator==(const ActionLabel& o) const {
    return action == o.action && direction == o.direction;
  }
  bool operator<(const ActionLabel& o) const { return index() < o.index(); }

  // canonical order P_L, P_M, P_R, G_L, G_M, G_R
  int index() const {
    return (action == ActionType::Give ? 3 : 0) + static_cast<int>(direction);
  }
  std::string token() const;
  static ActionLabel from_token(const std::string& token);
  static ActionLabel from_index(int i);
};

inline constexpr int kNumLabels = 6;
const std::array<ActionLabel, kNumLabels>& all_action_labels();

std::string direction_name(Direction d);
std::string action_name(ActionType a);

// ---- streams & trials --------------------------------------------------------

struct TimedSample {
  double t{0.0};               // seconds, relative to trial start
  std::vector<double> value;   // fixed dimension per stream
};

struct Stream {
  std::string name;
  double nominal_rate_hz{0.0};
  int dim{0};
  std::vector<TimedSample> samples;  // strictly increasing timestamps
  double clock_offset_s{0.0};        // estimated shift to the master clock

  double start_time() const { return samples.empty() ? 0.0 : samples.front().t; }
  double end_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

// Ten distinct scene points; markers/faces/handover points ordered
// left < middle < right along the lateral axis (x).
struct SceneGeometry {
  Vec3 ball_start;
  std::array<Vec3, 3> place_markers;    // indexed by Direction
  std::array<Vec3, 3> partner_faces;
  std::array<Vec3, 3> handover_points;

  static SceneGeometry default_geometry();
  const Vec3& place_marker(Direction d) const { return place_markers[static_cast<int>(d)]; }
  const Vec3& partner_face(Direction d) const { return partner_faces[static_cast<int>(d)]; }
  const Vec3& handover_point(Direction d) const { return handover_points[static_cast<int>(d)]; }
  Vec3 goal_point(const ActionLabel& label) const {
    return label.action == ActionType::Place ? place_marker(label.direction)
                                             : handover_point(label.direction);
  }
  void check() const;  // throws SchemaError on violated invariants
};

struct TrialRecord {
  int trial_id{0};
  ActionLabel label;
  std::map<std::string, Stream> streams;  // ordered: deterministic serialization
  SceneGeometry scene;

  const Stream& stream(const std::string& name) const;
  bool has_stream(const std::string& name) const { return streams.count(name) > 0; }
};

struct Dataset {
  std::vector<TrialRecord> trials;

  std::map<ActionLabel, int> label_counts() const;
  std::vector<int> trial_ids() const;
};

// ---- parsing / serialization --------------------------------------------------
//
// Trial CSV format:
//   lines starting "## "   tool metadata, ignored by the parser
//   lines "# key=value"    header: trial_id, label, the ten geometry points
//   line  "# stream=<name> rate=<Hz> dim=<d>" opens a stream section
//   rows  "t,v1,...,vd"
TrialRecord parse_trial(const std::string& csv_text);
std::string serialize_trial(const TrialRecord& trial,
                            const std::string& meta_comment = "");

// ---- validation ---------------------------------------------------------------

struct StreamRateInfo {
  int trial_id{0};
  std::string stream;
  double nominal_hz{0.0};
  double estimated_hz{0.0};
};

struct ValidationReport {
  int total_trials{0};
  std::map<ActionLabel, int> label_counts;     // all six labels always present
  std::vector<StreamRateInfo> rates;
  std::vector<std::string> violations;         // hard failures
  std::vector<std::string> warnings;           // rate mismatches, missing labels
  bool no_trials{false};

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_dataset(const Dataset& dataset);

// ---- synthesis ------------------------------------------------------------------

struct NoiseSpec {
  double hand_pos_std_m{0.005};
  double gaze_std_m{0.004};
  double pickup_jitter_s{0.05};        // uniform +- jitter on the pickup time
  double duration_jitter_frac{0.05};   // uniform +- fraction on reach duration
};

struct SynthTiming {
  double pickup_s{0.5};        // gaze shifts to the goal here
  double arm_delay_s{0.45};    // reach onset after pickup (eye leads arm)
  double dwell_s{0.4};         // per-target dwell in switching gaze patterns
  double reach_duration_s{1.2};
  double tail_s{0.3};          // hold at the goal after the reach
};

struct SynthConfig {
  SceneGeometry geometry = SceneGeometry::default_geometry();
  NoiseSpec noise;
  SynthTiming timing;
  double hand_rate_hz{120.0};
  double gaze_rate_hz{60.0};
  double head_rate_hz{120.0};
  Vec3 viewpoint{0.0, -0.35, 0.55};                       // actor eye position
  std::array<double, 4> give_pattern_weights{0.25, 0.25, 0.25, 0.25};
  double head_lag_s{0.25};
  double head_rate_limit_rad_s{3.0};
};

// The paper-scale trial tally: P_L..P_R, G_L..G_R.
std::map<ActionLabel, int> default_trial_counts();

Dataset synthesize_dataset(const SynthConfig& config,
                           const std::map<ActionLabel, int>& counts,
                           std::uint64_t seed);

}  // namespace mintent
