#include "mintent/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mintent {

// ---- labels ----------------------------------------------------------------

std::string ActionLabel::token() const {
  static const char* tokens[kNumLabels] = {"P_L", "P_M", "P_R", "G_L", "G_M", "G_R"};
  return tokens[index()];
}

ActionLabel ActionLabel::from_token(const std::string& token) {
  for (const auto& label : all_action_labels()) {
    if (label.token() == token) return label;
  }
  throw LabelError("unknown action label token '" + token + "'");
}

ActionLabel ActionLabel::from_index(int i) {
  if (i < 0 || i >= kNumLabels) throw ConfigError("label index out of range");
  return {i < 3 ? ActionType::Place : ActionType::Give, static_cast<Direction>(i % 3)};
}

const std::array<ActionLabel, kNumLabels>& all_action_labels() {
  static const std::array<ActionLabel, kNumLabels> labels = {
      ActionLabel{ActionType::Place, Direction::Left},
      ActionLabel{ActionType::Place, Direction::Middle},
      ActionLabel{ActionType::Place, Direction::Right},
      ActionLabel{ActionType::Give, Direction::Left},
      ActionLabel{ActionType::Give, Direction::Middle},
      ActionLabel{ActionType::Give, Direction::Right},
  };
  return labels;
}

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Middle: return "middle";
    case Direction::Right: return "right";
  }
  return "?";
}

std::string action_name(ActionType a) {
  return a == ActionType::Place ? "place" : "give";
}

// ---- geometry ----------------------------------------------------------------

SceneGeometry SceneGeometry::default_geometry() {
  // Tabletop frame: x lateral (left negative), y toward the partners, z up.
  // The object starts at the origin; everything else is configurable.
  SceneGeometry g;
  g.ball_start = {0.0, 0.0, 0.0};
  const double lateral[3] = {-0.4, 0.0, 0.4};
  for (int i = 0; i < 3; ++i) {
    g.place_markers[i] = {lateral[i], 0.4, 0.0};
    g.handover_points[i] = {lateral[i], 0.4, 0.25};
    g.partner_faces[i] = {lateral[i], 0.4, 0.45};
  }
  return g;
}

void SceneGeometry::check() const {
  std::vector<Vec3> pts{ball_start};
  for (const auto& p : place_markers) pts.push_back(p);
  for (const auto& p : partner_faces) pts.push_back(p);
  for (const auto& p : handover_points) pts.push_back(p);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) throw SchemaError("scene geometry points must be distinct");
    }
  }
  auto ordered = [](const std::array<Vec3, 3>& triple) {
    return triple[0].x < triple[1].x && triple[1].x < triple[2].x;
  };
  if (!ordered(place_markers) || !ordered(partner_faces) || !ordered(handover_points)) {
    throw SchemaError("scene triples must be laterally ordered left < middle < right");
  }
}

const Stream& TrialRecord::stream(const std::string& name) const {
  auto it = streams.find(name);
  if (it == streams.end()) {
    throw SchemaError("trial " + std::to_string(trial_id) + " has no stream '" + name + "'");
  }
  return it->second;
}

std::map<ActionLabel, int> Dataset::label_counts() const {
  std::map<ActionLabel, int> counts;
  for (const auto& label : all_action_labels()) counts[label] = 0;
  for (const auto& trial : trials) counts[trial.label]++;
  return counts;
}

std::vector<int> Dataset::trial_ids() const {
  std::vector<int> ids;
  ids.reserve(trials.size());
  for (const auto& trial : trials) ids.push_back(trial.trial_id);
  return ids;
}

// ---- serialization ---------------------------------------------------------------

namespace {

std::string fmt_vec3(const Vec3& v) {
  return fmt_double(v.x) + "," + fmt_double(v.y) + "," + fmt_double(v.z);
}

Vec3 parse_vec3(const std::string& s, const std::string& key) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw SchemaError("header key '" + key + "' needs 3 comma-separated values");
  return {parse_double_strict(parts[0]), parse_double_strict(parts[1]),
          parse_double_strict(parts[2])};
}

struct GeomKey {
  const char* key;
  Vec3 SceneGeometry::* scalar;
  std::array<Vec3, 3> SceneGeometry::* triple;
  int index;
};

const GeomKey kGeomKeys[] = {
    {"ball_start", &SceneGeometry::ball_start, nullptr, 0},
    {"place_left", nullptr, &SceneGeometry::place_markers, 0},
    {"place_middle", nullptr, &SceneGeometry::place_markers, 1},
    {"place_right", nullptr, &SceneGeometry::place_markers, 2},
    {"face_left", nullptr, &SceneGeometry::partner_faces, 0},
    {"face_middle", nullptr, &SceneGeometry::partner_faces, 1},
    {"face_right", nullptr, &SceneGeometry::partner_faces, 2},
    {"handover_left", nullptr, &SceneGeometry::handover_points, 0},
    {"handover_middle", nullptr, &SceneGeometry::handover_points, 1},
    {"handover_right", nullptr, &SceneGeometry::handover_points, 2},
};

}  // namespace

std::string serialize_trial(const TrialRecord& trial, const std::string& meta_comment) {
  std::ostringstream out;
  if (!meta_comment.empty()) {
    for (const auto& line : split(meta_comment, '\n')) out << "## " << line << "\n";
  }
  out << "# trial_id=" << trial.trial_id << "\n";
  out << "# label=" << trial.label.token() << "\n";
  for (const auto& gk : kGeomKeys) {
    const Vec3& v = gk.scalar ? trial.scene.*(gk.scalar) : (trial.scene.*(gk.triple))[gk.index];
    out << "# " << gk.key << "=" << fmt_vec3(v) << "\n";
  }
  for (const auto& [name, stream] : trial.streams) {
    out << "# stream=" << name << " rate=" << fmt_double(stream.nominal_rate_hz)
        << " dim=" << stream.dim << "\n";
    for (const auto& sample : stream.samples) {
      out << fmt_double(sample.t);
      for (double v : sample.value) out << "," << fmt_double(v);
      out << "\n";
    }
  }
  return out.str();
}

TrialRecord parse_trial(const std::string& csv_text) {
  TrialRecord trial;
  trial.scene = SceneGeometry::default_geometry();

  bool saw_trial_id = false;
  bool saw_label = false;
  Stream* current = nullptr;
  int row_in_stream = 0;

  std::istringstream in(csv_text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("##", 0) == 0) continue;  // tool metadata

    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        throw SchemaError("line " + std::to_string(lineno) + ": header line without '='");
      }
      const std::string key = trim(body.substr(0, eq));

      if (key == "stream") {
        // "# stream=<name> rate=<Hz> dim=<d>"
        std::string name, rate_s, dim_s;
        for (const auto& field : split(body, ' ')) {
          const auto feq = field.find('=');
          if (feq == std::string::npos) continue;
          const std::string fkey = field.substr(0, feq);
          const std::string fval = field.substr(feq + 1);
          if (fkey == "stream") name = fval;
          else if (fkey == "rate") rate_s = fval;
          else if (fkey == "dim") dim_s = fval;
          else throw SchemaError("line " + std::to_string(lineno) + ": unknown stream attribute '" + fkey + "'");
        }
        if (name.empty() || rate_s.empty() || dim_s.empty()) {
          throw SchemaError("line " + std::to_string(lineno) + ": stream header needs name, rate and dim");
        }
        if (trial.streams.count(name)) {
          throw SchemaError("line " + std::to_string(lineno) + ": duplicate stream '" + name + "'");
        }
        Stream s;
        s.name = name;
        s.nominal_rate_hz = parse_double_strict(rate_s);
        s.dim = static_cast<int>(parse_long_strict(dim_s));
        if (s.nominal_rate_hz <= 0.0 || s.dim <= 0) {
          throw SchemaError("line " + std::to_string(lineno) + ": stream rate and dim must be positive");
        }
        current = &trial.streams.emplace(name, std::move(s)).first->second;
        row_in_stream = 0;
        continue;
      }

      if (current != nullptr) {
        throw SchemaError("line " + std::to_string(lineno) + ": header key '" + key +
                          "' after the first stream section");
      }
      const std::string value = trim(body.substr(eq + 1));
      if (key == "trial_id") {
        trial.trial_id = static_cast<int>(parse_long_strict(value));
        saw_trial_id = true;
      } else if (key == "label") {
        trial.label = ActionLabel::from_token(value);
        saw_label = true;
      } else {
        bool matched = false;
        for (const auto& gk : kGeomKeys) {
          if (key == gk.key) {
            Vec3& target = gk.scalar ? trial.scene.*(gk.scalar) : (trial.scene.*(gk.triple))[gk.index];
            target = parse_vec3(value, key);
            matched = true;
            break;
          }
        }
        if (!matched) {
          throw SchemaError("line " + std::to_string(lineno) + ": unknown header key '" + key + "'");
        }
      }
      continue;
    }

    // data row
    if (current == nullptr) {
      throw SchemaError("line " + std::to_string(lineno) + ": data row before any stream header");
    }
    const auto fields = split(t, ',');
    if (static_cast<int>(fields.size()) != current->dim + 1) {
      throw StreamValidationError("stream '" + current->name + "' row " +
                                  std::to_string(row_in_stream + 1) + ": expected " +
                                  std::to_string(current->dim + 1) + " fields, got " +
                                  std::to_string(fields.size()));
    }
    TimedSample sample;
    sample.t = parse_double_strict(fields[0]);
    if (sample.t < 0.0) {
      throw StreamValidationError("stream '" + current->name + "' row " +
                                  std::to_string(row_in_stream + 1) + ": negative timestamp");
    }
    if (!current->samples.empty() && sample.t <= current->samples.back().t) {
      throw StreamValidationError("stream '" + current->name + "' row " +
                                  std::to_string(row_in_stream + 1) +
                                  ": timestamps not strictly increasing");
    }
    sample.value.reserve(current->dim);
    for (int d = 0; d < current->dim; ++d) {
      sample.value.push_back(parse_double_strict(fields[d + 1]));
    }
    current->samples.push_back(std::move(sample));
    ++row_in_stream;
  }

  if (!saw_trial_id) throw SchemaError("missing trial_id header");
  if (!saw_label) throw SchemaError("missing label header");
  if (!trial.has_stream("hand_pos")) throw SchemaError("trial is missing the hand_pos stream");
  if (trial.stream("hand_pos").dim != 3) throw SchemaError("hand_pos stream must have dim 3");
  trial.scene.check();
  return trial;
}

// ---- validation -------------------------------------------------------------------

namespace {

double median_interval(const Stream& s) {
  if (s.samples.size() < 2) return 0.0;
  std::vector<double> dts;
  dts.reserve(s.samples.size() - 1);
  for (std::size_t i = 1; i < s.samples.size(); ++i) {
    dts.push_back(s.samples[i].t - s.samples[i - 1].t);
  }
  std::sort(dts.begin(), dts.end());
  const std::size_t mid = dts.size() / 2;
  return dts.size() % 2 == 1 ? dts[mid] : 0.5 * (dts[mid - 1] + dts[mid]);
}

}  // namespace

ValidationReport validate_dataset(const Dataset& dataset) {
  ValidationReport report;
  report.total_trials = static_cast<int>(dataset.trials.size());
  report.no_trials = dataset.trials.empty();
  for (const auto& label : all_action_labels()) report.label_counts[label] = 0;

  for (const auto& trial : dataset.trials) {
    report.label_counts[trial.label]++;
    const std::string prefix = "trial " + std::to_string(trial.trial_id) + ": ";

    if (!trial.has_stream("hand_pos")) {
      report.violations.push_back(prefix + "missing hand_pos stream");
    }
    try {
      trial.scene.check();
    } catch (const Error& e) {
      report.violations.push_back(prefix + e.what());
    }
    for (const auto& [name, stream] : trial.streams) {
      for (std::size_t i = 0; i < stream.samples.size(); ++i) {
        if (static_cast<int>(stream.samples[i].value.size()) != stream.dim) {
          report.violations.push_back(prefix + "stream '" + name + "' row " +
                                      std::to_string(i + 1) + " has wrong dimension");
          break;
        }
        if (i > 0 && stream.samples[i].t <= stream.samples[i - 1].t) {
          report.violations.push_back(prefix + "stream '" + name + "' row " +
                                      std::to_string(i + 1) + " not strictly increasing");
          break;
        }
      }
      const double med = median_interval(stream);
      if (med > 0.0) {
        StreamRateInfo info;
        info.trial_id = trial.trial_id;
        info.stream = name;
        info.nominal_hz = stream.nominal_rate_hz;
        info.estimated_hz = 1.0 / med;
        report.rates.push_back(info);
        const double expected = 1.0 / stream.nominal_rate_hz;
        if (med < 0.8 * expected || med > 1.2 * expected) {
          report.warnings.push_back(prefix + "stream '" + name + "' rate mismatch: nominal " +
                                    fmt_double(stream.nominal_rate_hz) + " Hz, estimated " +
                                    fmt_double(info.estimated_hz) + " Hz");
        }
      }
    }
  }

  for (const auto& [label, count] : report.label_counts) {
    if (count == 0 && !dataset.trials.empty()) {
      report.warnings.push_back("label " + label.token() + " has no trials");
    }
  }
  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << "trials: " << total_trials;
  if (no_trials) out << " (no trials)";
  out << "\n";
  for (const auto& [label, count] : label_counts) {
    out << "  " << label.token() << ": " << count << "\n";
  }
  out << "violations: " << violations.size() << "\n";
  for (const auto& v : violations) out << "  " << v << "\n";
  out << "warnings: " << warnings.size() << "\n";
  for (const auto& w : warnings) out << "  " << w << "\n";
  return out.str();
}

std::map<ActionLabel, int> default_trial_counts() {
  const int tally[kNumLabels] = {20, 23, 17, 17, 19, 24};
  std::map<ActionLabel, int> counts;
  for (const auto& label : all_action_labels()) counts[label] = tally[label.index()];
  return counts;
}

}  // namespace mintent
