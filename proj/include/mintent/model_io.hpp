#pragma once

#include <map>
#include <string>

#include "mintent/dataset.hpp"
#include "mintent/gmm.hpp"

namespace mintent {

// ---- model bundle ("gmm-v1") -----------------------------------------------

std::string action_models_to_json(const ActionModels& models,
                                  const std::string& config_hash = "");
ActionModels action_models_from_json(const std::string& json_text);

// ---- dataset directory -------------------------------------------------------

struct DatasetManifest {
  std::map<ActionLabel, int> counts;
  std::vector<std::pair<std::string, int>> files;  // (filename, trial_id)
  std::uint64_t seed{0};
  std::string config_hash;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const std::string& json_text);

// Writes manifest.json plus one trial_NNNN.csv per trial.
void write_dataset_dir(const Dataset& dataset, const std::string& dir,
                       std::uint64_t seed, const std::string& config_hash);
Dataset read_dataset_dir(const std::string& dir);

// ---- plain file helpers --------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mintent
