#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mintent/dataset.hpp"

namespace mintent {

struct GmmComponent {
  double prior{0.0};
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // symmetric positive definite
};

struct FitMeta {
  int iterations{0};
  double final_loglik{0.0};
  bool converged{false};
  std::uint64_t seed{0};
};

struct TimeNormalization {
  std::string mode{"per_trial_unit"};  // or "raw"
  double scale_seconds{1.0};           // mean trial duration behind the unit scale
};

struct GmmModel {
  std::vector<GmmComponent> components;
  std::vector<int> input_dims;   // conditioning variables (time)
  std::vector<int> output_dims;  // predicted variables
  FitMeta fit_meta;
  TimeNormalization time_norm;

  int k() const { return static_cast<int>(components.size()); }
  int dim() const { return components.empty() ? 0 : static_cast<int>(components[0].mean.size()); }
};

struct EmConfig {
  int components{4};
  int max_iters{500};
  double rel_tol{1e-8};    // relative log-likelihood improvement
  double reg_rel{1e-6};    // per-dimension variance fraction added to diagonals
  double reg_abs{1e-10};   // absolute diagonal floor
  bool normalize_time{true};

  // invoked after every EM iteration with the current model and log-likelihood
  std::function<void(const GmmModel&, int iter, double loglik)> per_iteration;
};

// EM fit of a k-component full-covariance mixture. Deterministic for a fixed
// seed, invariant to the order of the input rows, and equivariant under
// translation and positive per-dimension scaling of the data (the k-means++
// style seeding works on rank order and standardized coordinates, and all
// accumulations run in a canonical row order).
GmmModel fit_gmm(const Eigen::MatrixXd& rows, int k, const EmConfig& config,
                 std::uint64_t seed);

// sum_j log sum_k pi_k N(row_j; mu_k, Sigma_k); 0 for an empty row set
double gmm_loglik(const GmmModel& model, const Eigen::MatrixXd& rows);

// log N(x; mu, Sigma) for one component
double gaussian_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                       const Eigen::MatrixXd& covariance);

// ---- per-action trajectory models -----------------------------------------

// Three (time, coordinate) mixtures per action-configuration, fit on the
// pooled trials of that label. Time is rescaled per trial to [0, 1] by
// default; the mean trial duration is kept so queries can be mapped back.
struct ActionModels {
  std::map<ActionLabel, std::array<GmmModel, 3>> models;  // x, y, z
  std::map<ActionLabel, double> mean_duration_s;
  std::map<ActionLabel, int> trial_counts;
  std::vector<int> trained_trial_ids;
  int components{4};
  std::uint64_t seed{0};

  const std::array<GmmModel, 3>& for_label(const ActionLabel& label) const;
};

ActionModels fit_action_models(const Dataset& dataset, const EmConfig& config,
                               std::uint64_t seed);

}  // namespace mintent
