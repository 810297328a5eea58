#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "mintent/common.hpp"
#include "mintent/gmm.hpp"

namespace mintent {

struct GmrOutput {
  Eigen::MatrixXd mean;                    // n_queries x n_outputs
  std::vector<Eigen::MatrixXd> covariance; // per query, n_outputs x n_outputs
  Eigen::MatrixXd responsibilities;        // n_queries x K, rows sum to 1
};

// Conditions the joint mixture on time. Per component:
//   mu_hat_k(t)  = mu_x + S_xt S_tt^-1 (t - mu_t)
//   Sig_hat_k    = S_xx - S_xt S_tt^-1 S_tx
//   h_k(t)      ~ pi_k N(t; mu_t, S_tt)      (computed in log space)
// and the mixture covariance uses full moment matching:
//   Sum_k h_k (Sig_hat_k + mu_hat_k mu_hat_k^T) - mu mu^T.
// The model must condition on a single time dimension.
GmrOutput gmr_regress(const GmmModel& model, const std::vector<double>& times);

struct ReconstructedTrajectory {
  std::vector<double> times_norm;  // query grid in model time units
  std::vector<double> times_s;     // same grid mapped to seconds
  std::vector<Vec3> mean;
  std::vector<Vec3> variance;      // per-axis envelope

  std::string to_csv(const std::string& meta_comment = "") const;
};

// Stacks three per-coordinate regressions onto a uniform n_points grid over
// the shared normalized time range. The models must agree on time scaling.
ReconstructedTrajectory reconstruct_action(const std::array<GmmModel, 3>& coord_models,
                                           int n_points);

}  // namespace mintent
