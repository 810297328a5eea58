#include "mintent/gmm.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mintent {

double gaussian_logpdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                       const Eigen::MatrixXd& covariance) {
  const int d = static_cast<int>(x.size());
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw NumericError("covariance is not positive definite");
  }
  const Eigen::VectorXd diff = x - mean;
  const Eigen::VectorXd y = llt.matrixL().solve(diff);
  double logdet = 0.0;
  for (int i = 0; i < d; ++i) logdet += std::log(llt.matrixL()(i, i));
  return -0.5 * (d * std::log(2.0 * M_PI) + y.squaredNorm()) - logdet;
}

namespace {

// Row order independent of input permutation: indices sorted by row value.
// Identical rows are interchangeable, so their relative order cannot affect
// any accumulation.
std::vector<int> canonical_order(const Eigen::MatrixXd& rows) {
  std::vector<int> order(rows.rows());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int d = 0; d < rows.cols(); ++d) {
      if (rows(a, d) != rows(b, d)) return rows(a, d) < rows(b, d);
    }
    return false;
  });
  return order;
}

// uniform in (0, 1], derived from (seed, step, rank) only
double ranked_uniform(std::uint64_t seed, std::uint64_t step, std::uint64_t rank) {
  const std::uint64_t h = hash_mix(hash_mix(seed, step + 1), rank + 1);
  return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

// k-means++ style seeding as an exponential race: candidate j wins step s with
// probability proportional to its squared distance from the chosen set. Works
// on standardized coordinates and canonical ranks, which makes the selection
// invariant to row order and equivariant under translation/positive scaling.
std::vector<int> seed_centers(const Eigen::MatrixXd& std_rows, const std::vector<int>& order,
                              int k, std::uint64_t seed) {
  const int n = static_cast<int>(std_rows.rows());
  std::vector<int> centers;
  centers.reserve(k);

  const int first_rank = static_cast<int>(
      static_cast<std::uint64_t>(ranked_uniform(seed, 0, 0x5eedull) * n) % n);
  centers.push_back(order[first_rank]);

  Eigen::VectorXd dist2(n);
  for (int rank = 0; rank < n; ++rank) {
    dist2(rank) = (std_rows.row(order[rank]) - std_rows.row(centers[0])).squaredNorm();
  }
  for (int step = 1; step < k; ++step) {
    int best_rank = -1;
    double best_key = std::numeric_limits<double>::infinity();
    for (int rank = 0; rank < n; ++rank) {
      if (dist2(rank) <= 0.0) continue;
      const double e = -std::log(ranked_uniform(seed, step, rank));
      const double key = e / dist2(rank);
      if (key < best_key) {
        best_key = key;
        best_rank = rank;
      }
    }
    if (best_rank < 0) {
      // all remaining rows coincide with chosen centers; take the first free rank
      for (int rank = 0; rank < n && best_rank < 0; ++rank) {
        const int idx = order[rank];
        if (std::find(centers.begin(), centers.end(), idx) == centers.end()) best_rank = rank;
      }
      if (best_rank < 0) best_rank = 0;
    }
    centers.push_back(order[best_rank]);
    for (int rank = 0; rank < n; ++rank) {
      dist2(rank) = std::min(
          dist2(rank), (std_rows.row(order[rank]) - std_rows.row(centers.back())).squaredNorm());
    }
  }
  return centers;
}

}  // namespace

GmmModel fit_gmm(const Eigen::MatrixXd& rows, int k, const EmConfig& config,
                 std::uint64_t seed) {
  const int n = static_cast<int>(rows.rows());
  const int d = static_cast<int>(rows.cols());
  if (k < 1) throw ConfigError("fit_gmm: k must be >= 1");
  if (n < k) {
    throw InsufficientDataError("fit_gmm: " + std::to_string(n) + " rows for " +
                                std::to_string(k) + " components");
  }
  if (config.rel_tol <= 0.0 || config.reg_abs <= 0.0 || config.reg_rel < 0.0) {
    throw ConfigError("fit_gmm: tolerances must be positive");
  }
  if (!rows.allFinite()) throw NumericError("fit_gmm: training data contains non-finite values");

  const std::vector<int> order = canonical_order(rows);

  // per-dimension statistics, accumulated in canonical order
  Eigen::VectorXd dim_mean = Eigen::VectorXd::Zero(d);
  for (int j : order) dim_mean += rows.row(j).transpose();
  dim_mean /= n;
  Eigen::VectorXd dim_var = Eigen::VectorXd::Zero(d);
  for (int j : order) {
    const Eigen::VectorXd c = rows.row(j).transpose() - dim_mean;
    dim_var += c.cwiseProduct(c);
  }
  dim_var /= n;
  // Diagonal regularizer, proportional to each dimension's variance so the
  // floor follows the data scale axis by axis (plus an absolute term for
  // degenerate dimensions).
  Eigen::VectorXd reg = config.reg_rel * dim_var + Eigen::VectorXd::Constant(d, config.reg_abs);

  Eigen::MatrixXd std_rows = rows;
  for (int dd = 0; dd < d; ++dd) {
    const double sd = dim_var(dd) > 0.0 ? std::sqrt(dim_var(dd)) : 1.0;
    std_rows.col(dd) = (rows.col(dd).array() - dim_mean(dd)) / sd;
  }

  Eigen::MatrixXd global_cov = Eigen::MatrixXd::Zero(d, d);
  for (int j : order) {
    const Eigen::VectorXd c = rows.row(j).transpose() - dim_mean;
    global_cov += c * c.transpose();
  }
  global_cov /= n;
  global_cov = 0.5 * (global_cov + global_cov.transpose());
  global_cov.diagonal() += reg;

  GmmModel model;
  model.fit_meta.seed = seed;
  model.input_dims = {0};
  for (int dd = 1; dd < d; ++dd) model.output_dims.push_back(dd);
  const std::vector<int> centers = seed_centers(std_rows, order, k, seed);
  for (int c : centers) {
    GmmComponent comp;
    comp.prior = 1.0 / k;
    comp.mean = rows.row(c).transpose();
    comp.covariance = global_cov;
    model.components.push_back(std::move(comp));
  }

  Eigen::MatrixXd resp(n, k);
  double prev_ll = -std::numeric_limits<double>::infinity();
  double ll = prev_ll;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    // E-step: responsibilities in log space with max subtraction
    std::vector<Eigen::LLT<Eigen::MatrixXd>> llts;
    std::vector<double> logdets(k), logpriors(k);
    llts.reserve(k);
    for (int c = 0; c < k; ++c) {
      llts.emplace_back(model.components[c].covariance);
      if (llts.back().info() != Eigen::Success) {
        throw NumericError("fit_gmm: component covariance lost positive definiteness");
      }
      double logdet = 0.0;
      for (int i = 0; i < d; ++i) logdet += std::log(llts.back().matrixL()(i, i));
      logdets[c] = logdet;
      logpriors[c] = std::log(std::max(model.components[c].prior, 1e-300));
    }

    ll = 0.0;
    std::vector<double> logp(k);
    for (int rank = 0; rank < n; ++rank) {
      const int j = order[rank];
      for (int c = 0; c < k; ++c) {
        const Eigen::VectorXd diff = rows.row(j).transpose() - model.components[c].mean;
        const Eigen::VectorXd y = llts[c].matrixL().solve(diff);
        logp[c] = logpriors[c] - 0.5 * (d * std::log(2.0 * M_PI) + y.squaredNorm()) - logdets[c];
      }
      const double lse = logsumexp(logp);
      ll += lse;
      for (int c = 0; c < k; ++c) resp(j, c) = std::exp(logp[c] - lse);
    }

    model.fit_meta.iterations = iter;
    model.fit_meta.final_loglik = ll;
    if (config.per_iteration) config.per_iteration(model, iter, ll);

    if (iter > 1 && ll - prev_ll <= config.rel_tol * std::max(1.0, std::abs(ll))) {
      model.fit_meta.converged = true;
      break;
    }
    prev_ll = ll;

    // M-step, accumulated in canonical order
    for (int c = 0; c < k; ++c) {
      double nk = 0.0;
      for (int rank = 0; rank < n; ++rank) nk += resp(order[rank], c);
      if (nk < 1e-12) {
        model.components[c].prior = nk / n;  // starved component keeps its shape
        continue;
      }
      Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
      for (int rank = 0; rank < n; ++rank) {
        const int j = order[rank];
        mu += resp(j, c) * rows.row(j).transpose();
      }
      mu /= nk;
      Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
      for (int rank = 0; rank < n; ++rank) {
        const int j = order[rank];
        const Eigen::VectorXd diff = rows.row(j).transpose() - mu;
        cov += resp(j, c) * (diff * diff.transpose());
      }
      cov /= nk;
      cov = 0.5 * (cov + cov.transpose());
      cov.diagonal() += reg;
      model.components[c].prior = nk / n;
      model.components[c].mean = std::move(mu);
      model.components[c].covariance = std::move(cov);
    }
    double prior_sum = 0.0;
    for (auto& comp : model.components) prior_sum += comp.prior;
    for (auto& comp : model.components) comp.prior /= prior_sum;
  }

  return model;
}

double gmm_loglik(const GmmModel& model, const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) return 0.0;
  if (rows.cols() != model.dim()) {
    throw ConfigError("gmm_loglik: shape mismatch, rows have dim " +
                      std::to_string(rows.cols()) + " but model has dim " +
                      std::to_string(model.dim()));
  }
  double total = 0.0;
  std::vector<double> logp(model.k());
  for (int j = 0; j < rows.rows(); ++j) {
    for (int c = 0; c < model.k(); ++c) {
      logp[c] = std::log(std::max(model.components[c].prior, 1e-300)) +
                gaussian_logpdf(rows.row(j).transpose(), model.components[c].mean,
                                model.components[c].covariance);
    }
    total += logsumexp(logp);
  }
  return total;
}

const std::array<GmmModel, 3>& ActionModels::for_label(const ActionLabel& label) const {
  auto it = models.find(label);
  if (it == models.end()) {
    throw CoverageError("no model for label " + label.token());
  }
  return it->second;
}

ActionModels fit_action_models(const Dataset& dataset, const EmConfig& config,
                               std::uint64_t seed) {
  std::map<ActionLabel, std::vector<const TrialRecord*>> by_label;
  for (const auto& trial : dataset.trials) by_label[trial.label].push_back(&trial);

  std::string missing;
  for (const auto& label : all_action_labels()) {
    if (by_label[label].empty()) missing += (missing.empty() ? "" : ", ") + label.token();
  }
  if (!missing.empty()) {
    throw CoverageError("labels without trials: " + missing);
  }

  ActionModels out;
  out.components = config.components;
  out.seed = seed;
  out.trained_trial_ids = dataset.trial_ids();
  std::sort(out.trained_trial_ids.begin(), out.trained_trial_ids.end());

  for (const auto& label : all_action_labels()) {
    auto& trials = by_label[label];
    std::sort(trials.begin(), trials.end(),
              [](const TrialRecord* a, const TrialRecord* b) { return a->trial_id < b->trial_id; });
    out.trial_counts[label] = static_cast<int>(trials.size());

    double duration_sum = 0.0;
    std::size_t total_samples = 0;
    for (const auto* trial : trials) {
      const Stream& hand = trial->stream("hand_pos");
      if (hand.samples.size() < 2) {
        throw InsufficientDataError("trial " + std::to_string(trial->trial_id) +
                                    ": hand_pos needs at least 2 samples");
      }
      duration_sum += hand.end_time() - hand.start_time();
      total_samples += hand.samples.size();
    }
    const double mean_duration = duration_sum / static_cast<double>(trials.size());

    std::array<GmmModel, 3> coord_models;
    for (int coord = 0; coord < 3; ++coord) {
      Eigen::MatrixXd rows(total_samples, 2);
      int r = 0;
      for (const auto* trial : trials) {
        const Stream& hand = trial->stream("hand_pos");
        const double t0 = hand.start_time();
        const double span = hand.end_time() - t0;
        for (const auto& sample : hand.samples) {
          rows(r, 0) = config.normalize_time ? (sample.t - t0) / span : sample.t;
          rows(r, 1) = sample.value[coord];
          ++r;
        }
      }
      const std::uint64_t fit_seed =
          hash_mix(hash_mix(seed, static_cast<std::uint64_t>(label.index()) + 1),
                   static_cast<std::uint64_t>(coord) + 101);
      GmmModel model = fit_gmm(rows, config.components, config, fit_seed);
      model.time_norm.mode = config.normalize_time ? "per_trial_unit" : "raw";
      model.time_norm.scale_seconds = config.normalize_time ? mean_duration : 1.0;
      coord_models[coord] = std::move(model);
    }
    out.models.emplace(label, std::move(coord_models));
    out.mean_duration_s[label] = mean_duration;
  }
  return out;
}

}  // namespace mintent
