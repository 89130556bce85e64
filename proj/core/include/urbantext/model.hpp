// Copyright 2026 The urbantext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URBANTEXT_MODEL_HPP
#define URBANTEXT_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "urbantext/features.hpp"
#include "urbantext/geo.hpp"
#include "urbantext/rng.hpp"

namespace urbantext::model {

/// Dense regression instance for one attribute: rows are units carrying a
/// value for that attribute, columns follow the vocabulary.
struct RegressionProblem {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> X;  // row-major
  std::vector<double> y;
  std::vector<std::string> unit_ids;
  std::vector<std::string> feature_names;
  std::string attribute;

  double x(std::size_t i, std::size_t j) const { return X[i * n_cols + j]; }
};

struct ElasticNetConfig {
  double lambda1 = 0.1;       // L1 weight
  double lambda2 = 0.1;       // L2 weight
  double tol = 1e-7;          // max coefficient change per sweep
  long max_iter = 10000;      // sweep limit
  bool standardize = true;
  std::uint64_t seed = 0;
};

struct ElasticNetModel {
  std::vector<double> theta;  // in original feature units
  double intercept = 0.0;
  std::vector<double> feature_means;
  std::vector<double> feature_scales;
  bool converged = false;
  long sweeps = 0;
  /// Objective value (in the solver's working coordinates) after each
  /// sweep; non-increasing by construction.
  std::vector<double> objective_trace;
};

struct CVResult {
  std::string attribute;
  std::vector<double> per_fold_rho;
  double mean_rho = 0.0;
  double std_rho = 0.0;  // sample standard deviation over folds
  std::vector<std::vector<double>> per_fold_models;  // coefficient snapshots
  std::vector<bool> degenerate_folds;  // fold rho recorded as 0
  std::vector<std::string> feature_names;
  std::vector<std::string> top_terms;  // majority-of-folds top coefficients
};

/// (1/N) sum (y_i - intercept - x_i.theta)^2 + lambda1 |theta|_1
/// + lambda2 |theta|_2^2. Intercept unpenalized.
double eval_objective(const RegressionProblem& problem, std::span<const double> theta,
                      double intercept, const ElasticNetConfig& cfg);

/// Cyclic coordinate descent with soft-thresholding on (optionally
/// standardized) features and a centered target; the intercept is
/// recovered from the means. Non-convergence returns converged = false
/// rather than throwing; constant features keep coefficient 0.
ElasticNetModel fit_elastic_net(const RegressionProblem& problem, const ElasticNetConfig& cfg);

/// intercept + X.theta in original units.
std::vector<double> predict(const ElasticNetModel& m, const RegressionProblem& problem);
std::vector<double> predict(const ElasticNetModel& m, std::span<const double> X,
                            std::size_t n_rows, std::size_t n_cols);

/// Rank y into `bins` equal-frequency bins and draw ~train_frac of each
/// bin into the train side without replacement. Per-bin train counts are
/// balanced so the overall train size is round(train_frac * N) exactly.
/// Returns (train, test) index sets, each sorted ascending. N < 8 throws.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    std::span<const double> y, double train_frac, int bins, Rng& rng);

/// `folds` independent stratified splits (Monte Carlo CV, not disjoint
/// folds): fit on train, evaluate Pearson rho between predictions and
/// held-out values. A fold with constant predictions or constant test
/// target scores 0 and is flagged. Fold f uses the RNG stream derived
/// from (cfg.seed, f), so results do not depend on execution order.
CVResult monte_carlo_cv(const RegressionProblem& problem, const ElasticNetConfig& cfg,
                        int folds = 10, double train_frac = 0.75, int bins = 10);

/// Terms ranked top-R (R = max(k, 10)) by coefficient in more than half
/// the folds, ordered by mean rank; at most k returned.
std::vector<std::string> top_coefficients(const CVResult& result, int k = 2);

/// Intersect matrix rows with units carrying `attribute`.
RegressionProblem make_problem(const features::DocTermMatrix& matrix,
                               const geo::UnitAttributeTable& attrs,
                               const std::string& attribute);

}  // namespace urbantext::model

#endif  // URBANTEXT_MODEL_HPP
