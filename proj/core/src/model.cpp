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

#include "urbantext/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "urbantext/error.hpp"
#include "urbantext/stats.hpp"

namespace urbantext::model {

namespace {

double soft_threshold(double c, double lambda) {
  if (c > lambda) return c - lambda;
  if (c < -lambda) return c + lambda;
  return 0.0;
}

bool all_equal(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != v[0]) return false;
  }
  return true;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double eval_objective(const RegressionProblem& problem, std::span<const double> theta,
                      double intercept, const ElasticNetConfig& cfg) {
  if (theta.size() != problem.n_cols) {
    throw input_error("eval_objective: theta dimension mismatch");
  }
  const double n = static_cast<double>(problem.n_rows);
  double sse = 0.0;
  for (std::size_t i = 0; i < problem.n_rows; ++i) {
    double pred = intercept;
    for (std::size_t j = 0; j < problem.n_cols; ++j) {
      pred += problem.x(i, j) * theta[j];
    }
    const double r = problem.y[i] - pred;
    sse += r * r;
  }
  double l1 = 0.0;
  double l2 = 0.0;
  for (double t : theta) {
    l1 += std::fabs(t);
    l2 += t * t;
  }
  return sse / n + cfg.lambda1 * l1 + cfg.lambda2 * l2;
}

ElasticNetModel fit_elastic_net(const RegressionProblem& problem, const ElasticNetConfig& cfg) {
  const std::size_t n = problem.n_rows;
  const std::size_t p = problem.n_cols;
  if (n < 2) {
    throw input_error("fit_elastic_net: need at least 2 rows");
  }
  if (problem.y.size() != n || problem.X.size() != n * p) {
    throw invariant_error("fit_elastic_net: inconsistent problem dimensions");
  }
  if (cfg.lambda1 < 0.0 || cfg.lambda2 < 0.0 || cfg.tol <= 0.0 || cfg.max_iter < 1) {
    throw input_error("fit_elastic_net: bad config");
  }

  // Working matrix: centered, and scaled by the population std when
  // standardizing. Constant columns become all-zero and their
  // coefficients never move.
  std::vector<double> means(p, 0.0);
  std::vector<double> scales(p, 1.0);
  std::vector<double> z(problem.X);
  for (std::size_t j = 0; j < p; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += problem.x(i, j);
    m /= static_cast<double>(n);
    means[j] = m;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = problem.x(i, j) - m;
      var += d * d;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    const double scale = (cfg.standardize && sd > 0.0) ? sd : 1.0;
    scales[j] = scale;
    for (std::size_t i = 0; i < n; ++i) {
      z[i * p + j] = (problem.x(i, j) - m) / scale;
    }
  }

  bool any_varying = false;
  const double y_mean = mean_of(problem.y);
  std::vector<double> resid(n);  // y_centered - Z.theta, kept current
  for (std::size_t i = 0; i < n; ++i) resid[i] = problem.y[i] - y_mean;

  // a_j = (2/N) sum z_ij^2, fixed across sweeps.
  std::vector<double> a(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = z[i * p + j];
      s += v * v;
    }
    a[j] = 2.0 * s / static_cast<double>(n);
    if (a[j] > 0.0) any_varying = true;
  }
  if (!any_varying) {
    throw input_error("fit_elastic_net: every feature is constant");
  }

  std::vector<double> theta(p, 0.0);
  ElasticNetModel model;
  model.feature_means = means;
  model.feature_scales = scales;

  const double inv_n2 = 2.0 / static_cast<double>(n);
  long sweep = 0;
  bool converged = false;
  while (sweep < cfg.max_iter) {
    ++sweep;
    double max_delta = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (a[j] == 0.0) continue;
      // c_j = (2/N) sum z_ij (resid_i + z_ij theta_j)
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += z[i * p + j] * resid[i];
      }
      const double c = inv_n2 * dot + a[j] * theta[j];
      const double updated = soft_threshold(c, cfg.lambda1) / (a[j] + 2.0 * cfg.lambda2);
      const double delta = updated - theta[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
          resid[i] -= z[i * p + j] * delta;
        }
        theta[j] = updated;
      }
      max_delta = std::max(max_delta, std::fabs(delta));
    }

    double sse = 0.0;
    for (double r : resid) sse += r * r;
    double l1 = 0.0;
    double l2 = 0.0;
    for (double t : theta) {
      l1 += std::fabs(t);
      l2 += t * t;
    }
    model.objective_trace.push_back(sse / static_cast<double>(n) + cfg.lambda1 * l1 +
                                    cfg.lambda2 * l2);

    if (max_delta < cfg.tol) {
      converged = true;
      break;
    }
  }

  model.converged = converged;
  model.sweeps = sweep;
  model.theta.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    model.theta[j] = theta[j] / scales[j];
  }
  double intercept = y_mean;
  for (std::size_t j = 0; j < p; ++j) {
    intercept -= model.theta[j] * means[j];
  }
  model.intercept = intercept;
  return model;
}

std::vector<double> predict(const ElasticNetModel& m, std::span<const double> X,
                            std::size_t n_rows, std::size_t n_cols) {
  if (n_cols != m.theta.size()) {
    throw input_error("predict: column count does not match model");
  }
  if (X.size() != n_rows * n_cols) {
    throw input_error("predict: matrix size mismatch");
  }
  std::vector<double> out(n_rows, m.intercept);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_cols; ++j) {
      s += X[i * n_cols + j] * m.theta[j];
    }
    out[i] += s;
  }
  return out;
}

std::vector<double> predict(const ElasticNetModel& m, const RegressionProblem& problem) {
  return predict(m, problem.X, problem.n_rows, problem.n_cols);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    std::span<const double> y, double train_frac, int bins, Rng& rng) {
  const std::size_t n = y.size();
  if (n < 8) {
    throw input_error("stratified_split: need at least 8 observations");
  }
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw input_error("stratified_split: train_frac must be in (0, 1)");
  }
  if (bins < 1) {
    throw input_error("stratified_split: bins must be >= 1");
  }
  if (n < 40) {
    bins = std::min<int>(bins, static_cast<int>((n + 3) / 4));
  }
  bins = std::min<int>(bins, static_cast<int>(n));

  // Rank by value (stable by index) and cut into equal-frequency chunks.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

  const std::size_t base = n / static_cast<std::size_t>(bins);
  const std::size_t rem = n % static_cast<std::size_t>(bins);

  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::size_t pos = 0;
  std::size_t cum = 0;
  long long taken = 0;
  for (int b = 0; b < bins; ++b) {
    const std::size_t size = base + (static_cast<std::size_t>(b) < rem ? 1 : 0);
    std::vector<std::size_t> bin(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                 order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
    cum += size;
    // Cumulative rounding keeps the overall train share exact.
    const long long target = std::llround(train_frac * static_cast<double>(cum));
    long long want = target - taken;
    if (want < 0) want = 0;
    if (want > static_cast<long long>(size)) want = static_cast<long long>(size);
    taken += want;
    rng.shuffle(bin);
    for (std::size_t i = 0; i < size; ++i) {
      if (i < static_cast<std::size_t>(want)) {
        train.push_back(bin[i]);
      } else {
        test.push_back(bin[i]);
      }
    }
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

CVResult monte_carlo_cv(const RegressionProblem& problem, const ElasticNetConfig& cfg,
                        int folds, double train_frac, int bins) {
  if (folds < 2) {
    throw input_error("monte_carlo_cv: need at least 2 folds");
  }
  CVResult result;
  result.attribute = problem.attribute;
  result.feature_names = problem.feature_names;

  for (int f = 0; f < folds; ++f) {
    Rng rng(Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(f)));
    const auto [train_idx, test_idx] = stratified_split(problem.y, train_frac, bins, rng);

    RegressionProblem train;
    train.n_rows = train_idx.size();
    train.n_cols = problem.n_cols;
    train.attribute = problem.attribute;
    train.X.reserve(train.n_rows * train.n_cols);
    for (std::size_t i : train_idx) {
      train.y.push_back(problem.y[i]);
      train.X.insert(train.X.end(), problem.X.begin() + static_cast<std::ptrdiff_t>(i * problem.n_cols),
                     problem.X.begin() + static_cast<std::ptrdiff_t>((i + 1) * problem.n_cols));
    }

    const ElasticNetModel fold_model = fit_elastic_net(train, cfg);
    result.per_fold_models.push_back(fold_model.theta);

    std::vector<double> x_test;
    std::vector<double> y_test;
    x_test.reserve(test_idx.size() * problem.n_cols);
    for (std::size_t i : test_idx) {
      y_test.push_back(problem.y[i]);
      x_test.insert(x_test.end(), problem.X.begin() + static_cast<std::ptrdiff_t>(i * problem.n_cols),
                    problem.X.begin() + static_cast<std::ptrdiff_t>((i + 1) * problem.n_cols));
    }
    const std::vector<double> pred = predict(fold_model, x_test, test_idx.size(), problem.n_cols);

    if (all_equal(pred) || all_equal(y_test)) {
      result.per_fold_rho.push_back(0.0);
      result.degenerate_folds.push_back(true);
    } else {
      result.per_fold_rho.push_back(stats::pearson(pred, y_test));
      result.degenerate_folds.push_back(false);
    }
  }

  result.mean_rho = mean_of(result.per_fold_rho);
  double ss = 0.0;
  for (double r : result.per_fold_rho) {
    const double d = r - result.mean_rho;
    ss += d * d;
  }
  result.std_rho = std::sqrt(ss / static_cast<double>(folds - 1));
  result.top_terms = top_coefficients(result, 2);
  return result;
}

std::vector<std::string> top_coefficients(const CVResult& result, int k) {
  if (k < 1) {
    throw input_error("top_coefficients: k must be >= 1");
  }
  if (result.per_fold_models.empty()) return {};
  const std::size_t p = result.per_fold_models.front().size();
  const std::size_t rank_cutoff = std::min<std::size_t>(
      p, static_cast<std::size_t>(std::max(k, 10)));
  const std::size_t folds = result.per_fold_models.size();

  // term index -> (folds seen in top-R, total rank over those folds)
  std::map<std::size_t, std::pair<std::size_t, double>> tally;
  for (const auto& theta : result.per_fold_models) {
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (theta[a] != theta[b]) return theta[a] > theta[b];
      return result.feature_names[a] < result.feature_names[b];
    });
    for (std::size_t r = 0; r < rank_cutoff; ++r) {
      auto& slot = tally[order[r]];
      slot.first += 1;
      slot.second += static_cast<double>(r + 1);
    }
  }

  struct Qualifier {
    std::size_t idx;
    double mean_rank;
  };
  std::vector<Qualifier> qualifiers;
  for (const auto& [idx, seen] : tally) {
    if (2 * seen.first > folds) {
      qualifiers.push_back({idx, seen.second / static_cast<double>(seen.first)});
    }
  }
  std::sort(qualifiers.begin(), qualifiers.end(), [&](const Qualifier& a, const Qualifier& b) {
    if (a.mean_rank != b.mean_rank) return a.mean_rank < b.mean_rank;
    return result.feature_names[a.idx] < result.feature_names[b.idx];
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < qualifiers.size() && i < static_cast<std::size_t>(k); ++i) {
    out.push_back(result.feature_names[qualifiers[i].idx]);
  }
  return out;
}

RegressionProblem make_problem(const features::DocTermMatrix& matrix,
                               const geo::UnitAttributeTable& attrs,
                               const std::string& attribute) {
  RegressionProblem problem;
  problem.attribute = attribute;
  problem.n_cols = matrix.n_terms();
  problem.feature_names = matrix.vocabulary().terms();
  for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
    const auto v = attrs.value(matrix.row_units()[r], attribute);
    if (!v.has_value()) continue;
    if (!std::isfinite(*v)) {
      throw invariant_error("make_problem: non-finite attribute value for unit " +
                            matrix.row_units()[r]);
    }
    problem.unit_ids.push_back(matrix.row_units()[r]);
    problem.y.push_back(*v);
    for (std::size_t c = 0; c < matrix.n_terms(); ++c) {
      problem.X.push_back(matrix.cell(r, static_cast<int>(c)));
    }
  }
  problem.n_rows = problem.y.size();
  return problem;
}

}  // namespace urbantext::model
