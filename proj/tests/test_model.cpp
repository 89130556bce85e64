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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "urbantext/error.hpp"
#include "urbantext/model.hpp"
#include "urbantext/rng.hpp"
#include "urbantext/stats.hpp"

using namespace urbantext;
using model::ElasticNetConfig;
using model::RegressionProblem;

namespace {

RegressionProblem make_random_problem(Rng& rng, std::size_t n, std::size_t p,
                                      const std::vector<double>& beta, double noise) {
  RegressionProblem problem;
  problem.n_rows = n;
  problem.n_cols = p;
  problem.attribute = "y";
  for (std::size_t j = 0; j < p; ++j) {
    problem.feature_names.push_back("f" + std::to_string(j));
  }
  problem.X.resize(n * p);
  problem.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    problem.unit_ids.push_back("u" + std::to_string(i));
    double dot = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double v = rng.normal(0.0, 1.0 + static_cast<double>(j));
      problem.X[i * p + j] = v;
      dot += beta[j] * v;
    }
    problem.y[i] = 1.5 + dot + rng.normal(0.0, noise);
  }
  return problem;
}

// For fixed theta the optimal unpenalized intercept is the residual mean.
double objective_with_best_intercept(const RegressionProblem& problem,
                                     const std::vector<double>& theta,
                                     const ElasticNetConfig& cfg) {
  double mean_resid = 0.0;
  for (std::size_t i = 0; i < problem.n_rows; ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < problem.n_cols; ++j) {
      pred += problem.x(i, j) * theta[j];
    }
    mean_resid += problem.y[i] - pred;
  }
  mean_resid /= static_cast<double>(problem.n_rows);
  return model::eval_objective(problem, theta, mean_resid, cfg);
}

// Dense grid over theta followed by shrinking pattern search. The
// objective is convex, so the local refinement reaches the global
// minimum.
double oracle_min_objective(const RegressionProblem& problem, const ElasticNetConfig& cfg,
                            double box, std::vector<double>* argmin = nullptr) {
  const std::size_t p = problem.n_cols;
  std::vector<double> best(p, 0.0);
  double best_obj = objective_with_best_intercept(problem, best, cfg);

  const int grid_points = 9;
  std::vector<int> idx(p, 0);
  while (true) {
    std::vector<double> theta(p);
    for (std::size_t j = 0; j < p; ++j) {
      theta[j] = -box + 2.0 * box * idx[j] / (grid_points - 1);
    }
    const double obj = objective_with_best_intercept(problem, theta, cfg);
    if (obj < best_obj) {
      best_obj = obj;
      best = theta;
    }
    std::size_t j = 0;
    while (j < p && ++idx[j] == grid_points) {
      idx[j] = 0;
      ++j;
    }
    if (j == p) break;
  }

  double step = 2.0 * box / (grid_points - 1);
  while (step > 1e-10) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t j = 0; j < p; ++j) {
        for (double sign : {-1.0, 1.0}) {
          std::vector<double> cand = best;
          cand[j] += sign * step;
          const double obj = objective_with_best_intercept(problem, cand, cfg);
          if (obj < best_obj - 1e-15) {
            best_obj = obj;
            best = cand;
            improved = true;
          }
        }
        // the L1 kink at zero is a frequent optimum
        std::vector<double> zeroed = best;
        zeroed[j] = 0.0;
        const double obj0 = objective_with_best_intercept(problem, zeroed, cfg);
        if (obj0 < best_obj - 1e-15) {
          best_obj = obj0;
          best = zeroed;
          improved = true;
        }
      }
    }
    step /= 2.0;
  }
  if (argmin != nullptr) *argmin = best;
  return best_obj;
}

// Gaussian elimination on the normal equations, intercept via centering.
std::vector<double> ols_fit(const RegressionProblem& problem) {
  const std::size_t n = problem.n_rows;
  const std::size_t p = problem.n_cols;
  std::vector<double> mx(p, 0.0);
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) mx[j] += problem.x(i, j);
    my += problem.y[i];
  }
  for (auto& m : mx) m /= n;
  my /= n;
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double xj = problem.x(i, j) - mx[j];
      for (std::size_t k = 0; k < p; ++k) {
        a[j][k] += xj * (problem.x(i, k) - mx[k]);
      }
      a[j][p] += xj * (problem.y[i] - my);
    }
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= p; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<double> theta(p);
  for (std::size_t j = 0; j < p; ++j) theta[j] = a[j][p] / a[j][j];
  return theta;
}

}  // namespace

TEST_CASE("eval_objective: zero model with mean intercept gives the variance of y") {
  Rng rng(1);
  RegressionProblem problem = make_random_problem(rng, 25, 2, {1.0, -2.0}, 0.5);
  ElasticNetConfig cfg;
  cfg.lambda1 = 0.0;
  cfg.lambda2 = 0.0;
  double mean_y = std::accumulate(problem.y.begin(), problem.y.end(), 0.0) / problem.n_rows;
  double var = 0.0;
  for (double v : problem.y) var += (v - mean_y) * (v - mean_y);
  var /= problem.n_rows;
  const std::vector<double> zero(problem.n_cols, 0.0);
  CHECK(model::eval_objective(problem, zero, mean_y, cfg) == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("eval_objective: random instances match a direct re-evaluation") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    RegressionProblem problem = make_random_problem(rng, 10, 3, {0.5, -1.0, 2.0}, 1.0);
    ElasticNetConfig cfg;
    cfg.lambda1 = rng.uniform(0.0, 2.0);
    cfg.lambda2 = rng.uniform(0.0, 2.0);
    std::vector<double> theta{rng.normal(), rng.normal(), rng.normal()};
    const double b0 = rng.normal();
    // independent expression evaluation
    double sse = 0.0;
    for (std::size_t i = 0; i < problem.n_rows; ++i) {
      double pred = b0;
      for (std::size_t j = 0; j < 3; ++j) pred += problem.x(i, j) * theta[j];
      sse += (problem.y[i] - pred) * (problem.y[i] - pred);
    }
    double want = sse / problem.n_rows;
    for (double t : theta) want += cfg.lambda1 * std::fabs(t) + cfg.lambda2 * t * t;
    CHECK(model::eval_objective(problem, theta, b0, cfg) ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("perfect fit with zero penalties has objective zero") {
  RegressionProblem problem;
  problem.n_rows = 4;
  problem.n_cols = 1;
  problem.X = {1, 2, 3, 4};
  problem.y = {2, 4, 6, 8};
  problem.feature_names = {"f"};
  ElasticNetConfig cfg;
  cfg.lambda1 = 0.0;
  cfg.lambda2 = 0.0;
  const std::vector<double> theta{2.0};
  CHECK(model::eval_objective(problem, theta, 0.0, cfg) == doctest::Approx(0.0));
}

TEST_CASE("fit_elastic_net: y = 2x with no penalty recovers theta = 2") {
  RegressionProblem problem;
  problem.n_rows = 10;
  problem.n_cols = 1;
  problem.feature_names = {"f"};
  for (int i = 0; i < 10; ++i) {
    problem.X.push_back(i);
    problem.y.push_back(2.0 * i);
    problem.unit_ids.push_back("u" + std::to_string(i));
  }
  for (bool standardize : {true, false}) {
    ElasticNetConfig cfg;
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 0.0;
    cfg.standardize = standardize;
    const auto m = model::fit_elastic_net(problem, cfg);
    CHECK(m.converged);
    CHECK(std::fabs(m.theta[0] - 2.0) < 1e-8);
    CHECK(std::fabs(m.intercept) < 1e-8);
    const auto pred = model::predict(m, problem);
    for (std::size_t i = 0; i < problem.n_rows; ++i) {
      CHECK(std::fabs(pred[i] - problem.y[i]) < 1e-8);
    }
  }
}

TEST_CASE("fit_elastic_net: lambda1 above the kill threshold zeroes everything") {
  Rng rng(3);
  RegressionProblem problem = make_random_problem(rng, 30, 3, {0.4, -0.2, 0.1}, 0.3);
  ElasticNetConfig cfg;
  cfg.lambda1 = 1e6;
  cfg.lambda2 = 0.0;
  const auto m = model::fit_elastic_net(problem, cfg);
  for (double t : m.theta) CHECK(t == 0.0);
  const double mean_y =
      std::accumulate(problem.y.begin(), problem.y.end(), 0.0) / problem.n_rows;
  CHECK(m.intercept == doctest::Approx(mean_y).epsilon(1e-12));
}

TEST_CASE("fit_elastic_net: constant features keep coefficient zero") {
  Rng rng(4);
  RegressionProblem problem = make_random_problem(rng, 20, 2, {1.0, 0.5}, 0.2);
  // append a constant column
  RegressionProblem with_const;
  with_const.n_rows = problem.n_rows;
  with_const.n_cols = 3;
  with_const.feature_names = {"f0", "f1", "c"};
  with_const.attribute = "y";
  with_const.y = problem.y;
  for (std::size_t i = 0; i < problem.n_rows; ++i) {
    with_const.X.push_back(problem.x(i, 0));
    with_const.X.push_back(problem.x(i, 1));
    with_const.X.push_back(7.0);
  }
  ElasticNetConfig cfg;
  const auto m = model::fit_elastic_net(with_const, cfg);
  CHECK(m.theta[2] == 0.0);
}

TEST_CASE("fit_elastic_net: all-constant features is an error") {
  RegressionProblem problem;
  problem.n_rows = 5;
  problem.n_cols = 1;
  problem.feature_names = {"c"};
  problem.X = {3, 3, 3, 3, 3};
  problem.y = {1, 2, 3, 4, 5};
  CHECK_THROWS_AS(model::fit_elastic_net(problem, ElasticNetConfig{}), input_error);
}

TEST_CASE("fit_elastic_net: objective trace is non-increasing") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    RegressionProblem problem = make_random_problem(rng, 40, 3, {1.0, -1.0, 0.5}, 1.0);
    ElasticNetConfig cfg;
    cfg.lambda1 = rng.uniform(0.0, 1.0);
    cfg.lambda2 = rng.uniform(0.0, 1.0);
    cfg.standardize = (trial % 2 == 0);
    const auto m = model::fit_elastic_net(problem, cfg);
    REQUIRE(m.objective_trace.size() >= 1);
    for (std::size_t s = 1; s < m.objective_trace.size(); ++s) {
      CHECK(m.objective_trace[s] <=
            m.objective_trace[s - 1] + 1e-12 * std::max(1.0, std::fabs(m.objective_trace[s - 1])));
    }
  }
}

TEST_CASE("fit_elastic_net: lambda = 0 matches closed-form OLS within 1e-8") {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    RegressionProblem problem = make_random_problem(rng, 35, 3, {2.0, -0.7, 0.3}, 0.5);
    ElasticNetConfig cfg;
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 0.0;
    cfg.tol = 1e-10;
    cfg.standardize = (trial % 2 == 0);
    const auto m = model::fit_elastic_net(problem, cfg);
    const auto want = ols_fit(problem);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::fabs(m.theta[j] - want[j]) < 1e-8);
    }
  }
}

TEST_CASE("fit_elastic_net: objective within 1e-6 of the brute-force oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t p = 1 + rng.below(3);
    std::vector<double> beta;
    for (std::size_t j = 0; j < p; ++j) beta.push_back(rng.uniform(-2.0, 2.0));
    RegressionProblem problem =
        make_random_problem(rng, 10 + rng.below(31), p, beta, rng.uniform(0.1, 1.0));
    ElasticNetConfig cfg;
    cfg.lambda1 = rng.uniform(0.0, 1.0);
    cfg.lambda2 = rng.uniform(0.0, 1.0);
    cfg.tol = 1e-9;
    cfg.standardize = false;  // oracle and solver share the same objective
    const auto m = model::fit_elastic_net(problem, cfg);
    const double got = model::eval_objective(problem, m.theta, m.intercept, cfg);
    const double want = oracle_min_objective(problem, cfg, 4.0);
    CHECK(got <= want + 1e-6);
  }
}

TEST_CASE("fit_elastic_net: stationary against single-coordinate perturbations") {
  Rng rng(8);
  RegressionProblem problem = make_random_problem(rng, 30, 3, {1.0, 0.0, -0.5}, 0.4);
  ElasticNetConfig cfg;
  cfg.lambda1 = 0.2;
  cfg.lambda2 = 0.1;
  cfg.standardize = false;
  cfg.tol = 1e-10;
  const auto m = model::fit_elastic_net(problem, cfg);
  const double base = model::eval_objective(problem, m.theta, m.intercept, cfg);
  for (std::size_t j = 0; j < 3; ++j) {
    for (double delta : {-1e-4, 1e-4, -1e-2, 1e-2}) {
      auto theta = m.theta;
      theta[j] += delta;
      CHECK(base <= model::eval_objective(problem, theta, m.intercept, cfg) + cfg.tol);
    }
  }
}

TEST_CASE("predict: zero coefficients give a constant intercept vector") {
  model::ElasticNetModel m;
  m.theta = {0.0, 0.0};
  m.intercept = 3.5;
  std::vector<double> X{1, 2, 3, 4, 5, 6};
  const auto pred = model::predict(m, X, 3, 2);
  for (double v : pred) CHECK(v == 3.5);
  CHECK_THROWS_AS(model::predict(m, X, 2, 3), input_error);
}

TEST_CASE("standardization invariance: scaling a column leaves predictions unchanged") {
  Rng rng(9);
  RegressionProblem problem = make_random_problem(rng, 30, 2, {1.2, -0.8}, 0.3);
  ElasticNetConfig cfg;
  cfg.standardize = true;
  const auto m1 = model::fit_elastic_net(problem, cfg);
  const auto pred1 = model::predict(m1, problem);

  RegressionProblem scaled = problem;
  for (std::size_t i = 0; i < scaled.n_rows; ++i) {
    scaled.X[i * 2] *= 50.0;
  }
  const auto m2 = model::fit_elastic_net(scaled, cfg);
  const auto pred2 = model::predict(m2, scaled);
  for (std::size_t i = 0; i < problem.n_rows; ++i) {
    CHECK(std::fabs(pred1[i] - pred2[i]) < 1e-10);
  }
}

TEST_CASE("stratified_split: 75/25 exactly with balanced bins") {
  Rng rng(10);
  std::vector<double> y(100);
  for (auto& v : y) v = rng.uniform(0.0, 1.0);
  Rng split_rng(11);
  const auto [train, test] = model::stratified_split(y, 0.75, 10, split_rng);
  CHECK(train.size() == 75);
  CHECK(test.size() == 25);

  // disjoint and exhaustive
  std::set<std::size_t> seen(train.begin(), train.end());
  for (auto i : test) {
    CHECK(seen.insert(i).second);
  }
  CHECK(seen.size() == 100);

  // per-bin contribution is 7 or 8: count train members among each rank decile
  std::vector<std::size_t> order(100);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  std::set<std::size_t> train_set(train.begin(), train.end());
  for (int b = 0; b < 10; ++b) {
    int in_train = 0;
    for (int i = 0; i < 10; ++i) {
      if (train_set.count(order[b * 10 + i]) == 1) ++in_train;
    }
    CHECK(in_train >= 7);
    CHECK(in_train <= 8);
  }
}

TEST_CASE("stratified_split: constant target still splits 75/25") {
  std::vector<double> y(100, 5.0);
  Rng rng(12);
  const auto [train, test] = model::stratified_split(y, 0.75, 10, rng);
  CHECK(train.size() == 75);
  CHECK(test.size() == 25);
}

TEST_CASE("stratified_split: seeds control determinism") {
  std::vector<double> y(60);
  Rng gen(13);
  for (auto& v : y) v = gen.uniform(0.0, 1.0);
  Rng a1(99);
  Rng a2(99);
  Rng b(100);
  const auto s1 = model::stratified_split(y, 0.75, 10, a1);
  const auto s2 = model::stratified_split(y, 0.75, 10, a2);
  const auto s3 = model::stratified_split(y, 0.75, 10, b);
  CHECK(s1.first == s2.first);
  CHECK(s1.second == s2.second);
  CHECK(s1.first != s3.first);
}

TEST_CASE("stratified_split: small-sample bin reduction and minimum size") {
  std::vector<double> y(20);
  Rng gen(14);
  for (auto& v : y) v = gen.uniform(0.0, 1.0);
  Rng rng(15);
  const auto [train, test] = model::stratified_split(y, 0.75, 10, rng);
  CHECK(train.size() + test.size() == 20);
  CHECK(train.size() == 15);

  std::vector<double> tiny(7, 1.0);
  Rng r2(16);
  CHECK_THROWS_AS(model::stratified_split(tiny, 0.75, 10, r2), input_error);
}

TEST_CASE("monte_carlo_cv: noiseless planted signal reaches mean rho >= 0.999") {
  Rng rng(17);
  RegressionProblem problem = make_random_problem(rng, 120, 2, {3.0, -1.0}, 0.0);
  ElasticNetConfig cfg;
  cfg.lambda1 = 1e-6;
  cfg.lambda2 = 0.0;
  cfg.seed = 42;
  const auto result = model::monte_carlo_cv(problem, cfg, 10);
  CHECK(result.per_fold_rho.size() == 10);
  CHECK(result.mean_rho >= 0.999);
}

TEST_CASE("monte_carlo_cv: pure-noise target stays near zero") {
  Rng rng(18);
  RegressionProblem problem;
  problem.n_rows = 200;
  problem.n_cols = 5;
  problem.attribute = "noise";
  for (std::size_t j = 0; j < 5; ++j) problem.feature_names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < 200; ++i) {
    problem.unit_ids.push_back("u" + std::to_string(i));
    for (std::size_t j = 0; j < 5; ++j) problem.X.push_back(rng.normal());
    problem.y.push_back(rng.normal());
  }
  ElasticNetConfig cfg;
  cfg.seed = 7;
  const auto result = model::monte_carlo_cv(problem, cfg, 10);
  CHECK(std::fabs(result.mean_rho) < 0.15);
}

TEST_CASE("monte_carlo_cv: fold count, sample std, and determinism") {
  Rng rng(19);
  RegressionProblem problem = make_random_problem(rng, 60, 2, {1.0, 1.0}, 2.0);
  ElasticNetConfig cfg;
  cfg.seed = 31337;
  const auto r1 = model::monte_carlo_cv(problem, cfg, 10);
  const auto r2 = model::monte_carlo_cv(problem, cfg, 10);
  CHECK(r1.per_fold_rho == r2.per_fold_rho);  // bit-identical
  CHECK(r1.mean_rho == r2.mean_rho);
  CHECK(r1.std_rho == r2.std_rho);
  CHECK(r1.top_terms == r2.top_terms);

  double mean = 0.0;
  for (double v : r1.per_fold_rho) mean += v;
  mean /= 10.0;
  double ss = 0.0;
  for (double v : r1.per_fold_rho) ss += (v - mean) * (v - mean);
  CHECK(r1.std_rho == doctest::Approx(std::sqrt(ss / 9.0)).epsilon(1e-12));
  CHECK(r1.per_fold_models.size() == 10);

  ElasticNetConfig other = cfg;
  other.seed = 31338;
  const auto r3 = model::monte_carlo_cv(problem, other, 10);
  CHECK(r1.per_fold_rho != r3.per_fold_rho);
}

TEST_CASE("monte_carlo_cv: degenerate folds are flagged and scored zero") {
  Rng rng(20);
  // lambda1 huge -> every fold predicts a constant
  RegressionProblem problem = make_random_problem(rng, 40, 2, {1.0, -1.0}, 0.2);
  ElasticNetConfig cfg;
  cfg.lambda1 = 1e9;
  cfg.seed = 5;
  const auto result = model::monte_carlo_cv(problem, cfg, 10);
  for (std::size_t f = 0; f < 10; ++f) {
    CHECK(result.degenerate_folds[f]);
    CHECK(result.per_fold_rho[f] == 0.0);
  }
  CHECK(result.mean_rho == 0.0);
}

TEST_CASE("top_coefficients: identical models give the shared top-k") {
  model::CVResult result;
  result.feature_names = {"a", "b", "c", "d"};
  for (int f = 0; f < 10; ++f) {
    result.per_fold_models.push_back({0.1, 3.0, 2.0, -1.0});
  }
  const auto top = model::top_coefficients(result, 2);
  CHECK(top == std::vector<std::string>{"b", "c"});
}

TEST_CASE("top_coefficients: majority rule at 6 of 10 folds") {
  model::CVResult result;
  // 12 features so rank cutoff R = max(k, 10) = 10 can exclude some
  for (int j = 0; j < 12; ++j) result.feature_names.push_back("f" + std::to_string(j));
  // "f0" leads in 6 folds and is pushed below rank 10 in the other 4;
  // fillers occupy the top ranks in those folds.
  for (int f = 0; f < 10; ++f) {
    std::vector<double> theta(12, 0.0);
    if (f < 6) {
      theta[0] = 100.0;
      for (int j = 1; j < 12; ++j) theta[j] = 12.0 - j;
    } else {
      theta[0] = -100.0;  // bottom rank
      for (int j = 1; j < 12; ++j) theta[j] = 50.0 - j;
    }
    result.per_fold_models.push_back(theta);
  }
  const auto top = model::top_coefficients(result, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0] == "f0");  // qualifies with 6/10 and mean rank 1
}

TEST_CASE("top_coefficients: no majority gives an empty list") {
  model::CVResult result;
  for (int j = 0; j < 30; ++j) result.feature_names.push_back("f" + std::to_string(j));
  // Each fold promotes a disjoint block of 10 features; nothing recurs.
  for (int f = 0; f < 3; ++f) {
    std::vector<double> theta(30, 0.0);
    for (int j = 0; j < 10; ++j) theta[f * 10 + j] = 10.0 - j;
    result.per_fold_models.push_back(theta);
  }
  CHECK(model::top_coefficients(result, 2).empty());
}
