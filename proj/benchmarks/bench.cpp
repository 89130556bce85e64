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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "urbantext/geo.hpp"
#include "urbantext/model.hpp"
#include "urbantext/porter.hpp"
#include "urbantext/rng.hpp"
#include "urbantext/stats.hpp"
#include "urbantext/textprep.hpp"

using namespace urbantext;

static void BM_Haversine(benchmark::State& state) {
  const geo::GeoPoint a(51.5074, -0.1278);
  const geo::GeoPoint b(51.4545, -2.5879);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geo::haversine_km(a, b));
  }
}
BENCHMARK(BM_Haversine);

static void BM_AssignPoint(benchmark::State& state) {
  Rng rng(1);
  std::vector<geo::SpatialUnit> units;
  for (int i = 0; i < state.range(0); ++i) {
    units.push_back({"u" + std::to_string(i), "n" + std::to_string(i),
                     geo::GeoPoint(rng.uniform(51.3, 51.7), rng.uniform(-0.3, 0.3))});
  }
  const geo::Gazetteer g(std::move(units));
  const geo::GeoPoint p(51.5, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geo::assign_point(p, g, 1.0));
  }
}
BENCHMARK(BM_AssignPoint)->Range(64, 4096);

static void BM_PorterStem(benchmark::State& state) {
  const std::vector<std::string> words{"generalizations", "presumably", "provision",
                                       "oscillators",     "traditional", "connection"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(text::porter_stem(words[i++ % words.size()]));
  }
}
BENCHMARK(BM_PorterStem);

static void BM_Tokenize(benchmark::State& state) {
  const auto stopwords = text::StopwordSet::builtin();
  std::string doc;
  for (int i = 0; i < 200; ++i) {
    doc += "the neighbourhood markets trade busy goods near stations today. ";
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(text::tokenize(doc, stopwords));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(doc.size()));
}
BENCHMARK(BM_Tokenize);

static void BM_Pearson(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> x(state.range(0));
  std::vector<double> y(state.range(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = 0.4 * x[i] + rng.normal();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::pearson(x, y));
  }
}
BENCHMARK(BM_Pearson)->Range(64, 16384);

static void BM_ElasticNetFit(benchmark::State& state) {
  Rng rng(3);
  const std::size_t n = 150;
  const std::size_t p = static_cast<std::size_t>(state.range(0));
  model::RegressionProblem problem;
  problem.n_rows = n;
  problem.n_cols = p;
  problem.attribute = "y";
  for (std::size_t j = 0; j < p; ++j) problem.feature_names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < n; ++i) {
    problem.unit_ids.push_back("u" + std::to_string(i));
    double dot = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double v = rng.normal();
      problem.X.push_back(v);
      if (j < 3) dot += (j + 1.0) * v;
    }
    problem.y.push_back(dot + rng.normal(0.0, 0.5));
  }
  model::ElasticNetConfig cfg;
  cfg.lambda1 = 0.2;
  cfg.lambda2 = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model::fit_elastic_net(problem, cfg));
  }
}
BENCHMARK(BM_ElasticNetFit)->Range(16, 512);

BENCHMARK_MAIN();
