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

#ifndef URBANTEXT_STATS_HPP
#define URBANTEXT_STATS_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "urbantext/features.hpp"
#include "urbantext/geo.hpp"

namespace urbantext::stats {

/// One term-attribute correlation with raw and family-adjusted p-values.
struct CorrelationResult {
  std::string term;
  std::string attribute;
  double rho = 0.0;
  double p_raw = 1.0;
  double p_adjusted = 1.0;
  long n = 0;
};

/// Significant-term counts per attribute in the report's rho ranges.
/// Buckets are disjoint: (0.4, inf), [0.3, 0.4], [0.2, 0.3), (-inf, 0);
/// `all` counts every significant result.
struct BucketCounts {
  long all = 0;
  long gt_04 = 0;
  long r_03_04 = 0;
  long r_02_03 = 0;
  long negative = 0;
};

struct ScanReport {
  std::vector<CorrelationResult> results;  // sorted by (attribute, term)
  long m = 0;                              // tests performed in this scan
  double significance_threshold = 0.01;
  std::map<std::string, BucketCounts> bucket_counts;
  long skipped_pairs = 0;  // degenerate vectors or undersized attributes
};

/// Sample Pearson correlation, clamped to [-1, 1] against rounding
/// overshoot. Throws input_error when either vector has zero variance or
/// n < 2.
double pearson(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta I_x(a, b) by continued fraction; exposed
/// because the p-value accuracy contract is stated against it.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a Pearson coefficient under the t-test with
/// n - 2 degrees of freedom. |rho| = 1 gives exactly 0; rho = 0 gives
/// exactly 1. Requires n >= 3.
double p_value(double rho, long n);

/// min(1, m * p_raw).
double bonferroni(double p_raw, long m);

/// Correlate every vocabulary term with every requested attribute.
/// Units missing an attribute are excluded pairwise for that attribute;
/// attributes covering fewer than 3 units are skipped entirely. m is the
/// number of tests actually performed; adjusted p-values use that m.
/// An empty `attributes` means all attributes present in `attrs`.
ScanReport scan(const features::DocTermMatrix& matrix, const geo::UnitAttributeTable& attrs,
                const std::vector<std::string>& attributes, double threshold = 0.01);

/// Up to k significant results for one attribute, rho descending, ties by
/// term. Returns fewer rows when fewer are significant.
std::vector<std::pair<std::string, double>> top_terms(const ScanReport& report,
                                                      const std::string& attribute, int k);

/// CSV exports: full scan (`attribute,term,rho,p_raw,p_adjusted,n`),
/// bucket counts (`attribute,all,gt_0.4,0.3_0.4,0.2_0.3,negative`), and
/// per-attribute top-k tables (`attribute,rank,term,rho`).
void write_scan_csv(const ScanReport& report, const std::string& path);
void write_bucket_csv(const ScanReport& report, const std::string& path);
void write_top_terms_csv(const ScanReport& report, int k, const std::string& path);

}  // namespace urbantext::stats

#endif  // URBANTEXT_STATS_HPP
