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

#include "urbantext/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"

namespace urbantext::stats {

namespace {

// Continued fraction for the incomplete beta (Numerical Recipes form,
// modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw invariant_error("incomplete beta continued fraction did not converge");
}

bool zero_variance(std::span<const double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != v[0]) return false;
  }
  return true;
}

// Strict < per the report convention (p-value < 0.01); a threshold of 1
// admits everything, including p-values capped at exactly 1.
bool significant(double p_adjusted, double threshold) {
  return threshold >= 1.0 || p_adjusted < threshold;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw input_error("pearson: length mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw input_error("pearson: need at least 2 observations");
  }

  // Single-pass co-moment update (Welford style); the test oracle uses
  // the plain two-pass formula.
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    mean_x += dx / k;
    mean_y += dy / k;
    sxx += dx * (x[i] - mean_x);
    syy += dy * (y[i] - mean_y);
    sxy += dx * (y[i] - mean_y);
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw input_error("pearson: zero variance input");
  }
  double rho = sxy / std::sqrt(sxx * syy);
  if (rho > 1.0) rho = 1.0;
  if (rho < -1.0) rho = -1.0;
  return rho;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x < 0.0 || x > 1.0) {
    throw input_error("regularized_incomplete_beta: x outside [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double p_value(double rho, long n) {
  if (n < 3) {
    throw input_error("p_value: need n >= 3");
  }
  if (std::fabs(rho) > 1.0) {
    throw input_error("p_value: |rho| > 1");
  }
  if (std::fabs(rho) == 1.0) return 0.0;
  if (rho == 0.0) return 1.0;
  const double df = static_cast<double>(n - 2);
  const double t2 = rho * rho * df / (1.0 - rho * rho);
  // Two-sided tail of the t distribution: I_{df/(df+t^2)}(df/2, 1/2).
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

double bonferroni(double p_raw, long m) {
  if (m < 1) {
    throw input_error("bonferroni: m must be >= 1");
  }
  if (p_raw < 0.0 || p_raw > 1.0) {
    throw input_error("bonferroni: p outside [0, 1]");
  }
  const double adjusted = static_cast<double>(m) * p_raw;
  return adjusted > 1.0 ? 1.0 : adjusted;
}

ScanReport scan(const features::DocTermMatrix& matrix, const geo::UnitAttributeTable& attrs,
                const std::vector<std::string>& attributes, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw input_error("scan: threshold outside [0, 1]");
  }
  std::vector<std::string> attr_names = attributes;
  if (attr_names.empty()) {
    attr_names = attrs.attributes();
  }
  std::sort(attr_names.begin(), attr_names.end());
  attr_names.erase(std::unique(attr_names.begin(), attr_names.end()), attr_names.end());

  ScanReport report;
  report.significance_threshold = threshold;

  for (const std::string& attr : attr_names) {
    // Pairwise deletion: only rows whose unit carries this attribute.
    std::vector<std::size_t> rows;
    std::vector<double> y;
    for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
      const auto v = attrs.value(matrix.row_units()[r], attr);
      if (v.has_value()) {
        rows.push_back(r);
        y.push_back(*v);
      }
    }
    if (y.size() < 3) {
      report.skipped_pairs += static_cast<long>(matrix.n_terms());
      continue;
    }
    if (zero_variance(y)) {
      report.skipped_pairs += static_cast<long>(matrix.n_terms());
      continue;
    }

    const auto& terms = matrix.vocabulary().terms();
    for (std::size_t c = 0; c < terms.size(); ++c) {
      std::vector<double> x(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        x[i] = matrix.cell(rows[i], static_cast<int>(c));
      }
      if (zero_variance(x)) {
        report.skipped_pairs += 1;
        continue;
      }
      CorrelationResult res;
      res.term = terms[c];
      res.attribute = attr;
      res.n = static_cast<long>(x.size());
      res.rho = pearson(x, y);
      res.p_raw = p_value(res.rho, res.n);
      report.results.push_back(std::move(res));
    }
  }

  report.m = static_cast<long>(report.results.size());
  for (auto& res : report.results) {
    res.p_adjusted = report.m == 0 ? res.p_raw : bonferroni(res.p_raw, report.m);
  }
  std::sort(report.results.begin(), report.results.end(),
            [](const CorrelationResult& a, const CorrelationResult& b) {
              if (a.attribute != b.attribute) return a.attribute < b.attribute;
              return a.term < b.term;
            });

  for (const std::string& attr : attr_names) {
    report.bucket_counts.emplace(attr, BucketCounts{});
  }
  for (const auto& res : report.results) {
    if (!significant(res.p_adjusted, threshold)) continue;
    BucketCounts& b = report.bucket_counts[res.attribute];
    b.all += 1;
    if (res.rho > 0.4) {
      b.gt_04 += 1;
    } else if (res.rho >= 0.3) {
      b.r_03_04 += 1;
    } else if (res.rho >= 0.2) {
      b.r_02_03 += 1;
    } else if (res.rho < 0.0) {
      b.negative += 1;
    }
  }
  return report;
}

std::vector<std::pair<std::string, double>> top_terms(const ScanReport& report,
                                                      const std::string& attribute, int k) {
  if (report.bucket_counts.find(attribute) == report.bucket_counts.end()) {
    throw input_error("top_terms: attribute '" + attribute + "' not in report");
  }
  std::vector<std::pair<std::string, double>> rows;
  for (const auto& res : report.results) {
    if (res.attribute == attribute &&
        significant(res.p_adjusted, report.significance_threshold)) {
      rows.emplace_back(res.term, res.rho);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (k >= 0 && rows.size() > static_cast<std::size_t>(k)) {
    rows.resize(static_cast<std::size_t>(k));
  }
  return rows;
}

void write_scan_csv(const ScanReport& report, const std::string& path) {
  std::ostringstream out;
  out << "attribute,term,rho,p_raw,p_adjusted,n\n";
  for (const auto& r : report.results) {
    out << r.attribute << ',' << r.term << ',' << csv::format_double(r.rho) << ','
        << csv::format_double(r.p_raw) << ',' << csv::format_double(r.p_adjusted) << ','
        << r.n << '\n';
  }
  csv::write_file(path, out.str());
}

void write_bucket_csv(const ScanReport& report, const std::string& path) {
  std::ostringstream out;
  out << "attribute,all,gt_0.4,0.3_0.4,0.2_0.3,negative\n";
  for (const auto& [attr, b] : report.bucket_counts) {
    out << attr << ',' << b.all << ',' << b.gt_04 << ',' << b.r_03_04 << ',' << b.r_02_03
        << ',' << b.negative << '\n';
  }
  csv::write_file(path, out.str());
}

void write_top_terms_csv(const ScanReport& report, int k, const std::string& path) {
  std::ostringstream out;
  out << "attribute,rank,term,rho\n";
  for (const auto& [attr, buckets] : report.bucket_counts) {
    const auto rows = top_terms(report, attr, k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << attr << ',' << (i + 1) << ',' << rows[i].first << ','
          << csv::format_double(rows[i].second) << '\n';
    }
  }
  csv::write_file(path, out.str());
}

}  // namespace urbantext::stats
