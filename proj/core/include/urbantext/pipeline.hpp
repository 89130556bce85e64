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

#ifndef URBANTEXT_PIPELINE_HPP
#define URBANTEXT_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace urbantext::pipeline {

/// Everything a run needs, read from one `key = value` file with
/// `[section]` headers. Unknown sections or keys are rejected. Every
/// field has a default matching the reference pipeline constants
/// (40-sentence filter, 5/5 vocabulary filter, 1 km, 10 zones, 0.01
/// threshold, 10 folds at 75/25).
struct RunConfig {
  struct Paths {
    std::string gazetteer;
    std::string attributes;
    std::string corpus;
    std::string out_dir = "out";
    std::string stopwords;  // empty -> builtin list
  } paths;

  struct Corpus {
    std::string kind = "qa";  // qa | microblog
    long min_sentences = -1;  // -1 -> kind default (qa 40, microblog 0)
    double max_km = 1.0;      // microblog assignment radius
  } corpus;

  struct Aggregate {
    int k_max = 10;
    double max_km = 1.0;
  } aggregate;

  struct Vocabulary {
    long min_count = 5;
    long min_docs = 5;
  } vocabulary;

  struct Features {
    std::string scheme = "paper_tfidf";
  } features;

  struct Scan {
    double threshold = 0.01;
    std::vector<std::string> attributes;  // empty -> all
    int top_k = 10;
  } scan;

  struct Model {
    double lambda1 = 0.1;
    double lambda2 = 0.1;
    double tol = 1e-7;
    long max_iter = 10000;
    bool standardize = true;
    int folds = 10;
    double train_frac = 0.75;
    int bins = 10;
    std::vector<std::string> attributes;  // empty -> all
  } model;

  struct Run {
    std::uint64_t seed = 42;
    long histogram_bin_width = 10;
  } run;

  struct Synth {
    int n_units = 200;
    int vocab_size = 500;
    std::vector<std::string> attributes = {"imd"};
    std::string planted_term;
    std::string planted_attribute;
    double noise_sigma = 0.05;
    bool severed = false;
    int records_per_unit = 10;
    int sentences_per_record = 5;
    int tokens_per_sentence = 10;
    int zones_per_unit = 3;
    double planted_max_rate = 0.06;
  } synth;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& contents, const std::string& name);

  /// Effective configuration as sorted `section.key -> value` pairs, for
  /// the manifest echo.
  std::map<std::string, std::string> flatten() const;

  long effective_min_sentences() const;
};

/// Each command writes `manifest_<command>.json` into the out directory
/// before any report file: the effective config, input digests, counts,
/// degenerate-term flags, warnings, tool version, and a timestamp
/// (SOURCE_DATE_EPOCH is honored for reproducible runs).
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> input_digests;
  std::map<std::string, long> counts;
  std::vector<std::string> degenerate_terms;
  std::vector<std::string> warnings;

  void write(const std::string& path) const;
};

/// Assemble per-unit documents, emit the record-count histogram and the
/// skip/drop report.
void cmd_ingest(const RunConfig& config);

/// Zone attributes -> unit attribute table.
void cmd_aggregate(const RunConfig& config);

/// Tokenize persisted documents, build the vocabulary and the weight
/// matrix.
void cmd_features(const RunConfig& config);

/// Correlation scan reports (full CSV, bucket counts, top-k tables).
void cmd_correlate(const RunConfig& config);

/// Per-attribute cross-validated regression report.
void cmd_predict(const RunConfig& config);

/// Synthetic gazetteer/attribute/corpus fixture files.
void cmd_synth(const RunConfig& config);

/// Summarize the artifacts in the out directory into run_summary.json
/// and stdout.
void cmd_report(const RunConfig& config);

/// Dispatch by subcommand name; throws input_error for unknown names.
void run_command(const std::string& name, const RunConfig& config);

}  // namespace urbantext::pipeline

#endif  // URBANTEXT_PIPELINE_HPP
