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

#include "urbantext/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "urbantext/corpus.hpp"
#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"
#include "urbantext/features.hpp"
#include "urbantext/geo.hpp"
#include "urbantext/model.hpp"
#include "urbantext/stats.hpp"
#include "urbantext/synth.hpp"
#include "urbantext/textprep.hpp"
#include "urbantext/version.hpp"

namespace fs = std::filesystem;

namespace urbantext::pipeline {

namespace {

std::string bool_str(bool v) { return v ? "true" : "false"; }

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  for (const auto& f : csv::split_fields(value)) {
    const std::string t = csv::trim(f);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& context) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw input_error(context + ": expected 'true' or 'false', got '" + value + "'");
}

std::uint64_t parse_u64(const std::string& value, const std::string& context) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw input_error(context + ": not an unsigned integer: '" + value + "'");
  }
}

std::string iso_timestamp() {
  std::time_t t;
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch != nullptr) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

corpus::RecordKind kind_of(const RunConfig& config) {
  if (config.corpus.kind == "qa") return corpus::RecordKind::qa;
  if (config.corpus.kind == "microblog") return corpus::RecordKind::microblog;
  throw input_error("corpus.kind must be 'qa' or 'microblog', got '" + config.corpus.kind + "'");
}

text::StopwordSet stopwords_of(const RunConfig& config) {
  if (config.paths.stopwords.empty()) return text::StopwordSet::builtin();
  return text::StopwordSet::from_file(config.paths.stopwords);
}

fs::path out_path(const RunConfig& config, const std::string& name) {
  return fs::path(config.paths.out_dir) / name;
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.paths.out_dir, ec);
  if (ec) {
    throw input_error("cannot create output directory '" + config.paths.out_dir +
                      "': " + ec.message());
  }
}

RunManifest new_manifest(const std::string& command, const RunConfig& config) {
  RunManifest manifest;
  manifest.command = command;
  manifest.config = config.flatten();
  return manifest;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  return from_string(csv::read_file(path), path);
}

RunConfig RunConfig::from_string(const std::string& contents, const std::string& name) {
  RunConfig config;

  std::istringstream in(contents);
  std::string raw;
  std::string section;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = csv::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::string ctx = name + " line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw input_error(ctx + ": unterminated section header");
      }
      section = csv::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw input_error(ctx + ": expected 'key = value'");
    }
    const std::string key = csv::trim(line.substr(0, eq));
    const std::string value = csv::trim(line.substr(eq + 1));
    const std::string qualified = section + "." + key;

    if (qualified == "paths.gazetteer") config.paths.gazetteer = value;
    else if (qualified == "paths.attributes") config.paths.attributes = value;
    else if (qualified == "paths.corpus") config.paths.corpus = value;
    else if (qualified == "paths.out_dir") config.paths.out_dir = value;
    else if (qualified == "paths.stopwords") config.paths.stopwords = value;
    else if (qualified == "corpus.kind") config.corpus.kind = value;
    else if (qualified == "corpus.min_sentences") config.corpus.min_sentences = csv::parse_long(value, ctx);
    else if (qualified == "corpus.max_km") config.corpus.max_km = csv::parse_double(value, ctx);
    else if (qualified == "aggregate.k_max") config.aggregate.k_max = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "aggregate.max_km") config.aggregate.max_km = csv::parse_double(value, ctx);
    else if (qualified == "vocabulary.min_count") config.vocabulary.min_count = csv::parse_long(value, ctx);
    else if (qualified == "vocabulary.min_docs") config.vocabulary.min_docs = csv::parse_long(value, ctx);
    else if (qualified == "features.scheme") config.features.scheme = value;
    else if (qualified == "scan.threshold") config.scan.threshold = csv::parse_double(value, ctx);
    else if (qualified == "scan.attributes") config.scan.attributes = split_list(value);
    else if (qualified == "scan.top_k") config.scan.top_k = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "model.lambda1") config.model.lambda1 = csv::parse_double(value, ctx);
    else if (qualified == "model.lambda2") config.model.lambda2 = csv::parse_double(value, ctx);
    else if (qualified == "model.tol") config.model.tol = csv::parse_double(value, ctx);
    else if (qualified == "model.max_iter") config.model.max_iter = csv::parse_long(value, ctx);
    else if (qualified == "model.standardize") config.model.standardize = parse_bool(value, ctx);
    else if (qualified == "model.folds") config.model.folds = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "model.train_frac") config.model.train_frac = csv::parse_double(value, ctx);
    else if (qualified == "model.bins") config.model.bins = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "model.attributes") config.model.attributes = split_list(value);
    else if (qualified == "run.seed") config.run.seed = parse_u64(value, ctx);
    else if (qualified == "run.histogram_bin_width") config.run.histogram_bin_width = csv::parse_long(value, ctx);
    else if (qualified == "synth.n_units") config.synth.n_units = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "synth.vocab_size") config.synth.vocab_size = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "synth.attributes") config.synth.attributes = split_list(value);
    else if (qualified == "synth.planted_term") config.synth.planted_term = value;
    else if (qualified == "synth.planted_attribute") config.synth.planted_attribute = value;
    else if (qualified == "synth.noise_sigma") config.synth.noise_sigma = csv::parse_double(value, ctx);
    else if (qualified == "synth.severed") config.synth.severed = parse_bool(value, ctx);
    else if (qualified == "synth.records_per_unit") config.synth.records_per_unit = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "synth.sentences_per_record") config.synth.sentences_per_record = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "synth.tokens_per_sentence") config.synth.tokens_per_sentence = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "synth.zones_per_unit") config.synth.zones_per_unit = static_cast<int>(csv::parse_long(value, ctx));
    else if (qualified == "synth.planted_max_rate") config.synth.planted_max_rate = csv::parse_double(value, ctx);
    else {
      throw input_error(ctx + ": unknown key '" + qualified + "'");
    }
  }

  // Range checks that do not depend on the command being run.
  const std::string where = name + ": ";
  if (config.corpus.kind != "qa" && config.corpus.kind != "microblog") {
    throw input_error(where + "corpus.kind must be 'qa' or 'microblog'");
  }
  features::weight_scheme_from_string(config.features.scheme);
  if (config.scan.threshold < 0.0 || config.scan.threshold > 1.0) {
    throw input_error(where + "scan.threshold must be in [0, 1]");
  }
  if (config.model.lambda1 < 0.0 || config.model.lambda2 < 0.0) {
    throw input_error(where + "model.lambda1/lambda2 must be >= 0");
  }
  if (config.model.tol <= 0.0 || config.model.max_iter < 1) {
    throw input_error(where + "model.tol must be > 0 and model.max_iter >= 1");
  }
  if (!(config.model.train_frac > 0.0 && config.model.train_frac < 1.0)) {
    throw input_error(where + "model.train_frac must be in (0, 1)");
  }
  if (config.model.folds < 2 || config.model.bins < 1) {
    throw input_error(where + "model.folds must be >= 2 and model.bins >= 1");
  }
  if (config.aggregate.k_max < 1 || config.aggregate.max_km <= 0.0 ||
      config.corpus.max_km <= 0.0) {
    throw input_error(where + "k_max must be >= 1 and max_km > 0");
  }
  if (config.vocabulary.min_count < 1 || config.vocabulary.min_docs < 1) {
    throw input_error(where + "vocabulary.min_count/min_docs must be >= 1");
  }
  if (config.run.histogram_bin_width < 1) {
    throw input_error(where + "run.histogram_bin_width must be >= 1");
  }
  return config;
}

long RunConfig::effective_min_sentences() const {
  if (corpus.min_sentences >= 0) return corpus.min_sentences;
  return corpus.kind == "qa" ? 40 : 0;
}

std::map<std::string, std::string> RunConfig::flatten() const {
  std::map<std::string, std::string> out;
  out["paths.gazetteer"] = paths.gazetteer;
  out["paths.attributes"] = paths.attributes;
  out["paths.corpus"] = paths.corpus;
  out["paths.out_dir"] = paths.out_dir;
  out["paths.stopwords"] = paths.stopwords;
  out["corpus.kind"] = corpus.kind;
  out["corpus.min_sentences"] = std::to_string(effective_min_sentences());
  out["corpus.max_km"] = csv::format_double(corpus.max_km);
  out["aggregate.k_max"] = std::to_string(aggregate.k_max);
  out["aggregate.max_km"] = csv::format_double(aggregate.max_km);
  out["vocabulary.min_count"] = std::to_string(vocabulary.min_count);
  out["vocabulary.min_docs"] = std::to_string(vocabulary.min_docs);
  out["features.scheme"] = features.scheme;
  out["scan.threshold"] = csv::format_double(scan.threshold);
  out["scan.attributes"] = join_list(scan.attributes);
  out["scan.top_k"] = std::to_string(scan.top_k);
  out["model.lambda1"] = csv::format_double(model.lambda1);
  out["model.lambda2"] = csv::format_double(model.lambda2);
  out["model.tol"] = csv::format_double(model.tol);
  out["model.max_iter"] = std::to_string(model.max_iter);
  out["model.standardize"] = bool_str(model.standardize);
  out["model.folds"] = std::to_string(model.folds);
  out["model.train_frac"] = csv::format_double(model.train_frac);
  out["model.bins"] = std::to_string(model.bins);
  out["model.attributes"] = join_list(model.attributes);
  out["run.seed"] = std::to_string(run.seed);
  out["run.histogram_bin_width"] = std::to_string(run.histogram_bin_width);
  out["synth.n_units"] = std::to_string(synth.n_units);
  out["synth.vocab_size"] = std::to_string(synth.vocab_size);
  out["synth.attributes"] = join_list(synth.attributes);
  out["synth.planted_term"] = synth.planted_term;
  out["synth.planted_attribute"] = synth.planted_attribute;
  out["synth.noise_sigma"] = csv::format_double(synth.noise_sigma);
  out["synth.severed"] = bool_str(synth.severed);
  out["synth.records_per_unit"] = std::to_string(synth.records_per_unit);
  out["synth.sentences_per_record"] = std::to_string(synth.sentences_per_record);
  out["synth.tokens_per_sentence"] = std::to_string(synth.tokens_per_sentence);
  out["synth.zones_per_unit"] = std::to_string(synth.zones_per_unit);
  out["synth.planted_max_rate"] = csv::format_double(synth.planted_max_rate);
  return out;
}

void RunManifest::write(const std::string& path) const {
  nlohmann::json obj;
  obj["command"] = command;
  obj["tool_version"] = URBANTEXT_VERSION;
  obj["timestamp"] = iso_timestamp();
  obj["config"] = config;
  obj["input_digests"] = input_digests;
  obj["counts"] = counts;
  obj["degenerate_terms"] = degenerate_terms;
  obj["warnings"] = warnings;
  csv::write_file(path, obj.dump(2) + "\n");
}

void cmd_ingest(const RunConfig& config) {
  if (config.paths.gazetteer.empty() || config.paths.corpus.empty()) {
    throw input_error("ingest: paths.gazetteer and paths.corpus are required");
  }
  const geo::Gazetteer gaz = geo::load_gazetteer(config.paths.gazetteer);
  const auto records = corpus::load_records(config.paths.corpus);
  const corpus::RecordKind kind = kind_of(config);

  corpus::AssemblyReport assembly;
  std::vector<corpus::UnitDocument> docs;
  if (kind == corpus::RecordKind::qa) {
    docs = corpus::assemble_qa_documents(records, gaz, &assembly);
  } else {
    docs = corpus::assemble_geo_documents(records, gaz, config.corpus.max_km, &assembly);
  }

  // Histogram of records per unit over the assembled (pre-filter)
  // documents, fixed-width bins.
  const long bin_w = config.run.histogram_bin_width;
  long max_count = 0;
  for (const auto& d : docs) {
    max_count = std::max(max_count, static_cast<long>(d.record_ids.size()));
  }
  const long n_bins = std::max<long>(1, max_count / bin_w + 1);
  std::vector<long> bins(static_cast<std::size_t>(n_bins), 0);
  for (const auto& d : docs) {
    bins[static_cast<std::size_t>(static_cast<long>(d.record_ids.size()) / bin_w)] += 1;
  }

  const auto retained = corpus::filter_min_sentences(docs, config.effective_min_sentences());

  ensure_out_dir(config);
  RunManifest manifest = new_manifest("ingest", config);
  manifest.input_digests[config.paths.gazetteer] = csv::file_digest(config.paths.gazetteer);
  manifest.input_digests[config.paths.corpus] = csv::file_digest(config.paths.corpus);
  manifest.counts["records"] = static_cast<long>(records.size());
  manifest.counts["units_assembled"] = static_cast<long>(docs.size());
  manifest.counts["units_retained"] = static_cast<long>(retained.size());
  manifest.counts["skipped_name_pairs"] = assembly.skipped_name_pairs;
  manifest.counts["dropped_out_of_range"] = assembly.dropped_out_of_range;
  manifest.write(out_path(config, "manifest_ingest.json").string());

  corpus::write_documents(retained, out_path(config, "documents.jsonl").string());
  corpus::write_assembly_report(assembly, out_path(config, "assembly_report.json").string());

  std::ostringstream hist;
  hist << "bin_lo,bin_hi,units\n";
  for (long b = 0; b < n_bins; ++b) {
    hist << b * bin_w << ',' << (b + 1) * bin_w << ',' << bins[static_cast<std::size_t>(b)]
         << '\n';
  }
  csv::write_file(out_path(config, "records_histogram.csv").string(), hist.str());
}

void cmd_aggregate(const RunConfig& config) {
  if (config.paths.gazetteer.empty() || config.paths.attributes.empty()) {
    throw input_error("aggregate: paths.gazetteer and paths.attributes are required");
  }
  const geo::Gazetteer gaz = geo::load_gazetteer(config.paths.gazetteer);
  const auto sources = geo::load_attribute_sources(config.paths.attributes);
  const auto table =
      geo::aggregate_attributes(gaz, sources, config.aggregate.k_max, config.aggregate.max_km);

  ensure_out_dir(config);
  RunManifest manifest = new_manifest("aggregate", config);
  manifest.input_digests[config.paths.gazetteer] = csv::file_digest(config.paths.gazetteer);
  manifest.input_digests[config.paths.attributes] = csv::file_digest(config.paths.attributes);
  manifest.counts["zones"] = static_cast<long>(sources.size());
  manifest.counts["units_with_attributes"] = static_cast<long>(table.entries.size());
  manifest.write(out_path(config, "manifest_aggregate.json").string());

  geo::write_attribute_table(table, out_path(config, "unit_attributes.csv").string());
}

void cmd_features(const RunConfig& config) {
  if (config.paths.corpus.empty()) {
    throw input_error("features: paths.corpus is required");
  }
  const std::string docs_path = out_path(config, "documents.jsonl").string();
  const auto docs = corpus::load_documents(docs_path);
  if (docs.empty()) {
    throw input_error("features: no documents in " + docs_path + "; run ingest first");
  }
  const auto records = corpus::load_records(config.paths.corpus);
  const corpus::RecordKind kind = kind_of(config);
  const text::StopwordSet stopwords = stopwords_of(config);

  std::vector<text::TokenizedDocument> tokenized;
  tokenized.reserve(docs.size());
  std::set<std::string> contributing;
  for (const auto& d : docs) {
    tokenized.push_back(text::tokenize_document(d, kind, stopwords));
    contributing.insert(d.record_ids.begin(), d.record_ids.end());
  }

  // Distinct-record term sets drive the doc_count side of the 5/5 filter.
  std::map<std::string, std::set<std::string>> record_sets;
  for (const auto& rec : records) {
    if (contributing.find(rec.record_id) == contributing.end()) continue;
    const auto tokens = text::prepare_tokens(rec.text, kind, stopwords);
    record_sets[rec.record_id] = std::set<std::string>(tokens.begin(), tokens.end());
  }

  const auto vocab = text::build_vocabulary(tokenized, &record_sets,
                                            config.vocabulary.min_count,
                                            config.vocabulary.min_docs);
  const auto matrix = features::build_matrix(
      tokenized, vocab, features::weight_scheme_from_string(config.features.scheme));

  ensure_out_dir(config);
  RunManifest manifest = new_manifest("features", config);
  manifest.input_digests[config.paths.corpus] = csv::file_digest(config.paths.corpus);
  manifest.input_digests[docs_path] = csv::file_digest(docs_path);
  manifest.counts["documents"] = static_cast<long>(docs.size());
  manifest.counts["vocabulary_terms"] = static_cast<long>(vocab.size());
  manifest.counts["degenerate_terms"] = static_cast<long>(matrix.flagged_terms().size());
  manifest.degenerate_terms = matrix.flagged_terms();
  manifest.write(out_path(config, "manifest_features.json").string());

  text::write_vocabulary(vocab, out_path(config, "vocabulary.csv").string());
  features::export_matrix(matrix, out_path(config, "matrix.json").string(),
                          out_path(config, "matrix.csv").string());
}

void cmd_correlate(const RunConfig& config) {
  const std::string header = out_path(config, "matrix.json").string();
  const std::string triplets = out_path(config, "matrix.csv").string();
  const std::string attrs_path = out_path(config, "unit_attributes.csv").string();
  const auto matrix = features::import_matrix(header, triplets);
  const auto attrs = geo::load_attribute_table(attrs_path);

  const auto report = stats::scan(matrix, attrs, config.scan.attributes, config.scan.threshold);

  ensure_out_dir(config);
  RunManifest manifest = new_manifest("correlate", config);
  manifest.input_digests[header] = csv::file_digest(header);
  manifest.input_digests[triplets] = csv::file_digest(triplets);
  manifest.input_digests[attrs_path] = csv::file_digest(attrs_path);
  manifest.counts["tests_performed"] = report.m;
  manifest.counts["skipped_pairs"] = report.skipped_pairs;
  long significant = 0;
  for (const auto& [attr, b] : report.bucket_counts) significant += b.all;
  manifest.counts["significant_results"] = significant;
  manifest.write(out_path(config, "manifest_correlate.json").string());
  if (report.skipped_pairs > 0) {
    std::cerr << "warning: " << report.skipped_pairs
              << " term-attribute pair(s) skipped (degenerate vector or undersized attribute)\n";
  }

  stats::write_scan_csv(report, out_path(config, "scan.csv").string());
  stats::write_bucket_csv(report, out_path(config, "scan_buckets.csv").string());
  stats::write_top_terms_csv(report, config.scan.top_k,
                             out_path(config, "top_terms.csv").string());
}

void cmd_predict(const RunConfig& config) {
  const std::string header = out_path(config, "matrix.json").string();
  const std::string triplets = out_path(config, "matrix.csv").string();
  const std::string attrs_path = out_path(config, "unit_attributes.csv").string();
  const auto matrix = features::import_matrix(header, triplets);
  const auto attrs = geo::load_attribute_table(attrs_path);

  std::vector<std::string> attributes =
      config.model.attributes.empty() ? attrs.attributes() : config.model.attributes;
  std::sort(attributes.begin(), attributes.end());

  model::ElasticNetConfig encfg;
  encfg.lambda1 = config.model.lambda1;
  encfg.lambda2 = config.model.lambda2;
  encfg.tol = config.model.tol;
  encfg.max_iter = config.model.max_iter;
  encfg.standardize = config.model.standardize;
  encfg.seed = config.run.seed;

  std::vector<model::CVResult> results;
  std::vector<std::string> warnings;
  for (const auto& attr : attributes) {
    const auto problem = model::make_problem(matrix, attrs, attr);
    if (problem.n_rows < 8) {
      warnings.push_back("attribute '" + attr + "' skipped: only " +
                         std::to_string(problem.n_rows) + " units (need >= 8)");
      continue;
    }
    results.push_back(model::monte_carlo_cv(problem, encfg, config.model.folds,
                                            config.model.train_frac, config.model.bins));
  }

  ensure_out_dir(config);
  RunManifest manifest = new_manifest("predict", config);
  manifest.input_digests[header] = csv::file_digest(header);
  manifest.input_digests[triplets] = csv::file_digest(triplets);
  manifest.input_digests[attrs_path] = csv::file_digest(attrs_path);
  manifest.counts["attributes_evaluated"] = static_cast<long>(results.size());
  manifest.counts["attributes_skipped"] = static_cast<long>(warnings.size());
  manifest.warnings = warnings;
  manifest.write(out_path(config, "manifest_predict.json").string());
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << '\n';
  }

  std::ostringstream out;
  out << "attribute,mean_rho,std_rho";
  for (int f = 1; f <= config.model.folds; ++f) out << ",fold_" << f;
  out << ",top_term_1,top_term_2\n";
  for (const auto& r : results) {
    out << r.attribute << ',' << csv::format_double(r.mean_rho) << ','
        << csv::format_double(r.std_rho);
    for (double rho : r.per_fold_rho) out << ',' << csv::format_double(rho);
    out << ',' << (r.top_terms.size() > 0 ? r.top_terms[0] : std::string())
        << ',' << (r.top_terms.size() > 1 ? r.top_terms[1] : std::string()) << '\n';
  }
  csv::write_file(out_path(config, "cv_report.csv").string(), out.str());
}

void cmd_synth(const RunConfig& config) {
  synth::SynthConfig scfg;
  scfg.n_units = config.synth.n_units;
  scfg.vocab_size = config.synth.vocab_size;
  scfg.attributes = config.synth.attributes;
  scfg.seed = config.run.seed;
  scfg.records_per_unit = config.synth.records_per_unit;
  scfg.sentences_per_record = config.synth.sentences_per_record;
  scfg.tokens_per_sentence = config.synth.tokens_per_sentence;
  scfg.zones_per_unit = config.synth.zones_per_unit;
  scfg.planted_max_rate = config.synth.planted_max_rate;
  if (!config.synth.planted_term.empty()) {
    scfg.planted.push_back(synth::PlantedSignal{config.synth.planted_term,
                                                config.synth.planted_attribute,
                                                config.synth.noise_sigma,
                                                config.synth.severed});
  }

  ensure_out_dir(config);
  const auto out = synth::generate(scfg, config.paths.out_dir);

  RunManifest manifest = new_manifest("synth", config);
  manifest.counts["units"] = scfg.n_units;
  manifest.counts["background_terms"] = scfg.vocab_size;
  manifest.counts["records"] =
      static_cast<long>(scfg.n_units) * static_cast<long>(scfg.records_per_unit);
  manifest.input_digests[out.gazetteer_path] = csv::file_digest(out.gazetteer_path);
  manifest.input_digests[out.attributes_path] = csv::file_digest(out.attributes_path);
  manifest.input_digests[out.corpus_path] = csv::file_digest(out.corpus_path);
  manifest.write(out_path(config, "manifest_synth.json").string());
}

void cmd_report(const RunConfig& config) {
  const fs::path dir(config.paths.out_dir);
  if (!fs::is_directory(dir)) {
    throw input_error("report: output directory '" + config.paths.out_dir + "' does not exist");
  }
  const char* const artifacts[] = {
      "gazetteer.csv",      "attributes.csv",  "corpus.jsonl",
      "documents.jsonl",    "records_histogram.csv", "assembly_report.json",
      "unit_attributes.csv", "vocabulary.csv", "matrix.json",
      "matrix.csv",         "scan.csv",        "scan_buckets.csv",
      "top_terms.csv",      "cv_report.csv",
  };
  nlohmann::json summary;
  summary["out_dir"] = config.paths.out_dir;
  summary["tool_version"] = URBANTEXT_VERSION;
  nlohmann::json files = nlohmann::json::object();
  for (const char* name : artifacts) {
    const fs::path p = dir / name;
    if (!fs::exists(p)) continue;
    nlohmann::json entry;
    entry["bytes"] = static_cast<long>(fs::file_size(p));
    entry["digest"] = csv::file_digest(p.string());
    files[name] = entry;
    std::cout << name << "  " << fs::file_size(p) << " bytes  fnv1a64:"
              << entry["digest"].get<std::string>() << '\n';
  }
  summary["files"] = files;
  csv::write_file((dir / "run_summary.json").string(), summary.dump(2) + "\n");
}

void run_command(const std::string& name, const RunConfig& config) {
  if (name == "ingest") return cmd_ingest(config);
  if (name == "aggregate") return cmd_aggregate(config);
  if (name == "features") return cmd_features(config);
  if (name == "correlate") return cmd_correlate(config);
  if (name == "predict") return cmd_predict(config);
  if (name == "synth") return cmd_synth(config);
  if (name == "report") return cmd_report(config);
  throw input_error("unknown command '" + name + "'");
}

}  // namespace urbantext::pipeline
