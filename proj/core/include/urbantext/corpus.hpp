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

#ifndef URBANTEXT_CORPUS_HPP
#define URBANTEXT_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "urbantext/geo.hpp"

namespace urbantext::corpus {

enum class RecordKind { qa, microblog };

enum class CorpusFormat { jsonl };

/// One ingested text item: a QA discussion thread (kind qa, keyed by the
/// unit names it mentions) or a geolocated microblog post (kind microblog).
struct RawRecord {
  std::string record_id;
  RecordKind kind = RecordKind::qa;
  std::string text;
  std::vector<std::string> unit_names;       // qa only
  std::optional<geo::GeoPoint> location;     // microblog only
  std::optional<std::string> timestamp;
};

/// The concatenated per-unit document built from all contributing records.
struct UnitDocument {
  std::string unit_id;
  std::string raw_text;                 // record texts joined with '\n'
  std::vector<std::string> record_ids;  // in contribution order
  long sentence_count = 0;              // split_sentences(raw_text).size()
};

/// Non-fatal assembly bookkeeping: qa unit names not found in the
/// gazetteer, and microblog records farther than max_km from every centre.
struct AssemblyReport {
  long skipped_name_pairs = 0;
  long dropped_out_of_range = 0;
};

/// One JSON object per line; see the record schema in README. Malformed
/// lines raise input_error naming the line number.
std::vector<RawRecord> load_records(const std::string& path,
                                    CorpusFormat format = CorpusFormat::jsonl);

/// Split at `.`, `!` or `?` followed by whitespace or end of text.
/// Fragments are trimmed; empty ones are discarded.
std::vector<std::string> split_sentences(const std::string& text);

/// Group qa records into one document per named unit. Name matching is a
/// case-insensitive exact match on gazetteer names; a record contributes
/// to every unit it names. Output is sorted by unit_id.
std::vector<UnitDocument> assemble_qa_documents(const std::vector<RawRecord>& records,
                                                const geo::Gazetteer& g,
                                                AssemblyReport* report = nullptr);

/// Group microblog records by nearest unit centre within max_km.
std::vector<UnitDocument> assemble_geo_documents(const std::vector<RawRecord>& records,
                                                 const geo::Gazetteer& g, double max_km,
                                                 AssemblyReport* report = nullptr);

/// Keep documents with sentence_count >= min_sentences. Order-preserving.
std::vector<UnitDocument> filter_min_sentences(std::vector<UnitDocument> docs,
                                               long min_sentences);

/// Persisted documents, one JSON object per line, sorted by unit_id.
void write_documents(const std::vector<UnitDocument>& docs, const std::string& path);
std::vector<UnitDocument> load_documents(const std::string& path);

/// `{"skipped_name_pairs": n, "dropped_out_of_range": n}`
void write_assembly_report(const AssemblyReport& report, const std::string& path);

}  // namespace urbantext::corpus

#endif  // URBANTEXT_CORPUS_HPP
