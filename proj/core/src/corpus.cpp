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

#include "urbantext/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"

namespace urbantext::corpus {

namespace {

std::string lower_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

RawRecord parse_record(const nlohmann::json& obj, const std::string& ctx) {
  RawRecord rec;
  if (!obj.is_object()) {
    throw input_error(ctx + ": expected a JSON object");
  }
  if (!obj.contains("record_id") || !obj["record_id"].is_string()) {
    throw input_error(ctx + ": missing string field 'record_id'");
  }
  rec.record_id = obj["record_id"].get<std::string>();
  if (!obj.contains("kind") || !obj["kind"].is_string()) {
    throw input_error(ctx + ": missing string field 'kind'");
  }
  const std::string kind = obj["kind"].get<std::string>();
  if (kind == "qa") {
    rec.kind = RecordKind::qa;
  } else if (kind == "microblog") {
    rec.kind = RecordKind::microblog;
  } else {
    throw input_error(ctx + ": unknown kind '" + kind + "'");
  }
  if (!obj.contains("text") || !obj["text"].is_string()) {
    throw input_error(ctx + ": missing string field 'text'");
  }
  rec.text = obj["text"].get<std::string>();
  if (rec.text.empty()) {
    throw input_error(ctx + ": 'text' must be non-empty");
  }
  if (rec.kind == RecordKind::qa) {
    if (!obj.contains("unit_names") || !obj["unit_names"].is_array() ||
        obj["unit_names"].empty()) {
      throw input_error(ctx + ": qa record needs a non-empty 'unit_names' array");
    }
    for (const auto& n : obj["unit_names"]) {
      if (!n.is_string()) {
        throw input_error(ctx + ": 'unit_names' entries must be strings");
      }
      rec.unit_names.push_back(n.get<std::string>());
    }
  } else {
    if (!obj.contains("lat") || !obj.contains("lon") ||
        !obj["lat"].is_number() || !obj["lon"].is_number()) {
      throw input_error(ctx + ": microblog record needs numeric 'lat' and 'lon'");
    }
    rec.location = geo::GeoPoint(obj["lat"].get<double>(), obj["lon"].get<double>());
  }
  if (obj.contains("timestamp")) {
    if (!obj["timestamp"].is_string()) {
      throw input_error(ctx + ": 'timestamp' must be a string");
    }
    rec.timestamp = obj["timestamp"].get<std::string>();
  }
  return rec;
}

// Accumulates record texts per unit in contribution order.
struct DocBuilder {
  std::string text;
  std::vector<std::string> record_ids;
};

std::vector<UnitDocument> finish_documents(std::map<std::string, DocBuilder>& builders) {
  std::vector<UnitDocument> docs;
  docs.reserve(builders.size());
  for (auto& [unit_id, b] : builders) {
    UnitDocument doc;
    doc.unit_id = unit_id;
    doc.raw_text = std::move(b.text);
    doc.record_ids = std::move(b.record_ids);
    doc.sentence_count = static_cast<long>(split_sentences(doc.raw_text).size());
    docs.push_back(std::move(doc));
  }
  return docs;
}

void append_record(std::map<std::string, DocBuilder>& builders,
                   const std::string& unit_id, const RawRecord& rec) {
  DocBuilder& b = builders[unit_id];
  if (!b.text.empty()) b.text.push_back('\n');
  b.text += rec.text;
  b.record_ids.push_back(rec.record_id);
}

}  // namespace

std::vector<RawRecord> load_records(const std::string& path, CorpusFormat format) {
  if (format != CorpusFormat::jsonl) {
    throw input_error("load_records: unsupported corpus format");
  }
  const auto lines = csv::read_lines(path);
  std::vector<RawRecord> records;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const std::string ctx = path + " line " + std::to_string(i + 1);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw input_error(ctx + ": invalid JSON: " + e.what());
    }
    records.push_back(parse_record(obj, ctx));
  }
  return records;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    cur.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      const bool at_end = (i + 1 == text.size());
      const bool before_ws =
          !at_end && std::isspace(static_cast<unsigned char>(text[i + 1]));
      if (at_end || before_ws) {
        const std::string trimmed = csv::trim(cur);
        if (!trimmed.empty()) sentences.push_back(trimmed);
        cur.clear();
      }
    }
  }
  const std::string trimmed = csv::trim(cur);
  if (!trimmed.empty()) sentences.push_back(trimmed);
  return sentences;
}

std::vector<UnitDocument> assemble_qa_documents(const std::vector<RawRecord>& records,
                                                const geo::Gazetteer& g,
                                                AssemblyReport* report) {
  // Lowercased gazetteer name -> unit_id; on duplicate names the smaller
  // unit_id wins (units are already sorted by id).
  std::map<std::string, std::string> name_to_unit;
  for (const auto& u : g.units()) {
    name_to_unit.emplace(lower_ascii(u.name), u.unit_id);
  }

  std::map<std::string, DocBuilder> builders;
  for (const RawRecord& rec : records) {
    if (rec.kind != RecordKind::qa) {
      throw input_error("assemble_qa_documents: record '" + rec.record_id +
                        "' is not a qa record");
    }
    for (const std::string& name : rec.unit_names) {
      auto it = name_to_unit.find(lower_ascii(name));
      if (it == name_to_unit.end()) {
        if (report) report->skipped_name_pairs += 1;
        continue;
      }
      append_record(builders, it->second, rec);
    }
  }
  return finish_documents(builders);
}

std::vector<UnitDocument> assemble_geo_documents(const std::vector<RawRecord>& records,
                                                 const geo::Gazetteer& g, double max_km,
                                                 AssemblyReport* report) {
  std::map<std::string, DocBuilder> builders;
  for (const RawRecord& rec : records) {
    if (rec.kind != RecordKind::microblog || !rec.location.has_value()) {
      throw input_error("assemble_geo_documents: record '" + rec.record_id +
                        "' is not a located microblog record");
    }
    const auto unit = geo::assign_point(*rec.location, g, max_km);
    if (!unit.has_value()) {
      if (report) report->dropped_out_of_range += 1;
      continue;
    }
    append_record(builders, *unit, rec);
  }
  return finish_documents(builders);
}

std::vector<UnitDocument> filter_min_sentences(std::vector<UnitDocument> docs,
                                               long min_sentences) {
  if (min_sentences < 0) {
    throw input_error("filter_min_sentences: min_sentences must be >= 0");
  }
  std::vector<UnitDocument> kept;
  kept.reserve(docs.size());
  for (auto& d : docs) {
    if (d.sentence_count >= min_sentences) kept.push_back(std::move(d));
  }
  return kept;
}

void write_documents(const std::vector<UnitDocument>& docs, const std::string& path) {
  std::vector<const UnitDocument*> ordered;
  ordered.reserve(docs.size());
  for (const auto& d : docs) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(),
            [](const UnitDocument* a, const UnitDocument* b) { return a->unit_id < b->unit_id; });
  std::ostringstream out;
  for (const UnitDocument* d : ordered) {
    nlohmann::json obj;
    obj["unit_id"] = d->unit_id;
    obj["text"] = d->raw_text;
    obj["record_ids"] = d->record_ids;
    obj["sentence_count"] = d->sentence_count;
    out << obj.dump() << '\n';
  }
  csv::write_file(path, out.str());
}

std::vector<UnitDocument> load_documents(const std::string& path) {
  const auto lines = csv::read_lines(path);
  std::vector<UnitDocument> docs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const std::string ctx = path + " line " + std::to_string(i + 1);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      throw input_error(ctx + ": invalid JSON: " + e.what());
    }
    UnitDocument doc;
    try {
      doc.unit_id = obj.at("unit_id").get<std::string>();
      doc.raw_text = obj.at("text").get<std::string>();
      doc.record_ids = obj.at("record_ids").get<std::vector<std::string>>();
      doc.sentence_count = obj.at("sentence_count").get<long>();
    } catch (const nlohmann::json::exception& e) {
      throw input_error(ctx + ": bad document object: " + e.what());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

void write_assembly_report(const AssemblyReport& report, const std::string& path) {
  nlohmann::json obj;
  obj["skipped_name_pairs"] = report.skipped_name_pairs;
  obj["dropped_out_of_range"] = report.dropped_out_of_range;
  csv::write_file(path, obj.dump(2) + "\n");
}

}  // namespace urbantext::corpus
