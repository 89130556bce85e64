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

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "urbantext/corpus.hpp"
#include "urbantext/error.hpp"
#include "urbantext/geo.hpp"
#include "urbantext/rng.hpp"

using namespace urbantext;
using corpus::RawRecord;
using corpus::RecordKind;
using geo::GeoPoint;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "urbantext_corpus_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / name).string();
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

RawRecord qa(const std::string& id, const std::string& text,
             std::vector<std::string> names) {
  RawRecord r;
  r.record_id = id;
  r.kind = RecordKind::qa;
  r.text = text;
  r.unit_names = std::move(names);
  return r;
}

RawRecord blog(const std::string& id, const std::string& text, double lat, double lon) {
  RawRecord r;
  r.record_id = id;
  r.kind = RecordKind::microblog;
  r.text = text;
  r.location = GeoPoint(lat, lon);
  return r;
}

}  // namespace

TEST_CASE("split_sentences follows the terminator-plus-whitespace rule") {
  CHECK(corpus::split_sentences("").empty());
  CHECK(corpus::split_sentences("A. B! C?") ==
        std::vector<std::string>{"A.", "B!", "C?"});
  CHECK(corpus::split_sentences("no terminator") ==
        std::vector<std::string>{"no terminator"});
  // terminator not followed by whitespace does not split
  CHECK(corpus::split_sentences("pi is 3.14 ok") ==
        std::vector<std::string>{"pi is 3.14 ok"});
  CHECK(corpus::split_sentences("Hi!! There. ") ==
        std::vector<std::string>{"Hi!!", "There."});
  CHECK(corpus::split_sentences("end.") == std::vector<std::string>{"end."});
}

TEST_CASE("load_records: empty file and order preservation") {
  const auto empty = corpus::load_records(write_temp("empty.jsonl", ""));
  CHECK(empty.empty());

  const std::string three =
      R"({"record_id":"r1","kind":"qa","text":"one","unit_names":["A"]})" "\n"
      R"({"record_id":"r2","kind":"qa","text":"two","unit_names":["B"]})" "\n"
      R"({"record_id":"r3","kind":"qa","text":"three","unit_names":["A","B"]})" "\n";
  const auto records = corpus::load_records(write_temp("three.jsonl", three));
  REQUIRE(records.size() == 3);
  CHECK(records[0].record_id == "r1");
  CHECK(records[1].record_id == "r2");
  CHECK(records[2].record_id == "r3");
  CHECK(records[2].unit_names.size() == 2);
}

TEST_CASE("load_records: malformed line errors name the line") {
  const std::string bad =
      R"({"record_id":"r1","kind":"qa","text":"one","unit_names":["A"]})" "\n"
      R"({"record_id":"r2","kind":"qa","unit_names":["A"]})" "\n";  // no text
  try {
    corpus::load_records(write_temp("bad.jsonl", bad));
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("load_records: unknown kind is rejected") {
  const std::string bad = R"({"record_id":"r1","kind":"forum","text":"x"})" "\n";
  CHECK_THROWS_AS(corpus::load_records(write_temp("kind.jsonl", bad)), input_error);
}

TEST_CASE("load_records: microblog needs coordinates, qa needs unit names") {
  CHECK_THROWS_AS(corpus::load_records(write_temp(
                      "nogeo.jsonl", R"({"record_id":"r","kind":"microblog","text":"x"})" "\n")),
                  input_error);
  CHECK_THROWS_AS(corpus::load_records(write_temp(
                      "nonames.jsonl", R"({"record_id":"r","kind":"qa","text":"x"})" "\n")),
                  input_error);
}

TEST_CASE("assemble_qa_documents") {
  geo::Gazetteer g({{"u1", "Alpha", GeoPoint(51.5, 0.0)},
                    {"u2", "Beta", GeoPoint(51.6, 0.0)}});

  SUBCASE("a record naming two units contributes to both") {
    corpus::AssemblyReport report;
    const auto docs = corpus::assemble_qa_documents(
        {qa("r1", "shared text.", {"Alpha", "Beta"})}, g, &report);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].unit_id == "u1");
    CHECK(docs[0].raw_text == "shared text.");
    CHECK(docs[1].unit_id == "u2");
    CHECK(docs[1].raw_text == "shared text.");
    CHECK(report.skipped_name_pairs == 0);
  }

  SUBCASE("zero records give empty output") {
    CHECK(corpus::assemble_qa_documents({}, g).empty());
  }

  SUBCASE("two records naming the same unit are newline-joined in input order") {
    const auto docs = corpus::assemble_qa_documents(
        {qa("r1", "first.", {"Alpha"}), qa("r2", "second.", {"alpha"})}, g);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].raw_text == "first.\nsecond.");
    CHECK(docs[0].record_ids == std::vector<std::string>{"r1", "r2"});
    CHECK(docs[0].sentence_count == 2);
  }

  SUBCASE("name matching is case-insensitive exact") {
    const auto docs = corpus::assemble_qa_documents({qa("r1", "t.", {"ALPHA"})}, g);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].unit_id == "u1");
  }

  SUBCASE("unknown names are skipped and counted") {
    corpus::AssemblyReport report;
    const auto docs = corpus::assemble_qa_documents(
        {qa("r1", "t.", {"Alphaville", "Alpha"})}, g, &report);
    REQUIRE(docs.size() == 1);
    CHECK(report.skipped_name_pairs == 1);
  }

  SUBCASE("non-qa record is an error") {
    CHECK_THROWS_AS(corpus::assemble_qa_documents({blog("r1", "t", 51.5, 0.0)}, g),
                    input_error);
  }
}

TEST_CASE("assemble_geo_documents") {
  geo::Gazetteer g({{"u1", "Alpha", GeoPoint(51.5, 0.0)},
                    {"u2", "Beta", GeoPoint(51.6, 0.0)}});

  SUBCASE("record at a unit centre contributes to that unit") {
    const auto docs = corpus::assemble_geo_documents({blog("r1", "here.", 51.5, 0.0)}, g, 1.0);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].unit_id == "u1");
    CHECK(docs[0].record_ids == std::vector<std::string>{"r1"});
  }

  SUBCASE("out-of-range record is dropped and counted") {
    corpus::AssemblyReport report;
    const auto docs = corpus::assemble_geo_documents({blog("r1", "far.", 40.0, 0.0)}, g, 1.0, &report);
    CHECK(docs.empty());
    CHECK(report.dropped_out_of_range == 1);
  }

  SUBCASE("membership equals the nearest-centre oracle on random records") {
    Rng rng(909);
    std::vector<RawRecord> records;
    for (int i = 0; i < 100; ++i) {
      records.push_back(blog("r" + std::to_string(i), "text.",
                             rng.uniform(51.45, 51.65), rng.uniform(-0.05, 0.05)));
    }
    const auto docs = corpus::assemble_geo_documents(records, g, 1.0);

    std::map<std::string, std::set<std::string>> got;
    for (const auto& d : docs) {
      got[d.unit_id] = {d.record_ids.begin(), d.record_ids.end()};
    }
    // brute-force nearest-centre assignment
    std::map<std::string, std::set<std::string>> want;
    for (const auto& r : records) {
      double best = 1e300;
      std::string best_id;
      for (const auto& u : g.units()) {
        const double d = geo::haversine_km(*r.location, u.centre);
        if (d < best) {
          best = d;
          best_id = u.unit_id;
        }
      }
      if (best <= 1.0) want[best_id].insert(r.record_id);
    }
    CHECK(got == want);
  }
}

TEST_CASE("filter_min_sentences boundaries") {
  auto make_doc = [](const std::string& id, int sentences) {
    corpus::UnitDocument d;
    d.unit_id = id;
    std::string text;
    for (int i = 0; i < sentences; ++i) text += "s. ";
    d.raw_text = text;
    d.record_ids = {"r"};
    d.sentence_count = static_cast<long>(corpus::split_sentences(text).size());
    return d;
  };

  const auto d39 = make_doc("a", 39);
  const auto d40 = make_doc("b", 40);
  REQUIRE(d39.sentence_count == 39);
  REQUIRE(d40.sentence_count == 40);

  const auto kept = corpus::filter_min_sentences({d39, d40}, 40);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].unit_id == "b");

  CHECK(corpus::filter_min_sentences({d39, d40}, 0).size() == 2);

  // idempotent and order preserving
  const auto twice = corpus::filter_min_sentences(kept, 40);
  REQUIRE(twice.size() == 1);
  CHECK(twice[0].unit_id == "b");
}

TEST_CASE("documents round trip through JSONL") {
  corpus::UnitDocument d1;
  d1.unit_id = "u2";
  d1.raw_text = "line one.\nline two!";
  d1.record_ids = {"r1", "r9"};
  d1.sentence_count = 2;
  corpus::UnitDocument d2;
  d2.unit_id = "u1";
  d2.raw_text = "solo.";
  d2.record_ids = {"r5"};
  d2.sentence_count = 1;

  const auto dir = std::filesystem::temp_directory_path() / "urbantext_corpus_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "docs.jsonl").string();
  corpus::write_documents({d1, d2}, path);
  const auto back = corpus::load_documents(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].unit_id == "u1");  // sorted on write
  CHECK(back[1].raw_text == d1.raw_text);
  CHECK(back[1].record_ids == d1.record_ids);
}

TEST_CASE("retained record ids are a subset of the input ids") {
  geo::Gazetteer g({{"u1", "Alpha", GeoPoint(51.5, 0.0)}});
  std::vector<RawRecord> records{qa("r1", "a.", {"Alpha"}), qa("r2", "b.", {"Missing"})};
  const auto docs = corpus::assemble_qa_documents(records, g);
  std::set<std::string> input_ids{"r1", "r2"};
  for (const auto& d : docs) {
    for (const auto& id : d.record_ids) {
      CHECK(input_ids.count(id) == 1);
    }
  }
}
