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

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "urbantext/corpus.hpp"
#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"
#include "urbantext/pipeline.hpp"

using namespace urbantext;
using pipeline::RunConfig;

namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "urbantext_pipeline_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& contents) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

// Small deterministic fixture: 3 units, records with known counts.
struct Fixture {
  std::string dir;
  std::string config_path;
};

Fixture small_fixture(const std::string& name, int min_sentences) {
  Fixture f;
  f.dir = fresh_dir(name);
  const std::string gaz =
      "unit_id,name,lat,lon\n"
      "u1,Alpha,51.50,0.00\n"
      "u2,Beta,51.52,0.00\n"
      "u3,Gamma,51.54,0.00\n";
  write_file(f.dir, "gaz.csv", gaz);

  const std::string attrs =
      "zone_id,lat,lon,imd\n"
      "z1,51.500,0.001,10\n"
      "z2,51.501,0.000,20\n"
      "z3,51.520,0.001,30\n"
      "z4,51.540,0.001,50\n";
  write_file(f.dir, "attrs.csv", attrs);

  // u1: 5 records, u2: 2 records, u3: 1 record; each record has 2 sentences
  std::string corpus;
  auto rec = [](const std::string& id, const std::string& name, const std::string& text) {
    nlohmann::json obj;
    obj["record_id"] = id;
    obj["kind"] = "qa";
    obj["text"] = text;
    obj["unit_names"] = std::vector<std::string>{name};
    return obj.dump() + "\n";
  };
  for (int i = 0; i < 5; ++i) {
    corpus += rec("a" + std::to_string(i), "Alpha",
                  "alpha streets feel busy today. markets trade fine goods.");
  }
  corpus += rec("b0", "Beta", "beta parks look green. rivers flow calmly.");
  corpus += rec("b1", "Beta", "beta nights stay loud. trains run often.");
  corpus += rec("c0", "Gamma", "gamma hills rise high. paths wind slowly.");
  write_file(f.dir, "corpus.jsonl", corpus);

  const std::string config =
      "[paths]\n"
      "gazetteer = " + f.dir + "/gaz.csv\n"
      "attributes = " + f.dir + "/attrs.csv\n"
      "corpus = " + f.dir + "/corpus.jsonl\n"
      "out_dir = " + f.dir + "/out\n"
      "[corpus]\n"
      "kind = qa\n"
      "min_sentences = " + std::to_string(min_sentences) + "\n"
      "[vocabulary]\n"
      "min_count = 1\n"
      "min_docs = 1\n"
      "[run]\n"
      "seed = 11\n"
      "histogram_bin_width = 2\n";
  f.config_path = write_file(f.dir, "run.ini", config);
  return f;
}

}  // namespace

TEST_CASE("config parsing: defaults, overrides, and unknown keys") {
  const std::string dir = fresh_dir("config");
  const RunConfig defaults = RunConfig::from_string("", "inline");
  CHECK(defaults.corpus.kind == "qa");
  CHECK(defaults.effective_min_sentences() == 40);
  CHECK(defaults.vocabulary.min_count == 5);
  CHECK(defaults.vocabulary.min_docs == 5);
  CHECK(defaults.aggregate.k_max == 10);
  CHECK(defaults.aggregate.max_km == 1.0);
  CHECK(defaults.scan.threshold == 0.01);
  CHECK(defaults.model.folds == 10);
  CHECK(defaults.model.train_frac == 0.75);
  CHECK(defaults.model.lambda1 == 0.1);
  CHECK(defaults.model.lambda2 == 0.1);
  CHECK(defaults.model.standardize);

  const RunConfig mb = RunConfig::from_string("[corpus]\nkind = microblog\n", "inline");
  CHECK(mb.effective_min_sentences() == 0);  // kind-dependent default
  const RunConfig forced =
      RunConfig::from_string("[corpus]\nkind = microblog\nmin_sentences = 12\n", "inline");
  CHECK(forced.effective_min_sentences() == 12);

  CHECK_THROWS_AS(RunConfig::from_string("[paths]\nbogus = x\n", "inline"), input_error);
  CHECK_THROWS_AS(RunConfig::from_string("[nosuch]\nk = v\n", "inline"), input_error);
  CHECK_THROWS_AS(RunConfig::from_string("[model]\ntrain_frac = 1.5\n", "inline"), input_error);
  CHECK_THROWS_AS(RunConfig::from_string("[scan]\nthreshold = 2\n", "inline"), input_error);
  CHECK_THROWS_AS(RunConfig::from_string("no equals here\n", "inline"), input_error);
}

TEST_CASE("ingest: documents, histogram, and skip report") {
  Fixture f = small_fixture("ingest", 0);
  RunConfig config = RunConfig::from_file(f.config_path);
  pipeline::cmd_ingest(config);

  const auto docs = corpus::load_documents(f.dir + "/out/documents.jsonl");
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].unit_id == "u1");
  CHECK(docs[0].record_ids.size() == 5);
  CHECK(docs[0].sentence_count == 10);
  CHECK(docs[1].record_ids.size() == 2);
  CHECK(docs[2].record_ids.size() == 1);

  // histogram with bin width 2: u3 has 1 record ([0,2)), u2 has 2 ([2,4)),
  // u1 has 5 ([4,6))
  const auto hist = csv::read_lines(f.dir + "/out/records_histogram.csv");
  REQUIRE(hist.size() == 4);
  CHECK(hist[0] == "bin_lo,bin_hi,units");
  CHECK(hist[1] == "0,2,1");
  CHECK(hist[2] == "2,4,1");
  CHECK(hist[3] == "4,6,1");

  const auto report = nlohmann::json::parse(csv::read_file(f.dir + "/out/assembly_report.json"));
  CHECK(report["skipped_name_pairs"] == 0);
  CHECK(report["dropped_out_of_range"] == 0);

  const auto manifest =
      nlohmann::json::parse(csv::read_file(f.dir + "/out/manifest_ingest.json"));
  CHECK(manifest["command"] == "ingest");
  CHECK(manifest["counts"]["records"] == 8);
  CHECK(manifest["counts"]["units_retained"] == 3);
  CHECK(manifest["input_digests"].size() == 2);
}

TEST_CASE("ingest: sentence filter removes short documents") {
  Fixture f = small_fixture("ingest_filter", 3);
  RunConfig config = RunConfig::from_file(f.config_path);
  pipeline::cmd_ingest(config);
  const auto docs = corpus::load_documents(f.dir + "/out/documents.jsonl");
  REQUIRE(docs.size() == 2);  // u3 has only 2 sentences
  CHECK(docs[0].unit_id == "u1");
  CHECK(docs[1].unit_id == "u2");
}

TEST_CASE("ingest: empty corpus produces empty store and zero histogram") {
  Fixture f = small_fixture("ingest_empty", 0);
  write_file(f.dir, "corpus.jsonl", "");
  RunConfig config = RunConfig::from_file(f.config_path);
  pipeline::cmd_ingest(config);
  CHECK(corpus::load_documents(f.dir + "/out/documents.jsonl").empty());
  const auto hist = csv::read_lines(f.dir + "/out/records_histogram.csv");
  REQUIRE(hist.size() == 2);
  CHECK(hist[1] == "0,2,0");
}

TEST_CASE("aggregate writes the unit attribute table") {
  Fixture f = small_fixture("aggregate", 0);
  RunConfig config = RunConfig::from_file(f.config_path);
  pipeline::cmd_aggregate(config);
  const auto table = geo::load_attribute_table(f.dir + "/out/unit_attributes.csv");
  CHECK(table.value("u1", "imd") == doctest::Approx(15.0));
  CHECK(table.value("u2", "imd") == doctest::Approx(30.0));
  CHECK(table.value("u3", "imd") == doctest::Approx(50.0));
  CHECK(table.support.at("u1") == 2);
}

TEST_CASE("features then correlate and predict run end to end on the small fixture") {
  Fixture f = small_fixture("full", 0);
  RunConfig config = RunConfig::from_file(f.config_path);
  pipeline::cmd_ingest(config);
  pipeline::cmd_aggregate(config);
  pipeline::cmd_features(config);

  CHECK(fs::exists(f.dir + "/out/vocabulary.csv"));
  CHECK(fs::exists(f.dir + "/out/matrix.json"));
  CHECK(fs::exists(f.dir + "/out/matrix.csv"));

  pipeline::cmd_correlate(config);
  CHECK(fs::exists(f.dir + "/out/scan.csv"));
  CHECK(fs::exists(f.dir + "/out/scan_buckets.csv"));
  const auto scan_lines = csv::read_lines(f.dir + "/out/scan.csv");
  CHECK(scan_lines[0] == "attribute,term,rho,p_raw,p_adjusted,n");

  // predict skips imd: only 3 units (< 8) -> warning, empty report body
  pipeline::cmd_predict(config);
  const auto cv_lines = csv::read_lines(f.dir + "/out/cv_report.csv");
  REQUIRE(cv_lines.size() == 1);  // header only
  const auto manifest =
      nlohmann::json::parse(csv::read_file(f.dir + "/out/manifest_predict.json"));
  CHECK(manifest["counts"]["attributes_skipped"] == 1);
  REQUIRE(manifest["warnings"].size() == 1);

  pipeline::cmd_report(config);
  CHECK(fs::exists(f.dir + "/out/run_summary.json"));
}

TEST_CASE("features requires ingest output") {
  Fixture f = small_fixture("features_no_docs", 0);
  RunConfig config = RunConfig::from_file(f.config_path);
  CHECK_THROWS_AS(pipeline::cmd_features(config), input_error);
}

TEST_CASE("ingest histogram: 3 units with 5/50/500 records recounted into bins") {
  const std::string dir = fresh_dir("hist");
  write_file(dir, "gaz.csv",
             "unit_id,name,lat,lon\n"
             "u1,Alpha,51.50,0.00\n"
             "u2,Beta,51.52,0.00\n"
             "u3,Gamma,51.54,0.00\n");
  std::string corpus;
  auto add = [&](const std::string& unit, int count) {
    for (int i = 0; i < count; ++i) {
      nlohmann::json obj;
      obj["record_id"] = unit + "_" + std::to_string(i);
      obj["kind"] = "qa";
      obj["text"] = "one line here.";
      obj["unit_names"] = std::vector<std::string>{unit};
      corpus += obj.dump() + "\n";
    }
  };
  add("Alpha", 5);
  add("Beta", 50);
  add("Gamma", 500);
  write_file(dir, "corpus.jsonl", corpus);
  const std::string config_path = write_file(
      dir, "run.ini",
      "[paths]\ngazetteer = " + dir + "/gaz.csv\ncorpus = " + dir + "/corpus.jsonl\n" +
          "out_dir = " + dir + "/out\n[corpus]\nmin_sentences = 0\n");
  pipeline::cmd_ingest(RunConfig::from_file(config_path));

  // default bin width 10: 5 -> [0,10), 50 -> [50,60), 500 -> [500,510)
  const auto hist = csv::read_lines(dir + "/out/records_histogram.csv");
  std::map<long, long> by_lo;
  for (std::size_t i = 1; i < hist.size(); ++i) {
    const auto f = csv::split_fields(hist[i]);
    by_lo[std::stol(f[0])] = std::stol(f[2]);
  }
  CHECK(by_lo.at(0) == 1);
  CHECK(by_lo.at(50) == 1);
  CHECK(by_lo.at(500) == 1);
  long total = 0;
  for (const auto& [lo, c] : by_lo) total += c;
  CHECK(total == 3);
}

TEST_CASE("predict: new seed changes fold columns but not the schema") {
  const std::string dir = fresh_dir("seeds");
  const std::string synth_cfg = write_file(
      dir, "synth.ini",
      "[paths]\nout_dir = " + dir + "\n[run]\nseed = 5\n[synth]\n"
      "n_units = 40\nvocab_size = 60\nattributes = imd\n"
      "planted_term = kzplantq\nplanted_attribute = imd\nnoise_sigma = 0.05\n");
  pipeline::cmd_synth(RunConfig::from_file(synth_cfg));

  auto chain = [&](std::uint64_t seed, const std::string& out) {
    const std::string cfg_path = write_file(
        dir, "run" + std::to_string(seed) + ".ini",
        "[paths]\ngazetteer = " + dir + "/gazetteer.csv\nattributes = " + dir +
            "/attributes.csv\ncorpus = " + dir + "/corpus.jsonl\nout_dir = " + out +
            "\n[corpus]\nmin_sentences = 0\n[vocabulary]\nmin_count = 2\nmin_docs = 2\n" +
            "[model]\nlambda1 = 15\nlambda2 = 0.1\n[run]\nseed = " + std::to_string(seed) +
            "\n");
    RunConfig config = RunConfig::from_file(cfg_path);
    pipeline::cmd_ingest(config);
    pipeline::cmd_aggregate(config);
    pipeline::cmd_features(config);
    pipeline::cmd_predict(config);
    return csv::read_lines(out + "/cv_report.csv");
  };
  const auto a = chain(1, dir + "/out_a");
  const auto b = chain(2, dir + "/out_b");
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 2);
  CHECK(a[0] == b[0]);  // identical header schema
  CHECK(a[0] ==
        "attribute,mean_rho,std_rho,fold_1,fold_2,fold_3,fold_4,fold_5,fold_6,fold_7,"
        "fold_8,fold_9,fold_10,top_term_1,top_term_2");
  CHECK(a[1] != b[1]);  // fold values move with the seed
}

TEST_CASE("run_command rejects unknown subcommands") {
  CHECK_THROWS_AS(pipeline::run_command("zap", RunConfig{}), input_error);
}

TEST_CASE("rerunning ingest on identical inputs produces identical outputs") {
  Fixture f = small_fixture("rerun", 0);
  RunConfig config = RunConfig::from_file(f.config_path);
  pipeline::cmd_ingest(config);
  const std::string docs1 = csv::read_file(f.dir + "/out/documents.jsonl");
  const std::string hist1 = csv::read_file(f.dir + "/out/records_histogram.csv");
  pipeline::cmd_ingest(config);
  CHECK(csv::read_file(f.dir + "/out/documents.jsonl") == docs1);
  CHECK(csv::read_file(f.dir + "/out/records_histogram.csv") == hist1);
}

#ifdef CLI_PATH
TEST_CASE("CLI: exit codes for success, input error, and bad usage") {
  Fixture f = small_fixture("cli", 0);
  const std::string cli = CLI_PATH;

  const int ok = std::system(
      (cli + " ingest --config " + f.config_path + " > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(ok) == 0);

  const int missing = std::system(
      (cli + " ingest --config /nonexistent.ini > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(missing) == 1);

  const int unknown = std::system((cli + " frobnicate > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(unknown) != 0);

  const int version = std::system((cli + " --version > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(version) == 0);
}

TEST_CASE("CLI: --out and --seed override the config") {
  Fixture f = small_fixture("cli_override", 0);
  const std::string cli = CLI_PATH;
  const std::string alt = f.dir + "/alt_out";
  const int rc = std::system(
      (cli + " ingest --config " + f.config_path + " --out " + alt + " > /dev/null 2>&1")
          .c_str());
  REQUIRE(WEXITSTATUS(rc) == 0);
  CHECK(fs::exists(alt + "/documents.jsonl"));
}
#endif
