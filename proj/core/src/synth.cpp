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

#include "urbantext/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"
#include "urbantext/rng.hpp"

namespace urbantext::synth {

namespace {

constexpr double kKmPerDegLat = 111.19492664455873;  // pi/180 * 6371
constexpr double kBaseLat = 51.30;
constexpr double kBaseLon = -0.30;
constexpr double kGridStepLatDeg = 0.020;  // ~2.2 km
constexpr double kGridStepLonDeg = 0.032;  // ~2.2 km at 51.5 N
// Units below this share of the attribute range emit no planted tokens,
// so the planted term never covers every document.
constexpr double kPlantedFloor = 0.08;

std::string pad_number(int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*d", width, value);
  return buf;
}

}  // namespace

SynthOutput generate(const SynthConfig& cfg, const std::string& out_dir) {
  if (cfg.n_units < 20) {
    throw input_error("synth: n_units must be >= 20");
  }
  if (cfg.vocab_size < 50) {
    throw input_error("synth: vocab_size must be >= 50");
  }
  if (cfg.attributes.empty()) {
    throw input_error("synth: need at least one attribute");
  }
  for (const auto& plant : cfg.planted) {
    if (std::find(cfg.attributes.begin(), cfg.attributes.end(), plant.attribute) ==
        cfg.attributes.end()) {
      throw input_error("synth: planted term '" + plant.term +
                        "' references unknown attribute '" + plant.attribute + "'");
    }
    if (plant.term.empty()) {
      throw input_error("synth: planted term must be non-empty");
    }
  }
  if (cfg.records_per_unit < 1 || cfg.sentences_per_record < 1 ||
      cfg.tokens_per_sentence < 1 || cfg.zones_per_unit < 1) {
    throw input_error("synth: corpus shape parameters must be >= 1");
  }

  Rng rng(cfg.seed);

  // Unit centres on a grid, id/name in row-major order.
  const int grid_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cfg.n_units))));
  struct Unit {
    std::string id;
    std::string name;
    double lat;
    double lon;
  };
  std::vector<Unit> units;
  units.reserve(static_cast<std::size_t>(cfg.n_units));
  for (int u = 0; u < cfg.n_units; ++u) {
    const int row = u / grid_cols;
    const int col = u % grid_cols;
    units.push_back(Unit{"u" + pad_number(u, 4), "area " + pad_number(u, 4),
                         kBaseLat + row * kGridStepLatDeg, kBaseLon + col * kGridStepLonDeg});
  }

  // Per-attribute unit values.
  std::map<std::string, std::vector<double>> attr_values;
  for (const auto& attr : cfg.attributes) {
    auto& v = attr_values[attr];
    v.reserve(units.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
      v.push_back(rng.uniform(10.0, 90.0));
    }
  }

  // Zones: jittered within 1 km of their unit's centre, carrying the
  // unit's attribute values.
  std::ostringstream attrs_csv;
  attrs_csv << "zone_id,lat,lon";
  std::vector<std::string> attr_names = cfg.attributes;
  std::sort(attr_names.begin(), attr_names.end());
  for (const auto& a : attr_names) attrs_csv << ',' << a;
  attrs_csv << '\n';
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (int zi = 0; zi < cfg.zones_per_unit; ++zi) {
      const double radius_km = rng.uniform(0.05, 0.40);
      const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
      const double dlat = radius_km * std::cos(angle) / kKmPerDegLat;
      const double dlon = radius_km * std::sin(angle) /
                          (kKmPerDegLat * std::cos(units[u].lat * 3.14159265358979323846 / 180.0));
      attrs_csv << units[u].id << "z" << zi << ',' << csv::format_double(units[u].lat + dlat)
                << ',' << csv::format_double(units[u].lon + dlon);
      for (const auto& a : attr_names) {
        attrs_csv << ',' << csv::format_double(attr_values[a][u]);
      }
      attrs_csv << '\n';
    }
  }

  // Planted token counts per unit: rate follows the normalized attribute
  // (or an independent draw when severed), plus Gaussian noise.
  const long tokens_per_unit = static_cast<long>(cfg.records_per_unit) *
                               cfg.sentences_per_record * cfg.tokens_per_sentence;
  std::vector<std::vector<long>> planted_counts(cfg.planted.size(),
                                                std::vector<long>(units.size(), 0));
  for (std::size_t pi = 0; pi < cfg.planted.size(); ++pi) {
    const auto& plant = cfg.planted[pi];
    const auto& v = attr_values[plant.attribute];
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    const double range = hi - lo;
    for (std::size_t u = 0; u < units.size(); ++u) {
      const double q = plant.severed
                           ? rng.uniform()
                           : (range > 0.0 ? (v[u] - lo) / range : 0.5);
      double level = q + rng.normal(0.0, plant.noise_sigma);
      if (level < 0.0) level = 0.0;
      if (level > 1.0) level = 1.0;
      const double above = level - kPlantedFloor;
      const double rate =
          above <= 0.0 ? 0.0 : cfg.planted_max_rate * above / (1.0 - kPlantedFloor);
      planted_counts[pi][u] = std::lround(rate * static_cast<double>(tokens_per_unit));
    }
  }

  // Background vocabulary with Zipf weights.
  const int width = static_cast<int>(std::to_string(cfg.vocab_size - 1).size());
  std::vector<std::string> background;
  background.reserve(static_cast<std::size_t>(cfg.vocab_size));
  std::vector<double> cumulative;
  cumulative.reserve(static_cast<std::size_t>(cfg.vocab_size));
  double total_weight = 0.0;
  for (int i = 0; i < cfg.vocab_size; ++i) {
    background.push_back("bg" + pad_number(i, width));
    total_weight += 1.0 / std::pow(static_cast<double>(i + 1), cfg.zipf_exponent);
    cumulative.push_back(total_weight);
  }
  auto draw_background = [&]() -> const std::string& {
    const double r = rng.uniform(0.0, total_weight);
    const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), r);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()), background.size() - 1);
    return background[idx];
  };

  // Token streams per unit, planted occurrences shuffled into place, then
  // chunked into sentences and records.
  std::ostringstream corpus;
  for (std::size_t u = 0; u < units.size(); ++u) {
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(tokens_per_unit));
    for (std::size_t pi = 0; pi < cfg.planted.size(); ++pi) {
      for (long c = 0; c < planted_counts[pi][u] && static_cast<long>(tokens.size()) < tokens_per_unit; ++c) {
        tokens.push_back(cfg.planted[pi].term);
      }
    }
    while (static_cast<long>(tokens.size()) < tokens_per_unit) {
      tokens.push_back(draw_background());
    }
    rng.shuffle(tokens);

    std::size_t t = 0;
    for (int r = 0; r < cfg.records_per_unit; ++r) {
      std::string text;
      for (int s = 0; s < cfg.sentences_per_record; ++s) {
        for (int w = 0; w < cfg.tokens_per_sentence; ++w) {
          if (w > 0) text.push_back(' ');
          text += tokens[t++];
        }
        text += ". ";
      }
      if (!text.empty() && text.back() == ' ') text.pop_back();

      nlohmann::json rec;
      rec["record_id"] = units[u].id + "-r" + pad_number(r, 2);
      rec["kind"] = "qa";
      rec["text"] = text;
      rec["unit_names"] = std::vector<std::string>{units[u].name};
      corpus << rec.dump() << '\n';
    }
  }

  std::ostringstream gaz;
  gaz << "unit_id,name,lat,lon\n";
  for (const auto& unit : units) {
    gaz << unit.id << ',' << unit.name << ',' << csv::format_double(unit.lat) << ','
        << csv::format_double(unit.lon) << '\n';
  }

  SynthOutput out;
  out.gazetteer_path = out_dir + "/gazetteer.csv";
  out.attributes_path = out_dir + "/attributes.csv";
  out.corpus_path = out_dir + "/corpus.jsonl";
  csv::write_file(out.gazetteer_path, gaz.str());
  csv::write_file(out.attributes_path, attrs_csv.str());
  csv::write_file(out.corpus_path, corpus.str());
  return out;
}

}  // namespace urbantext::synth
