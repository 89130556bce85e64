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

#ifndef URBANTEXT_SYNTH_HPP
#define URBANTEXT_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace urbantext::synth {

/// A term whose per-unit rate tracks one synthetic attribute (with
/// Gaussian noise on the normalized attribute scale). With severed=true
/// the rate is drawn independently of the attribute instead, for null
/// controls.
struct PlantedSignal {
  std::string term;
  std::string attribute;
  double noise_sigma = 0.05;
  bool severed = false;
};

struct SynthConfig {
  int n_units = 200;      // >= 20
  int vocab_size = 500;   // background terms, >= 50
  std::vector<std::string> attributes = {"imd"};
  std::vector<PlantedSignal> planted;
  std::uint64_t seed = 1;

  int records_per_unit = 10;
  int sentences_per_record = 5;
  int tokens_per_sentence = 10;
  int zones_per_unit = 3;
  double zipf_exponent = 1.1;
  /// Peak share of a document's tokens a planted term can reach.
  double planted_max_rate = 0.06;
};

struct SynthOutput {
  std::string gazetteer_path;
  std::string attributes_path;
  std::string corpus_path;
};

/// Deterministically generate a gazetteer, zone attribute file, and qa
/// corpus under out_dir. Unit centres sit on a ~2.2 km grid; zone
/// centroids are jittered within 1 km of their unit's centre and carry
/// the unit's attribute values. Background tokens follow a seeded Zipf
/// draw; every generated file conforms to the loader formats.
SynthOutput generate(const SynthConfig& cfg, const std::string& out_dir);

}  // namespace urbantext::synth

#endif  // URBANTEXT_SYNTH_HPP
