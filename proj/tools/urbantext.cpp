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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "urbantext/error.hpp"
#include "urbantext/pipeline.hpp"
#include "urbantext/version.hpp"

namespace {

constexpr const char* kCommands[] = {"ingest", "aggregate", "features", "correlate",
                                     "predict", "synth", "report"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"urbantext: predict and explain neighbourhood attributes from text corpora"};
  app.set_version_flag("--version", URBANTEXT_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;

  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--seed", seed_override, "override [run] seed");
    sub->add_option("--out", out_override, "override [paths] out_dir");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    app.exit(e);
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    urbantext::pipeline::RunConfig config =
        urbantext::pipeline::RunConfig::from_file(config_path);
    if (seed_override.has_value()) config.run.seed = *seed_override;
    if (out_override.has_value()) config.paths.out_dir = *out_override;
    urbantext::pipeline::run_command(command, config);
  } catch (const urbantext::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
