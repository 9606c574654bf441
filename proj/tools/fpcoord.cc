// Copyright 2026 The fpcoord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "fpcoord/cli/commands.h"

namespace {

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("fpcoord");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("FPCOORD_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Fictitious-play coordination experiments"};
  app.require_subcommand(1);

  std::string mode = "encounter";
  std::string config;
  std::string seeds;
  std::string out_dir = ".";
  std::string format = "jsonl";
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Run encounters or repeated games");
  run->add_option("--mode", mode, "encounter | repeated_game | batch")
      ->check(CLI::IsMember({"encounter", "repeated_game", "batch"}));
  run->add_option("--config", config, "JSON configuration file")->required();
  run->add_option("--seeds", seeds, "a..b, a,b,c or a single seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format, "jsonl | csv")->check(CLI::IsMember({"jsonl", "csv"}));
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string trace;
  std::string plot_out;
  auto* plot = app.add_subcommand("plotdata", "Convert a trace to plot CSV");
  plot->add_option("--trace", trace, "Trace file (JSONL)")->required();
  plot->add_option("--out", plot_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fpcoord::cli::kExitConfig;
  }

  if (*run) {
    fpcoord::cli::RunSpec spec;
    try {
      spec.mode = fpcoord::cli::ParseRunMode(mode);
      spec.output_format = fpcoord::cli::ParseOutputFormat(format);
      if (!seeds.empty()) spec.seeds = fpcoord::cli::ParseSeeds(seeds);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return fpcoord::cli::kExitConfig;
    }
    spec.config_path = config;
    spec.output_dir = out_dir;
    spec.jobs = jobs;
    return fpcoord::cli::CmdRun(spec, std::cerr);
  }

  if (plot_out.empty()) return fpcoord::cli::CmdPlotdata(trace, std::cout, std::cerr);
  std::ofstream out(plot_out);
  if (!out) {
    std::cerr << "error: cannot create '" << plot_out << "'\n";
    return fpcoord::cli::kExitIo;
  }
  return fpcoord::cli::CmdPlotdata(trace, out, std::cerr);
}
