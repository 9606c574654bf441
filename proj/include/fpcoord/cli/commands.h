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

#ifndef FPCOORD_CLI_COMMANDS_H_
#define FPCOORD_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace fpcoord::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

enum class RunMode { kEncounter, kRepeatedGame, kBatch };
enum class OutputFormat { kJsonl, kCsv };

struct RunSpec {
  RunMode mode = RunMode::kEncounter;
  std::filesystem::path config_path;
  // Empty means "use the seed in the config" outside batch mode.
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir = ".";
  OutputFormat output_format = OutputFormat::kJsonl;
  int jobs = 1;
};

RunMode ParseRunMode(std::string_view text);
std::string_view RunModeName(RunMode mode);
OutputFormat ParseOutputFormat(std::string_view text);

// "a..b" (inclusive), "a,b,c" or a single integer.
std::vector<std::uint64_t> ParseSeeds(std::string_view text);

// Runs every seed, writes <mode>_<seed>.<jsonl|csv> per seed and one
// summary.csv (seed,coordinated,epochs_to_coordination,passed,collision).
// Returns kExitConfig on validation failures and kExitIo on I/O failures,
// with a diagnostic on `err`.
int CmdRun(const RunSpec& spec, std::ostream& err);

struct PlotRow {
  int iteration = 0;
  std::size_t uav1_action = 0;
  std::size_t uav2_action = 0;
  double reward = 0.0;
};

// Projects a trace (encounter or repeated-game JSONL) onto one row per
// decision epoch. Throws TraceFormatError on malformed input.
std::vector<PlotRow> PlotRowsFromTrace(std::istream& in);
void WritePlotCsv(const std::vector<PlotRow>& rows, std::ostream& out);

// Writes the projection CSV to `out`; kExitConfig on a malformed trace,
// kExitIo when the trace cannot be opened.
int CmdPlotdata(const std::filesystem::path& trace_path, std::ostream& out, std::ostream& err);

}  // namespace fpcoord::cli

#endif  // FPCOORD_CLI_COMMANDS_H_
