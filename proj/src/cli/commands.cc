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

#include "fpcoord/cli/commands.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <spdlog/spdlog.h>

#include "fpcoord/encounter.h"
#include "fpcoord/game.h"
#include "fpcoord/game_json.h"
#include "fpcoord/learner.h"
#include "fpcoord/repeated_game.h"
#include "fpcoord/trace.h"
#include "json.hpp"

namespace fpcoord::cli {

namespace {

// Validation failure with a file/line/field diagnostic.
class ConfigDiagnostic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  EncounterConfig encounter;
  std::optional<NormalFormGame> game;
  int iterations = 100;
  std::vector<LearnerSpec> learners;
  std::uint64_t seed = 0;
};

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoFailure("cannot read '" + path.string() + "'");
  return text.str();
}

std::string LineColumn(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  const std::string where = path.string();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigDiagnostic(where + ":" + LineColumn(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigDiagnostic(where + ": expected a JSON object");

  static const std::vector<std::string> kKeys = {"encounter", "game", "iterations", "learners",
                                                 "seed"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigDiagnostic(where + ": field '" + key + "': unknown field");
    }
  }

  RunConfig config;
  try {
    if (doc.contains("encounter")) config.encounter = EncounterConfigFromJson(doc["encounter"]);
  } catch (const ConfigError& e) {
    throw ConfigDiagnostic(where + ": field 'encounter." + e.field() + "': " +
                           std::string(e.what()).substr(e.field().size() + 10));
  } catch (const std::exception& e) {
    throw ConfigDiagnostic(where + ": field 'encounter': " + e.what());
  }

  try {
    config.game = GameFromJson(doc.value("game", nlohmann::json("tcas2")));
  } catch (const std::exception& e) {
    throw ConfigDiagnostic(where + ": field 'game': " + e.what());
  }

  if (doc.contains("iterations")) {
    if (!doc["iterations"].is_number_integer() || doc["iterations"].get<int>() < 0) {
      throw ConfigDiagnostic(where + ": field 'iterations': must be a non-negative integer");
    }
    config.iterations = doc["iterations"].get<int>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      throw ConfigDiagnostic(where + ": field 'seed': must be a non-negative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  } else {
    config.seed = config.encounter.seed;
  }

  const nlohmann::json learners =
      doc.value("learners", nlohmann::json::array({nlohmann::json::object(), nlohmann::json::object()}));
  if (!learners.is_array() || learners.size() != 2) {
    throw ConfigDiagnostic(where + ": field 'learners': expected an array of two learners");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    try {
      config.learners.push_back(LearnerSpecFromJson(learners[i]));
    } catch (const std::exception& e) {
      throw ConfigDiagnostic(where + ": learners[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return config;
}

struct SeedResult {
  std::uint64_t seed = 0;
  bool coordinated = false;
  int epochs_to_coordination = -1;
  bool passed = false;
  bool collision = false;
};

void WriteFile(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot create '" + path.string() + "'");
  out << contents;
  out.flush();
  if (!out) throw IoFailure("cannot write '" + path.string() + "'");
}

void WriteRepeatedGameCsv(const RepeatedGameTrace& trace, std::ostream& out) {
  out << "t,action0,action1,reward0,reward1\n";
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << r.actions[0].index << ',' << r.actions[1].index << ','
        << nlohmann::json(r.rewards[0]).dump() << ',' << nlohmann::json(r.rewards[1]).dump()
        << '\n';
  }
}

SeedResult RunOneSeed(const RunSpec& spec, const RunConfig& config, std::uint64_t seed) {
  std::ostringstream body;
  SeedResult result;
  result.seed = seed;
  if (spec.mode == RunMode::kRepeatedGame) {
    const RepeatedGameTrace trace =
        RunRepeatedGame(*config.game, config.learners, config.iterations, seed);
    if (spec.output_format == OutputFormat::kJsonl) {
      WriteRepeatedGameJsonl(trace, body);
    } else {
      WriteRepeatedGameCsv(trace, body);
    }
    result.epochs_to_coordination = FirstCoordinatedIteration(trace);
    result.coordinated = result.epochs_to_coordination >= 0;
  } else {
    EncounterConfig encounter = config.encounter;
    encounter.seed = seed;
    const DecisionTrace trace = RunEncounter(encounter, config.learners);
    if (spec.output_format == OutputFormat::kJsonl) {
      WriteTraceJsonl(trace, body);
    } else {
      WriteTraceCsv(trace, body);
    }
    const TraceSummary& s = trace.summary();
    result.coordinated = s.coordinated;
    result.epochs_to_coordination = s.epochs_to_coordination;
    result.passed = s.passed;
    result.collision = s.collision;
  }
  const std::string extension = spec.output_format == OutputFormat::kJsonl ? ".jsonl" : ".csv";
  WriteFile(spec.output_dir / (std::string(RunModeName(spec.mode)) + "_" +
                               std::to_string(seed) + extension),
            body.str());
  spdlog::debug("seed {} done: coordinated={} passed={}", seed, result.coordinated, result.passed);
  return result;
}

std::optional<std::uint64_t> ParseUnsigned(std::string_view text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

RunMode ParseRunMode(std::string_view text) {
  if (text == "encounter") return RunMode::kEncounter;
  if (text == "repeated_game") return RunMode::kRepeatedGame;
  if (text == "batch") return RunMode::kBatch;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

std::string_view RunModeName(RunMode mode) {
  switch (mode) {
    case RunMode::kEncounter:
      return "encounter";
    case RunMode::kRepeatedGame:
      return "repeated_game";
    case RunMode::kBatch:
      return "batch";
  }
  return "encounter";
}

OutputFormat ParseOutputFormat(std::string_view text) {
  if (text == "jsonl") return OutputFormat::kJsonl;
  if (text == "csv") return OutputFormat::kCsv;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::vector<std::uint64_t> ParseSeeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = ParseUnsigned(text.substr(0, dots));
    const auto hi = ParseUnsigned(text.substr(dots + 2));
    if (!lo || !hi || *lo > *hi) {
      throw std::invalid_argument("seeds: expected a..b with a <= b, got '" + std::string(text) + "'");
    }
    for (std::uint64_t s = *lo; s <= *hi; ++s) {
      seeds.push_back(s);
      if (s == *hi) break;
    }
    return seeds;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const auto value = ParseUnsigned(text.substr(start, comma - start));
    if (!value) throw std::invalid_argument("seeds: bad entry in '" + std::string(text) + "'");
    seeds.push_back(*value);
    start = comma + 1;
  }
  return seeds;
}

int CmdRun(const RunSpec& spec, std::ostream& err) {
  RunConfig config;
  try {
    config = LoadConfig(spec.config_path);
    if (spec.mode == RunMode::kBatch && spec.seeds.empty()) {
      throw ConfigDiagnostic("--seeds: batch mode needs at least one seed");
    }
    if (spec.jobs < 1) throw ConfigDiagnostic("--jobs: must be at least 1");
    // Surface dimension errors (e.g. kappa0 length) before any output.
    for (int p = 0; p < 2; ++p) {
      try {
        const std::size_t opponent_actions = spec.mode == RunMode::kRepeatedGame
                                                  ? config.game->num_actions(1 - p)
                                                  : static_cast<std::size_t>(config.encounter.num_bands);
        if (config.game->num_players() != 2) throw std::invalid_argument("game must have two players");
        MakeLearner(config.learners[p], opponent_actions, 0, p);
      } catch (const std::exception& e) {
        throw ConfigDiagnostic(spec.config_path.string() + ": learners[" + std::to_string(p) +
                               "]: " + e.what());
      }
    }
  } catch (const ConfigDiagnostic& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec || !std::filesystem::is_directory(spec.output_dir)) {
    err << "error: cannot create output directory '" << spec.output_dir.string() << "'\n";
    return kExitIo;
  }

  const std::vector<std::uint64_t> seeds =
      spec.seeds.empty() ? std::vector<std::uint64_t>{config.seed} : spec.seeds;
  std::vector<SeedResult> results(seeds.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::optional<std::string> io_failure;
  std::optional<std::string> run_failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        results[i] = RunOneSeed(spec, config, seeds[i]);
      } catch (const IoFailure& e) {
        std::lock_guard lock(failure_mutex);
        if (!io_failure) io_failure = e.what();
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!run_failure) run_failure = "seed " + std::to_string(seeds[i]) + ": " + e.what();
      }
    }
  };
  const int workers = std::min<int>(spec.jobs, static_cast<int>(seeds.size()));
  spdlog::info("running {} seed(s) in {} mode on {} worker(s)", seeds.size(),
               RunModeName(spec.mode), workers);
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (io_failure) {
    err << "error: " << *io_failure << '\n';
    return kExitIo;
  }
  if (run_failure) {
    err << "error: " << *run_failure << '\n';
    return kExitConfig;
  }

  std::ostringstream summary;
  summary << "seed,coordinated,epochs_to_coordination,passed,collision\n";
  for (const auto& r : results) {
    summary << r.seed << ',' << (r.coordinated ? "true" : "false") << ','
            << r.epochs_to_coordination << ',' << (r.passed ? "true" : "false") << ','
            << (r.collision ? "true" : "false") << '\n';
  }
  try {
    WriteFile(spec.output_dir / "summary.csv", summary.str());
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

std::vector<PlotRow> PlotRowsFromTrace(std::istream& in) {
  std::vector<PlotRow> rows;
  // Encounter traces: epoch -> actions per UAV (-1 when that UAV did not decide).
  std::map<int, std::array<long, 2>> epochs;
  std::array<long, 2> initial{-1, -1};
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json line;
    try {
      line = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw TraceFormatError(line_no, e.what());
    }
    if (!line.is_object() || !line.contains("kind") || !line["kind"].is_string()) {
      throw TraceFormatError(line_no, "expected an object with a string 'kind'");
    }
    const std::string kind = line["kind"].get<std::string>();
    try {
      if (kind == "iteration") {
        const auto actions = line.at("actions").get<std::vector<std::size_t>>();
        const auto rewards = line.at("rewards").get<std::vector<double>>();
        if (actions.size() != 2 || rewards.empty()) {
          throw std::invalid_argument("iteration needs two actions and rewards");
        }
        rows.push_back({line.at("t").get<int>(), actions[0], actions[1], rewards[0]});
      } else if (kind == "decision") {
        const int uav = line.at("uav").get<int>();
        if (uav != 0 && uav != 1) throw std::invalid_argument("uav must be 0 or 1");
        auto [it, inserted] =
            epochs.try_emplace(line.at("epoch").get<int>(), std::array<long, 2>{-1, -1});
        it->second[uav] = line.at("action").get<long>();
        if (initial[uav] < 0) initial[uav] = line.at("previous").get<long>();
      } else if (kind != "summary" && kind != "observation" && kind != "phase_change" &&
                 kind != "collision") {
        throw std::invalid_argument("unknown kind '" + kind + "'");
      }
    } catch (const TraceFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceFormatError(line_no, e.what());
    }
  }
  std::array<long, 2> last = initial;
  for (const auto& [epoch, actions] : epochs) {
    for (int u = 0; u < 2; ++u) {
      if (actions[u] >= 0) last[u] = actions[u];
    }
    // A UAV that has not decided yet keeps its starting band.
    const auto a = static_cast<std::size_t>(std::max(last[0], 0L));
    const auto b = static_cast<std::size_t>(std::max(last[1], 0L));
    rows.push_back({epoch, a, b, a != b ? 1.0 : 0.0});
  }
  return rows;
}

void WritePlotCsv(const std::vector<PlotRow>& rows, std::ostream& out) {
  out << "iteration,uav1_action,uav2_action,reward\n";
  for (const auto& row : rows) {
    out << row.iteration << ',' << row.uav1_action << ',' << row.uav2_action << ','
        << nlohmann::json(row.reward).dump() << '\n';
  }
}

int CmdPlotdata(const std::filesystem::path& trace_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(trace_path);
  if (!in) {
    err << "error: cannot open '" << trace_path.string() << "'\n";
    return kExitIo;
  }
  try {
    WritePlotCsv(PlotRowsFromTrace(in), out);
  } catch (const TraceFormatError& e) {
    err << "error: " << trace_path.string() << ": " << e.what() << '\n';
    return kExitConfig;
  }
  return out ? kExitOk : kExitIo;
}

}  // namespace fpcoord::cli
