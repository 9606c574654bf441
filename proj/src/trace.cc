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

#include "fpcoord/trace.h"

#include <utility>

namespace fpcoord {

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kObservation:
      return "observation";
    case EventKind::kDecision:
      return "decision";
    case EventKind::kPhaseChange:
      return "phase_change";
    case EventKind::kCollision:
      return "collision";
  }
  return "observation";
}

EventKind ParseEventKind(std::string_view name) {
  if (name == "observation") return EventKind::kObservation;
  if (name == "decision") return EventKind::kDecision;
  if (name == "phase_change") return EventKind::kPhaseChange;
  if (name == "collision") return EventKind::kCollision;
  throw std::invalid_argument("unknown event kind '" + std::string(name) + "'");
}

void DecisionTrace::Append(TraceEvent event) {
  if (!events_.empty() && event.time < events_.back().time) {
    throw std::logic_error("DecisionTrace: event out of time order");
  }
  events_.push_back(std::move(event));
}

nlohmann::ordered_json SummaryToJson(const TraceSummary& summary) {
  nlohmann::ordered_json line;
  line["kind"] = "summary";
  line["seed"] = summary.seed;
  line["coordinated"] = summary.coordinated;
  line["epochs_to_coordination"] = summary.epochs_to_coordination;
  line["passed"] = summary.passed;
  line["collision"] = summary.collision;
  line["epochs"] = summary.epochs;
  line["end_time"] = summary.end_time;
  line["inference_violations"] = summary.inference_violations;
  return line;
}

void WriteTraceJsonl(const DecisionTrace& trace, std::ostream& out) {
  for (const auto& event : trace.events()) {
    nlohmann::ordered_json line;
    line["t"] = event.time;
    line["uav"] = event.uav;
    line["kind"] = EventKindName(event.kind);
    for (const auto& [key, value] : event.payload.items()) line[key] = value;
    out << line.dump() << '\n';
  }
  out << SummaryToJson(trace.summary()).dump() << '\n';
}

void WriteTraceCsv(const DecisionTrace& trace, std::ostream& out) {
  out << "t,uav,kind,payload\n";
  for (const auto& event : trace.events()) {
    std::string payload = event.payload.dump();
    std::string quoted;
    for (char c : payload) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    out << nlohmann::json(event.time).dump() << ',' << event.uav << ','
        << EventKindName(event.kind) << ",\"" << quoted << "\"\n";
  }
}

DecisionTrace ReadTraceJsonl(std::istream& in) {
  DecisionTrace trace;
  std::string text;
  std::size_t line_no = 0;
  bool saw_summary = false;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (saw_summary) throw TraceFormatError(line_no, "content after the summary line");
    nlohmann::ordered_json line;
    try {
      line = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw TraceFormatError(line_no, e.what());
    }
    if (!line.is_object() || !line.contains("kind") || !line["kind"].is_string()) {
      throw TraceFormatError(line_no, "expected an object with a string 'kind'");
    }
    const std::string kind = line["kind"].get<std::string>();
    try {
      if (kind == "summary") {
        auto& s = trace.summary();
        s.seed = line.value("seed", std::uint64_t{0});
        s.coordinated = line.value("coordinated", false);
        s.epochs_to_coordination = line.value("epochs_to_coordination", -1);
        s.passed = line.value("passed", false);
        s.collision = line.value("collision", false);
        s.epochs = line.value("epochs", 0);
        s.end_time = line.value("end_time", 0.0);
        s.inference_violations = line.value("inference_violations", 0);
        saw_summary = true;
        continue;
      }
      TraceEvent event;
      event.kind = ParseEventKind(kind);
      event.time = line.at("t").get<double>();
      event.uav = line.at("uav").get<int>();
      for (const auto& [key, value] : line.items()) {
        if (key != "t" && key != "uav" && key != "kind") event.payload[key] = value;
      }
      trace.Append(std::move(event));
    } catch (const TraceFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceFormatError(line_no, e.what());
    }
  }
  return trace;
}

}  // namespace fpcoord
