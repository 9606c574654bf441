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

#ifndef FPCOORD_TRACE_H_
#define FPCOORD_TRACE_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fpcoord {

enum class EventKind { kObservation, kDecision, kPhaseChange, kCollision };

std::string_view EventKindName(EventKind kind);
EventKind ParseEventKind(std::string_view name);

struct TraceEvent {
  double time = 0.0;
  int uav = 0;
  EventKind kind = EventKind::kObservation;
  // Kind-specific fields, written inline next to t/uav/kind.
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
};

struct TraceSummary {
  std::uint64_t seed = 0;
  bool coordinated = false;
  int epochs_to_coordination = -1;
  bool passed = false;
  bool collision = false;
  int epochs = 0;
  double end_time = 0.0;
  int inference_violations = 0;
};

class DecisionTrace {
 public:
  // Events must arrive in non-decreasing time; throws std::logic_error.
  void Append(TraceEvent event);

  const std::vector<TraceEvent>& events() const { return events_; }
  TraceSummary& summary() { return summary_; }
  const TraceSummary& summary() const { return summary_; }

 private:
  std::vector<TraceEvent> events_;
  TraceSummary summary_;
};

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// One {"t", "uav", "kind", ...payload} object per line, then one
// {"kind": "summary", ...} line.
void WriteTraceJsonl(const DecisionTrace& trace, std::ostream& out);

// CSV variant: t,uav,kind,payload with the payload as quoted compact JSON.
void WriteTraceCsv(const DecisionTrace& trace, std::ostream& out);

nlohmann::ordered_json SummaryToJson(const TraceSummary& summary);

// Parses the JSONL format back; the summary line is optional.
DecisionTrace ReadTraceJsonl(std::istream& in);

}  // namespace fpcoord

#endif  // FPCOORD_TRACE_H_
