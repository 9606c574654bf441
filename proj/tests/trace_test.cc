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

#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fpcoord/encounter.h"

namespace fpcoord {
namespace {

TEST(DecisionTrace, RejectsTimeTravel) {
  DecisionTrace trace;
  trace.Append({1.0, 0, EventKind::kDecision, {}});
  trace.Append({1.0, 1, EventKind::kDecision, {}});
  EXPECT_THROW(trace.Append({0.9, 0, EventKind::kObservation, {}}), std::logic_error);
}

TEST(TraceJsonl, RoundTripsGeneratedTrace) {
  EncounterConfig config;
  config.seed = 4;
  const std::vector<LearnerSpec> specs(2);
  const auto trace = RunEncounter(config, specs);
  std::ostringstream first;
  WriteTraceJsonl(trace, first);
  std::istringstream in(first.str());
  const auto back = ReadTraceJsonl(in);
  std::ostringstream second;
  WriteTraceJsonl(back, second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(back.events().size(), trace.events().size());
  EXPECT_EQ(back.summary().passed, trace.summary().passed);
}

TEST(TraceJsonl, ReportsLineOfMalformedInput) {
  std::istringstream in("{\"t\":0.1,\"uav\":0,\"kind\":\"decision\"}\n{oops\n");
  try {
    ReadTraceJsonl(in);
    FAIL();
  } catch (const TraceFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos) << e.what();
  }
  std::istringstream unknown("{\"t\":0.1,\"uav\":0,\"kind\":\"teleport\"}\n");
  EXPECT_THROW(ReadTraceJsonl(unknown), TraceFormatError);
}

TEST(TraceCsv, HeaderAndRows) {
  DecisionTrace trace;
  nlohmann::ordered_json payload;
  payload["epoch"] = 1;
  trace.Append({8.0, 1, EventKind::kDecision, payload});
  std::ostringstream out;
  WriteTraceCsv(trace, out);
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "t,uav,kind,payload");
  EXPECT_EQ(row.rfind("8.0,1,decision,", 0), 0u) << row;
}

}  // namespace
}  // namespace fpcoord
