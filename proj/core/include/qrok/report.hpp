#pragma once

#include <qrok/specdoc.hpp>

#include <string>
#include <vector>

namespace qrok {

// Verdict polarity shared by tasks and whole runs, numerically equal to the
// exit code it produces: 0 passes, 2 is a certified failure or
// counterexample, 3 means a horizon ran out before any certificate emerged.
enum class TaskVerdict { Pass = 0, CertifiedFailure = 2, Unknown = 3 };

const char* verdict_word(TaskVerdict v);
TaskVerdict worse(TaskVerdict a, TaskVerdict b);

struct TaskOutcome {
  std::string command;
  TaskVerdict verdict = TaskVerdict::Pass;
  std::string detail_json;  // one JSON object, spliced verbatim into the report
  double seconds = 0;       // serialized only when the report has timing on
};

struct ReportDocument {
  std::string command;  // the CLI command that produced this run
  SpecDocument spec;    // echoed in canonical form
  std::vector<TaskOutcome> tasks;
  TaskVerdict verdict = TaskVerdict::Pass;
  bool timing = false;  // timing breaks byte-level determinism; off by default

  int exit_code() const { return static_cast<int>(verdict); }
  std::string to_json() const;
  // Derived from the JSON document, never assembled independently, so the
  // two renderings cannot drift apart.
  std::string to_text() const;
};

}  // namespace qrok
