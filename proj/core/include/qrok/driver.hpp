#pragma once

#include <qrok/report.hpp>

#include <optional>

namespace qrok {

struct DriverOptions {
  std::optional<long long> horizon;
  std::optional<Rational> epsilon;
  std::optional<long long> stage_cap;
  std::optional<long long> word_len;
  bool timing = false;
};

// Runs `command` over the document's matching task entries; "report" runs
// every entry in declaration order. A command with no matching entry gets a
// default-parameter task synthesized from the flags. Throws SchemaError for
// usage problems; InvalidInput and friends for inputs the mathematics
// rejects. Certified mathematical failures never throw out of here, they
// come back as task verdicts with evidence.
ReportDocument run_driver(const std::string& command, const SpecDocument& spec,
                          const DriverOptions& opts);

}  // namespace qrok
