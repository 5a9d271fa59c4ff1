// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pfclab::report {

/// 17-significant-digit formatting; round-trips every double exactly.
std::string format_g17(double v);

/// Structured experiment record. The body is deterministic for a fixed
/// configuration and seed; wall time is kept out of the body so reruns are
/// byte-identical.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::string> notes;
  bool pass = false;
  double wall_seconds = 0.0;  // excluded from body()

  void param(const std::string& key, long long v);
  void param(const std::string& key, const std::string& v);
  void value(const std::string& key, double v);  // formatted with format_g17
  void value(const std::string& key, const std::string& v);
  void note(const std::string& text);

  /// Deterministic text body (versioned schema, no wall time).
  std::string body() const;
  /// body() plus a trailing wall-time line.
  std::string full_text() const;

  /// Lossless parse of body(); throws on malformed input.
  static ExperimentReport parse(const std::string& body);
};

}  // namespace pfclab::report
