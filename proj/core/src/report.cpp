// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pfclab::report {

namespace {

constexpr const char* kSchema = "pfclab-report v1";

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ExperimentReport::param(const std::string& key, long long v) {
  params.emplace_back(key, std::to_string(v));
}

void ExperimentReport::param(const std::string& key, const std::string& v) {
  params.emplace_back(key, v);
}

void ExperimentReport::value(const std::string& key, double v) {
  values.emplace_back(key, format_g17(v));
}

void ExperimentReport::value(const std::string& key, const std::string& v) {
  values.emplace_back(key, v);
}

void ExperimentReport::note(const std::string& text) { notes.push_back(text); }

std::string ExperimentReport::body() const {
  std::ostringstream ss;
  ss << kSchema << '\n';
  ss << "experiment = " << experiment << '\n';
  ss << "seed = " << seed << '\n';
  for (const auto& [k, v] : params) ss << "param " << k << " = " << v << '\n';
  for (const auto& [k, v] : values) ss << "value " << k << " = " << v << '\n';
  for (const auto& n : notes) ss << "note " << n << '\n';
  ss << "result = " << (pass ? "PASS" : "FAIL") << '\n';
  return ss.str();
}

std::string ExperimentReport::full_text() const {
  std::ostringstream ss;
  ss << body();
  ss << "wall_seconds = " << format_g17(wall_seconds) << '\n';
  return ss.str();
}

ExperimentReport ExperimentReport::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kSchema)
    throw std::runtime_error("report parse: bad schema line");
  ExperimentReport r;
  bool have_result = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("wall_seconds = ", 0) == 0) {
      r.wall_seconds = std::stod(line.substr(15));
      continue;
    }
    if (line.rfind("experiment = ", 0) == 0) {
      r.experiment = line.substr(13);
      continue;
    }
    if (line.rfind("seed = ", 0) == 0) {
      r.seed = std::stoull(line.substr(7));
      continue;
    }
    if (line.rfind("result = ", 0) == 0) {
      r.pass = line.substr(9) == "PASS";
      have_result = true;
      continue;
    }
    if (line.rfind("note ", 0) == 0) {
      r.notes.push_back(line.substr(5));
      continue;
    }
    bool is_param = line.rfind("param ", 0) == 0;
    bool is_value = line.rfind("value ", 0) == 0;
    if (!is_param && !is_value)
      throw std::runtime_error("report parse: unrecognized line: " + line);
    std::string rest = line.substr(6);
    size_t eq = rest.find(" = ");
    if (eq == std::string::npos)
      throw std::runtime_error("report parse: missing ' = ' in: " + line);
    std::string k = trim(rest.substr(0, eq));
    std::string v = rest.substr(eq + 3);
    if (is_param)
      r.params.emplace_back(k, v);
    else
      r.values.emplace_back(k, v);
  }
  if (!have_result) throw std::runtime_error("report parse: missing result line");
  return r;
}

}  // namespace pfclab::report
