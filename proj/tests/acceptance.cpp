// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

// End-to-end acceptance run: twelve checks covering the exact identities and
// measured bounds this laboratory is built around. Prints one line per
// criterion and exits nonzero when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "pfclab/moments.hpp"
#include "pfclab/symgroup.hpp"
#include "pfclab/verify.hpp"

using namespace pfclab;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, double budget_seconds,
               const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& ex) {
    error = ex.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_seconds) {
    ok = false;
    error = "over time budget";
  }
  if (!ok) failures++;
  std::printf("criterion %2d: %s  %-55s (%.2f s)%s%s\n", number, ok ? "PASS" : "FAIL",
              what.c_str(), secs, error.empty() ? "" : "  error: ", error.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  using symgroup::Partition;

  criterion(1, "pf twirl closed form vs exhaustive enumeration, d=4 t=2", 60.0, [] {
    return verify::run_pf_closed_form(4, 2).pass;
  });

  criterion(2, "degree-3 polynomial phase substitution, d=8 t=2", 300.0, [] {
    return verify::run_kwise_substitution(8, 2, 20, 20260826).pass;
  });

  criterion(3, "Schur-Weyl projector traces and character orthogonality", 120.0, [] {
    for (int t : {2, 3}) {
      auto tab = symgroup::character_table(t);
      auto sizes = symgroup::conjugacy_class_sizes(t);
      long long order = symgroup::factorial(t);
      const size_t nc = tab.parts.size();
      for (size_t a = 0; a < nc; ++a)
        for (size_t b = 0; b < nc; ++b) {
          long long dot = 0;
          for (size_t c = 0; c < nc; ++c)
            dot += sizes[c] * tab.values[a][c] * tab.values[b][c];
          if (dot != (a == b ? order : 0)) return false;
        }
      for (int d : {4, 8}) {
        Matrix sum;
        bool first = true;
        for (const auto& lambda : symgroup::partitions(t)) {
          auto blk = symgroup::isotypic_projector(lambda, d);
          double tr = blk.projector.mat().real().trace();
          double expect = static_cast<double>(blk.weyl_dim) *
                          static_cast<double>(blk.specht_dim);
          if (std::abs(tr - expect) > 1e-6 * std::max(1.0, expect)) return false;
          if (first) {
            sum = blk.projector.mat();
            first = false;
          } else {
            sum += blk.projector.mat();
          }
        }
        Matrix id = Matrix::Identity(sum.rows(), sum.cols());
        if ((sum - id).cwiseAbs().maxCoeff() > 1e-10) return false;
      }
    }
    return true;
  });

  criterion(4, "distinct-block traces and deficiencies, incl. d=16 t=2", 120.0, [] {
    // distinct_data already cross-checks Tr[Lambda 1_lambda]*t! =
    // dim(V_lambda)^2 * Tr[Lambda] internally and throws on violation
    for (auto [d, t] : {std::pair{4, 2}, {8, 2}, {8, 3}, {16, 2}}) moments::distinct_data(d, t);
    auto dd = moments::distinct_data(16, 2);
    bool sym_ok = false, anti_ok = false;
    for (size_t i = 0; i < dd.parts.size(); ++i) {
      if (dd.parts[i] == Partition{2})
        sym_ok = std::abs(dd.deficiency[i] - 2.0 / 17.0) <= 1e-12;
      if (dd.parts[i] == Partition{1, 1}) anti_ok = std::abs(dd.deficiency[i]) <= 1e-12;
    }
    return sym_ok && anti_ok;
  });

  criterion(5, "trace-norm distance bound on distinct states, d=8 and d=16", 600.0, [] {
    return verify::run_distinct_data(8, 2, 50, 5).pass &&
           verify::run_distinct_data(16, 2, 50, 5).pass;
  });

  criterion(6, "Clifford distinct-block overlap, n=2 t=2, 10^4 samples", 300.0, [] {
    return verify::run_clifford_overlap(2, 2, 10000, 6).pass;
  });

  criterion(7, "relative-error certificate with eps* = 2/15, d=16 t=2", 300.0, [] {
    auto rep = verify::run_relative_error(16, 2, 50, 7);
    if (!rep.pass) return false;
    for (const auto& [k, v] : rep.values)
      if (k == "relative_error") return std::abs(std::stod(v) - 2.0 / 15.0) <= 1e-12;
    return false;
  });

  criterion(8, "moment-difference amplification identity, d=2 t=2", 60.0, [] {
    return verify::run_amplification(2, 2, 2).pass;
  });

  criterion(9, "gate-teleportation identity over 100 random specs", 120.0, [] {
    return verify::run_teleport(100, 9).pass;
  });

  criterion(10, "adaptive isometry harness bound, n=3 s=1 t=2", 600.0, [] {
    return verify::run_pri_adaptive(3, 1, 2, 1500, 10).pass;
  });

  criterion(11, "exhaustive 4-wise independence of the phase family, n=3", 120.0, [] {
    return verify::run_kwise_independence(3, 4).pass;
  });

  criterion(12, "smoke suite under 2 minutes, byte-identical reruns", 240.0, [] {
    auto t0 = std::chrono::steady_clock::now();
    auto first = verify::run_suite("smoke", 12);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 120.0) return false;
    auto second = verify::run_suite("smoke", 12);
    if (first.size() != second.size()) return false;
    for (size_t i = 0; i < first.size(); ++i) {
      if (!first[i].pass) return false;
      if (first[i].body() != second[i].body()) return false;
    }
    return true;
  });

  std::printf("acceptance: %s (%d of 12 failed)\n", failures == 0 ? "PASS" : "FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
