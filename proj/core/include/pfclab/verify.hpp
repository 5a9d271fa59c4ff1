// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <vector>

#include "pfclab/ensembles.hpp"
#include "pfclab/moments.hpp"
#include "pfclab/report.hpp"
#include "pfclab/tensor.hpp"

namespace pfclab::verify {

using report::ExperimentReport;

// --- adaptive-query harness ---

/// A t-query adaptive circuit against an isometry from n-s to n qubits.
/// Workspace register order (slowest first): A (2^{n-s}), R (dim_r),
/// B_1..B_t (2^s each). Query i applies the isometry's unitary extension U
/// on (A, B_i); the fixed ancilla input lives in B_i's initial state.
struct AdaptiveCircuit {
  int n = 0, s = 0, t = 0;
  int dim_r = 1;
  std::vector<Matrix> steps;  // A_1..A_t, each unitary on the full workspace
  CVector a0;                 // initial state on A (x) R

  long long workspace_dim() const;
  void check() const;
};

/// Circuit with Haar-random interleaving unitaries and a Haar-random
/// initial state (a fixed member of the probe library).
AdaptiveCircuit random_adaptive_circuit(int n, int s, int t, int dim_r, uint64_t seed);

/// The final pure state A_t (U on A,B_t) ... A_1 (U on A,B_1) |A_0>|+...+>.
/// With project_distinct, the initial B_1..B_t factor is first projected
/// onto the distinct-tuple subspace (leaving the state unnormalised).
CVector adaptive_state(const AdaptiveCircuit& c, const Matrix& u, bool project_distinct);

/// ||Lambda |+>^{(x) s t}||^2 = prod_{i<t} (1 - i/2^s). Sets *degenerate
/// when t > 2^s (weight 0).
double distinct_plus_weight(int s, int t, bool* degenerate = nullptr);

// --- gate teleportation ---

struct TeleportSpec {
  int t = 0, D = 0;
  std::vector<Matrix> interleave;      // A_1..A_t, D x D unitaries
  std::vector<Matrix> queries;         // U_1..U_t, D x D unitaries
  CVector psi;                         // D-dim input state
  std::vector<std::vector<int>> S;     // nonempty subset of [D]^t
};

TeleportSpec random_teleport_spec(int t, int D, int set_size, uint64_t seed);

/// Output of the post-selected teleportation sandwich applied to the
/// entangled resource prepared from S and the queries.
Matrix gate_teleport(const TeleportSpec& spec);
/// Independently computed reference: proj(sum_{x in S} A_t U_t |x_t><x_t| ...
/// A_1 U_1 |x_1><x_1| |psi>).
Matrix teleport_reference(const TeleportSpec& spec);
/// Max entrywise difference of the two sides.
double verify_teleport_identity(const TeleportSpec& spec);

// --- named experiments ---

ExperimentReport run_pf_closed_form(int d, int t);
ExperimentReport run_kwise_substitution(int d, int t, int trials, uint64_t seed);
ExperimentReport run_distinct_data(int d, int t, int trials, uint64_t seed);
ExperimentReport run_design_error(int n, int t, uint64_t samples, uint64_t seed);
ExperimentReport run_clifford_overlap(int n, int t, uint64_t samples, uint64_t seed);
ExperimentReport run_relative_error(int d, int t, int trials, uint64_t seed);
ExperimentReport run_amplification(int d, int t, int m);
ExperimentReport run_teleport(int trials, uint64_t seed);
ExperimentReport run_pri_adaptive(int n, int s, int t, uint64_t samples, uint64_t seed);
ExperimentReport run_nonadaptive_pru(int n, int t, uint64_t samples, uint64_t seed);
ExperimentReport run_kwise_independence(int n, int k);

/// Run the named experiment with its default parameters, overridable by the
/// caller-supplied values (negative/zero means default).
struct ExperimentParams {
  int n = -1, d = -1, t = -1, s = -1, m = -1, k = -1, trials = -1;
  long long samples = -1;
  uint64_t seed = 1;
};
ExperimentReport run_experiment(const std::string& name, const ExperimentParams& p);
std::vector<std::string> experiment_names();

/// "smoke" runs the exact-identity experiments; "full" adds the Monte-Carlo
/// ones. Deterministic for a fixed seed; `parallel` runs independent
/// experiments concurrently with identical results and report order.
std::vector<ExperimentReport> run_suite(const std::string& level, uint64_t seed,
                                        bool parallel = false);

}  // namespace pfclab::verify
