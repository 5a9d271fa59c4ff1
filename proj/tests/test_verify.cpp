// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include "pfclab/ensembles.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/verify.hpp"

using namespace pfclab;
using namespace pfclab::verify;

TEST_CASE("distinct-tuple weights of the uniform ancilla state") {
  CHECK(distinct_plus_weight(1, 1) == doctest::Approx(1.0));
  CHECK(distinct_plus_weight(1, 2) == doctest::Approx(0.5));
  CHECK(distinct_plus_weight(2, 2) == doctest::Approx(0.75));
  CHECK(distinct_plus_weight(2, 3) == doctest::Approx(0.75 * 0.5));
  bool degenerate = false;
  CHECK(distinct_plus_weight(1, 3, &degenerate) == doctest::Approx(0.0));
  CHECK(degenerate);
}

TEST_CASE("adaptive states are normalised and respond to the query unitary") {
  auto c = random_adaptive_circuit(3, 1, 2, 2, 51);
  c.check();
  Matrix u = ensembles::pf_sample(8, 3);
  CVector full = adaptive_state(c, u, false);
  CHECK(std::abs(full.squaredNorm() - 1.0) < 1e-10);
  CVector other = adaptive_state(c, ensembles::pf_sample(8, 4), false);
  CHECK((full - other).cwiseAbs().maxCoeff() > 1e-6);
  // the projected branch carries exactly the distinct-tuple weight when the
  // queries are trivial
  AdaptiveCircuit trivial = c;
  for (auto& step : trivial.steps)
    step = Matrix::Identity(step.rows(), step.cols());
  Matrix id = Matrix::Identity(8, 8);
  CVector proj = adaptive_state(trivial, id, true);
  CHECK(proj.squaredNorm() == doctest::Approx(distinct_plus_weight(1, 2)).epsilon(1e-12));
}

TEST_CASE("projected and unprojected branches differ by the collision weight") {
  // with a unitary query the harness is linear in the initial ancilla state,
  // so the branch difference norm is exactly sqrt(1 - w) for any circuit
  auto c = random_adaptive_circuit(3, 1, 2, 2, 77);
  Matrix u = ensembles::pf_sample(8, 9);
  CVector full = adaptive_state(c, u, false);
  CVector proj = adaptive_state(c, u, true);
  double w = distinct_plus_weight(1, 2);
  CHECK((full - proj).norm() == doctest::Approx(std::sqrt(1.0 - w)).epsilon(1e-10));
}

TEST_CASE("gate teleportation with t=1 and the full basis set is a plain product") {
  // with S = [D] the post-selected state reduces to A_1 U_1 |psi>
  TeleportSpec spec = random_teleport_spec(1, 3, 1, 5);
  spec.S.clear();
  for (int x = 0; x < 3; ++x) spec.S.push_back({x});
  Matrix lhs = gate_teleport(spec);
  CVector expect = spec.interleave[0] * spec.queries[0] * spec.psi;
  Matrix rhs = expect * expect.adjoint();
  rhs /= rhs.trace();
  lhs /= lhs.trace();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("gate teleportation matches the direct reference on random specs") {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    int t = 1 + static_cast<int>(rng.next_below(2));
    int dim = 2 + static_cast<int>(rng.next_below(2));
    int set_size = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(dim)));
    auto spec = random_teleport_spec(t, dim, set_size, rng.next_u64());
    CHECK(verify_teleport_identity(spec) < 1e-10);
  }
}

TEST_CASE("every named experiment is reachable through the dispatcher") {
  auto names = experiment_names();
  CHECK(names.size() == 11);
  ExperimentParams p;
  p.d = 4;
  p.t = 2;
  p.n = 2;
  p.s = 1;
  p.trials = 3;
  p.samples = 50;
  p.seed = 5;
  for (const auto& name : names) {
    ExperimentReport rep = run_experiment(name, p);
    CHECK(rep.experiment == name);
    CHECK(!rep.body().empty());
  }
  CHECK_THROWS(run_experiment("no-such-experiment", p));
}

TEST_CASE("exact experiments pass at small sizes") {
  CHECK(run_pf_closed_form(3, 2).pass);
  CHECK(run_kwise_substitution(4, 2, 3, 7).pass);
  CHECK(run_distinct_data(4, 2, 5, 7).pass);
  CHECK(run_relative_error(4, 2, 5, 7).pass);
  CHECK(run_amplification(2, 2, 2).pass);
  CHECK(run_teleport(5, 7).pass);
  CHECK(run_kwise_independence(2, 2).pass);
}

TEST_CASE("report bodies are byte-identical across reruns") {
  auto a = run_distinct_data(4, 2, 4, 99);
  auto b = run_distinct_data(4, 2, 4, 99);
  a.wall_seconds = 1.0;
  b.wall_seconds = 2.0;  // wall time must not leak into the body
  CHECK(a.body() == b.body());
  auto c = run_teleport(4, 123);
  auto d = run_teleport(4, 123);
  CHECK(c.body() == d.body());
}

TEST_CASE("the smoke suite passes and is deterministic") {
  auto first = run_suite("smoke", 42);
  auto second = run_suite("smoke", 42);
  REQUIRE(first.size() == second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].pass);
    CHECK(first[i].body() == second[i].body());
  }
  CHECK_THROWS(run_suite("bogus", 1));
}
