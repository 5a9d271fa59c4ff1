// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include "pfclab/ensembles.hpp"
#include "pfclab/moments.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/symgroup.hpp"

using namespace pfclab;
using namespace pfclab::symgroup;

TEST_CASE("partitions are enumerated in reverse-lexicographic order") {
  auto p4 = partitions(4);
  REQUIRE(p4.size() == 5);
  CHECK(p4[0] == Partition{4});
  CHECK(p4[1] == Partition{3, 1});
  CHECK(p4[2] == Partition{2, 2});
  CHECK(p4[3] == Partition{2, 1, 1});
  CHECK(p4[4] == Partition{1, 1, 1, 1});
}

TEST_CASE("irrep dimensions square-sum to the group order") {
  for (int t = 1; t <= 6; ++t) {
    long long sum = 0;
    for (const auto& lambda : partitions(t)) {
      long long d = specht_dim(lambda);
      sum += d * d;
    }
    CHECK(sum == factorial(t));
  }
}

TEST_CASE("Weyl dimensions at t=2 are the symmetric/antisymmetric counts") {
  for (int d : {2, 4, 8, 16}) {
    CHECK(weyl_dim(Partition{2}, d) == static_cast<long long>(d) * (d + 1) / 2);
    CHECK(weyl_dim(Partition{1, 1}, d) == static_cast<long long>(d) * (d - 1) / 2);
  }
  CHECK_THROWS(weyl_dim(Partition{1, 1, 1}, 2));  // too few rows fit
}

TEST_CASE("characters match the S_3 table") {
  CHECK(character(Partition{3}, Partition{2, 1}) == 1);
  CHECK(character(Partition{2, 1}, Partition{2, 1}) == 0);
  CHECK(character(Partition{1, 1, 1}, Partition{2, 1}) == -1);
  CHECK(character(Partition{2, 1}, Partition{1, 1, 1}) == 2);
  CHECK(character(Partition{2, 1}, Partition{3}) == -1);
}

TEST_CASE("character table rows are orthogonal with class-size weights") {
  for (int t : {3, 4, 5}) {
    auto tab = character_table(t);
    auto sizes = conjugacy_class_sizes(t);
    long long order = factorial(t);
    long long total = 0;
    for (long long s : sizes) total += s;
    CHECK(total == order);
    const size_t n = tab.parts.size();
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        long long dot = 0;
        for (size_t c = 0; c < n; ++c) dot += sizes[c] * tab.values[a][c] * tab.values[b][c];
        CHECK(dot == (a == b ? order : 0));
      }
  }
}

TEST_CASE("permutation helpers satisfy group axioms") {
  auto s3 = all_permutations(3);
  REQUIRE(s3.size() == 6);
  for (const auto& pi : s3) {
    CHECK(compose(pi, inverse(pi)) == std::vector<int>{0, 1, 2});
    CHECK(compose(inverse(pi), pi) == std::vector<int>{0, 1, 2});
  }
  CHECK(cycle_type({1, 2, 0, 3}) == Partition{3, 1});
  CHECK(num_cycles({1, 0, 3, 2}) == 2);
}

TEST_CASE("perm_rep is a homomorphism pi -> R_pi") {
  const int d = 2;
  auto s3 = all_permutations(3);
  for (const auto& pi : s3)
    for (const auto& sigma : s3) {
      Matrix lhs = perm_rep(pi, d) * perm_rep(sigma, d);
      Matrix rhs = perm_rep(compose(pi, sigma), d);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("t=2 isotypic projectors are (I +- SWAP)/2") {
  const int d = 3;
  Matrix swap = perm_rep({1, 0}, d);
  Matrix id = Matrix::Identity(d * d, d * d);
  auto sym = isotypic_projector(Partition{2}, d);
  auto anti = isotypic_projector(Partition{1, 1}, d);
  CHECK((sym.projector.mat() - 0.5 * (id + swap)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((anti.projector.mat() - 0.5 * (id - swap)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(sym.weyl_dim == 6);
  CHECK(anti.weyl_dim == 3);
}

TEST_CASE("isotypic projectors are orthogonal idempotents summing to I") {
  const int d = 3, t = 3;
  std::vector<Matrix> ps;
  for (const auto& lambda : partitions(t))
    ps.push_back(isotypic_projector(lambda, d).projector.mat());
  Matrix sum = Matrix::Zero(ps[0].rows(), ps[0].cols());
  for (size_t a = 0; a < ps.size(); ++a) {
    sum += ps[a];
    for (size_t b = 0; b < ps.size(); ++b) {
      Matrix prod = ps[a] * ps[b];
      Matrix expect = (a == b) ? ps[a] : Matrix::Zero(ps[a].rows(), ps[a].cols());
      CHECK((prod - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  CHECK((sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Haar twirl at t=1 is the depolarizing map") {
  Matrix x(3, 3);
  x.setZero();
  x(0, 2) = 2.0;
  x(1, 1) = 1.0;
  Matrix y = haar_twirl_exact(x, 3, 1);
  CHECK((y - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Haar twirl fixes the commutant and is idempotent and covariant") {
  const int d = 3, t = 2;
  Matrix r = perm_rep({1, 0}, d);
  CHECK((haar_twirl_exact(r, d, t) - r).cwiseAbs().maxCoeff() < 1e-10);

  Matrix x(d * d, d * d);
  Rng rng(404);
  for (int i = 0; i < d * d; ++i)
    for (int j = 0; j < d * d; ++j) x(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Matrix once = haar_twirl_exact(x, d, t);
  CHECK((haar_twirl_exact(once, d, t) - once).cwiseAbs().maxCoeff() < 1e-9);

  // covariance: twirl(U^t x U^t,dag) = U^t twirl(x) U^t,dag
  Matrix u = ensembles::haar_unitary(d, 17);
  Matrix ut = moments::kron_power(u, t);
  Matrix lhs = haar_twirl_exact(ut * x * ut.adjoint(), d, t);
  Matrix rhs = ut * once * ut.adjoint();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("Haar twirl agrees with a Monte-Carlo average") {
  const int d = 2, t = 2;
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;  // |00><00|
  Matrix exact = haar_twirl_exact(x, d, t);
  auto mc = moments::twirl_mc(ensembles::haar_ensemble(d), t, x, 4000, 99);
  CHECK((mc.mean - exact).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("Haar twirl rejects d < t") {
  Matrix x = Matrix::Identity(8, 8);
  CHECK_THROWS(haar_twirl_exact(x, 2, 3));
}
