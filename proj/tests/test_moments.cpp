// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include "pfclab/ensembles.hpp"
#include "pfclab/moments.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/symgroup.hpp"

using namespace pfclab;
using namespace pfclab::moments;

namespace {

Matrix random_operator(int dim, uint64_t seed) {
  Rng rng(seed);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

}  // namespace

TEST_CASE("kron_power agrees with repeated kron") {
  Matrix u = ensembles::haar_unitary(2, 3);
  Matrix u2 = kron_power(u, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK((u2.block(2 * a, 2 * b, 2, 2) - u(a, b) * u).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(kron_power(u, 1) == u);
}

TEST_CASE("the identity ensemble leaves operators unchanged") {
  Matrix x = random_operator(9, 5);
  CHECK((twirl_exact_enum(ensembles::identity_ensemble(3), 2, x) - x)
            .cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("the phase ensemble at t=1 kills off-diagonal entries") {
  Matrix x = random_operator(4, 6);
  Matrix y = twirl_exact_enum(ensembles::phase_ensemble(4), 1, x);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j)
        CHECK(std::abs(y(i, j) - x(i, j)) < 1e-12);
      else
        CHECK(std::abs(y(i, j)) < 1e-12);
    }
}

TEST_CASE("the permutation ensemble at t=1 spreads a basis state uniformly") {
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;
  Matrix y = twirl_exact_enum(ensembles::perm_ensemble(4), 1, x);
  CHECK((y - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Monte-Carlo twirls converge with honest error bars") {
  const int d = 2, t = 2;
  Matrix x = Matrix::Zero(4, 4);
  x(0, 3) = 1.0;
  Matrix exact = twirl_exact_enum(ensembles::pf_ensemble(d), t, x);
  auto mc = twirl_mc(ensembles::pf_ensemble(d), t, x, 3000, 12);
  CHECK((mc.mean - exact).cwiseAbs().maxCoeff() < 6.0 * mc.max_stderr + 1e-9);
  CHECK(mc.max_stderr > 0.0);
  CHECK(mc.max_stderr < 0.05);
}

TEST_CASE("distinct-tuple bookkeeping") {
  CHECK(is_distinct_tuple({0, 2, 1}));
  CHECK(!is_distinct_tuple({1, 1}));
  CHECK(distinct_tuples(4, 2).size() == 12);
  CHECK(tuple_to_index(index_to_tuple(7, 3, 2), 3) == 7);
  Matrix lam = distinct_projector(4, 2);
  CHECK(lam.real().trace() == doctest::Approx(12.0));
  // Lambda commutes with every factor permutation
  for (const auto& pi : symgroup::all_permutations(2)) {
    Matrix r = symgroup::perm_rep(pi, 4);
    CHECK((lam * r - r * lam).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("closed-form pf moments on basis states") {
  const int d = 3, t = 2;
  Matrix lam = distinct_projector(d, t);
  const double tr = 6.0;  // 3 * 2
  // diagonal input |01><01| -> Lambda / Tr
  Matrix diag = pf_twirl_closed_form({0, 1}, {0, 1}, d, t);
  CHECK((diag - lam / tr).cwiseAbs().maxCoeff() < 1e-14);
  // swapped input |01><10| -> Lambda R_(01) / Tr
  Matrix swapped = pf_twirl_closed_form({0, 1}, {1, 0}, d, t);
  CHECK((swapped - lam * symgroup::perm_rep({1, 0}, d) / tr).cwiseAbs().maxCoeff() < 1e-14);
  // value sets differ -> zero
  CHECK(pf_twirl_closed_form({0, 1}, {0, 2}, d, t).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS(pf_twirl_closed_form({0, 0}, {0, 1}, d, t));
}

TEST_CASE("mask-based pf twirl matches full enumeration on a general input") {
  const int d = 3, t = 2;
  Matrix x = random_operator(9, 31);  // support everywhere, repeats included
  Matrix by_enum = twirl_exact_enum(ensembles::pf_ensemble(d), t, x, 1e10);
  Matrix by_mask = pf_twirl_mask(x, d, t, uniform_phase_average(),
                                 kwise::exact_twise_perm(d), 1e10);
  CHECK((by_enum - by_mask).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((by_enum - pf_twirl_exact(x, d, t)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("distinct-support closed form matches the exact pf twirl") {
  const int d = 4, t = 2;
  Matrix lam = distinct_projector(d, t);
  Matrix x = lam * random_operator(16, 44) * lam;
  Matrix closed = pf_twirl_distinct(x, d, t);
  Matrix exact = pf_twirl_exact(x, d, t);
  CHECK((closed - exact).cwiseAbs().maxCoeff() < 1e-12);
  // operators leaking outside the distinct block are rejected
  CHECK_THROWS(pf_twirl_distinct(random_operator(16, 45), d, t));
}

TEST_CASE("phase averages over a k-wise family match direct enumeration") {
  const int n = 2, k = 4;
  auto fam = kwise::kwise_poly_family(n, k);
  auto mu = family_phase_average(fam);
  CHECK(mu({}) == 1.0);
  // 4-wise independence with |odd| <= 4 reproduces the uniform answer
  CHECK(mu({0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mu({0, 1, 2}) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("distinct-subspace block data at benchmark sizes") {
  auto dd42 = distinct_data(4, 2);
  CHECK(dd42.trace == doctest::Approx(12.0));
  CHECK(dd42.deficiency[0] == doctest::Approx(0.4).epsilon(1e-12));   // symmetric block
  CHECK(dd42.deficiency[1] == doctest::Approx(0.0).epsilon(1e-12));   // antisymmetric block
  CHECK(dd42.relative_error() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  auto dd162 = distinct_data(16, 2);
  CHECK(dd162.deficiency[0] == doctest::Approx(2.0 / 17.0).epsilon(1e-12));
  CHECK(dd162.deficiency[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dd162.relative_error() == doctest::Approx(2.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("superoperator matrices compose like channels") {
  const int dim = 3;
  Matrix a = random_operator(dim, 7), b = random_operator(dim, 8);
  ChannelFn ca = [&](const Matrix& x) -> Matrix { return a * x * a.adjoint(); };
  ChannelFn cb = [&](const Matrix& x) -> Matrix { return b * x * b.adjoint(); };
  Matrix sa = superoperator_matrix(ca, dim), sb = superoperator_matrix(cb, dim);
  Matrix x = random_operator(dim, 9);
  // apply via the matrix and compare with the direct channel
  Matrix composed_direct = ca(cb(x));
  Matrix sab = sa * sb;
  CVector vx(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) vx(i * dim + j) = x(i, j);
  CVector vy = sab * vx;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      CHECK(std::abs(vy(i * dim + j) - composed_direct(i, j)) < 1e-10);
}

TEST_CASE("extended channels act only on the A factor") {
  const int da = 2, de = 3;
  Matrix a = random_operator(da, 14);
  ChannelFn c = [&](const Matrix& x) -> Matrix { return a * x * a.adjoint(); };
  Matrix rho = random_operator(da * de, 15);
  Matrix ae = Matrix::Zero(da * de, da * de);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      ae.block(i * de, j * de, de, de) = a(i, j) * Matrix::Identity(de, de);
  CHECK((extended_channel(c, rho, da, de) - ae * rho * ae.adjoint())
            .cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("moment-difference amplification holds for the pf ensemble") {
  auto chk = amplification_identity_check(ensembles::pf_ensemble(2), 2, 3);
  CHECK(chk.pass);
  CHECK(chk.residual < 1e-10);
  CHECK(chk.diff_power_norm <= chk.diff_norm + 1e-12);
}

TEST_CASE("budget guards refuse oversized exact computations") {
  Matrix big = Matrix::Identity(16, 16);
  CHECK_THROWS(twirl_exact_enum(ensembles::pf_ensemble(4), 2, big, 10.0));
  CHECK_THROWS(pf_twirl_mask(big, 4, 2, uniform_phase_average(),
                             kwise::exact_twise_perm(4), 10.0));
  CHECK_THROWS(twirl_exact_enum(ensembles::haar_ensemble(4), 2, big));  // no enumerator
}
