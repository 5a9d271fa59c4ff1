// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <sstream>

#include "pfclab/ensembles.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/tensor.hpp"

using namespace pfclab;

namespace {

Matrix random_matrix(int r, int c, uint64_t seed) {
  Rng rng(seed);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

}  // namespace

TEST_CASE("kron matches a hand-expanded 2x2 example") {
  Matrix a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 0.0, Complex(0.0, 1.0), 1.0, 0.0;
  ComplexOperator k = kron(ComplexOperator(a), ComplexOperator(b));
  REQUIRE(k.rows() == 4);
  CHECK(k.mat()(0, 1) == Complex(0.0, 1.0));   // a00 * b01
  CHECK(k.mat()(1, 0) == Complex(1.0, 0.0));   // a00 * b10
  CHECK(k.mat()(2, 1) == Complex(0.0, 3.0));   // a10 * b01
  CHECK(k.mat()(2, 3) == Complex(0.0, 4.0));   // a11 * b01
  CHECK(k.mat()(3, 2) == Complex(4.0, 0.0));   // a11 * b10
  CHECK(k.dims_out() == std::vector<int>{2, 2});
}

TEST_CASE("kron of identities is the identity") {
  auto id = ComplexOperator::identity({3, 2});
  CHECK((id.mat() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace of a product state recovers the factors") {
  Matrix a = random_matrix(2, 2, 11);
  Matrix b = random_matrix(3, 3, 12);
  ComplexOperator ab = kron(ComplexOperator(a), ComplexOperator(b));
  ComplexOperator ta = partial_trace(ab, {0});
  ComplexOperator tb = partial_trace(ab, {1});
  CHECK((ta.mat() - a * b.trace()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((tb.mat() - b * a.trace()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace preserves the full trace and composes") {
  Matrix x = random_matrix(2 * 3 * 2, 2 * 3 * 2, 21);
  std::vector<int> dims = {2, 3, 2};
  Matrix keep02 = partial_trace(x, dims, {0, 2});
  CHECK(std::abs(keep02.trace() - x.trace()) < 1e-12);
  // tracing in two stages equals tracing at once
  Matrix keep0 = partial_trace(keep02, {2, 2}, {0});
  Matrix direct = partial_trace(x, dims, {0});
  CHECK((keep0 - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace norm of a Hermitian matrix is the sum of |eigenvalues|") {
  Matrix h(2, 2);
  h << 3.0, 0.0, 0.0, -1.0;
  CHECK(trace_norm(h) == doctest::Approx(4.0).epsilon(1e-12));
  // unitary invariance
  Matrix u = ensembles::haar_unitary(2, 5);
  CHECK(trace_norm(u * h * u.adjoint()) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("min_eig_hermitian computes the bottom eigenvalue and rejects junk") {
  Matrix h(2, 2);
  h << 1.0, Complex(0.0, 2.0), Complex(0.0, -2.0), 1.0;  // eigenvalues 1 +- 2
  CHECK(min_eig_hermitian(h) == doctest::Approx(-1.0).epsilon(1e-12));
  Matrix bad = random_matrix(3, 3, 31);  // not Hermitian
  CHECK_THROWS(min_eig_hermitian(bad));
}

TEST_CASE("complete_isometry extends columns to a unitary") {
  Matrix v = ensembles::haar_unitary(4, 9).leftCols(2);
  Matrix u = complete_isometry(v);
  REQUIRE(u.rows() == 4);
  REQUIRE(u.cols() == 4);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((u.leftCols(2) - v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("operator dump/load round trip is bit exact") {
  ComplexOperator op(random_matrix(6, 4, 77), {2, 3}, {4});
  std::string text = dump_operator_string(op);
  ComplexOperator back = load_operator_string(text);
  CHECK(back.dims_out() == op.dims_out());
  CHECK(back.dims_in() == op.dims_in());
  CHECK((back.mat().array() == op.mat().array()).all());
  CHECK(dump_operator_string(back) == text);
}

TEST_CASE("register states validate and expose densities") {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  auto st = RegisterState::pure({{"A", 2}}, v);
  CHECK(st.dim() == 2);
  CHECK(st.density()(0, 1).real() == doctest::Approx(0.5));
  CVector bad(2);
  bad << 1.0, 1.0;  // unnormalised
  CHECK_THROWS(RegisterState::pure({{"A", 2}}, bad).check());
}
