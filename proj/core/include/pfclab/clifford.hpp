// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <vector>

#include "pfclab/tensor.hpp"

namespace pfclab::clifford {

/// n-qubit Pauli with phase i^phase * X^x Z^z (bitmask per qubit).
struct Pauli {
  uint32_t x = 0;
  uint32_t z = 0;
  int phase = 0;  // exponent of i, mod 4
  int n = 1;

  bool commutes(const Pauli& o) const;
  Matrix matrix() const;
};

Pauli pauli_mul(const Pauli& a, const Pauli& b);

/// Uniformly random n-qubit Clifford unitary (up to global phase), sampled
/// by drawing a random anticommuting Pauli pair per qubit and sweeping it to
/// (X_i, Z_i) with H/S/CX gates. Supports 1 <= n <= 3.
Matrix sample_clifford(int n, uint64_t seed);

/// The 24 single-qubit Clifford unitaries, one representative per global
/// phase class, in a deterministic order.
const std::vector<Matrix>& single_qubit_cliffords();

/// Decompose a d x d matrix over the Pauli basis; returns true iff it is a
/// single signed (or i-phased) Pauli string within tol.
bool is_pauli_string(const Matrix& m, double tol = 1e-9);

}  // namespace pfclab::clifford
