// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pfclab/kwise.hpp"
#include "pfclab/tensor.hpp"

namespace pfclab::ensembles {

/// A family of isometries given by a seeded sampler, optionally with an
/// exhaustive enumerator of exact cardinality.
struct UnitaryEnsemble {
  std::string name;
  int dim_in = 0;
  int dim_out = 0;
  std::function<Matrix(uint64_t seed)> sampler;
  std::function<Matrix(uint64_t index)> enumerator;  // optional
  uint64_t cardinality = 0;                          // valid iff enumerator set

  bool exact_enumerable() const {
    return static_cast<bool>(enumerator) && cardinality > 0;
  }
  std::string descriptor() const;  // "name[dim_in->dim_out]"
};

/// Haar-random d x d unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases folded back in so the distribution is exactly invariant.
Matrix haar_unitary(int d, uint64_t seed);
UnitaryEnsemble haar_ensemble(int d);

/// P_pi |x> = |pi(x)>. Rejects non-bijections.
Matrix perm_operator(const std::vector<int>& pi);
/// F_f = diag((-1)^{f(x)}) for a 0/1 table f.
Matrix phase_operator(const std::vector<int>& f);

/// Uniform permutation matrices on [d]; enumerable for d <= 8.
UnitaryEnsemble perm_ensemble(int d);
/// All 2^d binary phase operators; enumerable for d <= 20.
UnitaryEnsemble phase_ensemble(int d);

/// P F with uniform permutation and phase, on dimension d.
Matrix pf_sample(int d, uint64_t seed);
/// The P F ensemble; enumerable when d! * 2^d fits (d <= 8).
UnitaryEnsemble pf_ensemble(int d);

/// P F with the permutation drawn from `P` and the phase function from the
/// family `F` (a derandomised substitution); d = 2^{F.n}. Enumerable when
/// both factors are.
UnitaryEnsemble pf_derandomized(int d, kwise::PermDistribution P,
                                kwise::KWiseFunctionFamily F);

/// Uniformly random Clifford unitaries on n qubits (1 <= n <= 3);
/// enumerable at n = 1 (24 phase classes).
UnitaryEnsemble clifford_ensemble(int n);

/// P F C on n qubits with independent uniform components.
Matrix pfc_sample(int n, uint64_t seed);
UnitaryEnsemble pfc_ensemble(int n);

/// Keyed variant of the P F C product on n qubits: the permutation comes
/// from a keyed small-domain permutation and the phase from a keyed Boolean
/// function (both NOT cryptographically secure stand-ins); the Clifford is
/// seeded from the key. Requires even n (Feistel halves).
UnitaryEnsemble pfc_keyed_ensemble(int n);

/// The 2^n x 2^{n-s} isometry |psi> -> P F (|psi> (x) |+>^{(x) s}).
/// All entries are real. Requires 0 < s < n.
Matrix pri_isometry(int n, int s, uint64_t seed);
UnitaryEnsemble pri_ensemble(int n, int s);

/// Haar isometry: pad the input with |0> factors, then apply a Haar unitary.
Matrix haar_isometry(int d_out, int d_in, uint64_t seed);
UnitaryEnsemble haar_isometry_ensemble(int d_out, int d_in);

/// The single-element ensemble {I_d}.
UnitaryEnsemble identity_ensemble(int d);

}  // namespace pfclab::ensembles
