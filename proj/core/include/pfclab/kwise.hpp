// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace pfclab::kwise {

/// GF(2^n) arithmetic for 1 <= n <= 16, with fixed irreducible moduli.
uint32_t gf_mul(uint32_t a, uint32_t b, int n);
uint32_t gf_modulus(int n);  // modulus polynomial bitmask, degree-n bit included

/// k-wise independent Boolean function family on n-bit inputs: a uniformly
/// random polynomial of degree < k over GF(2^n), output = least significant
/// bit of the evaluation. Seed space = the k coefficient words (k*n bits).
struct KWiseFunctionFamily {
  int n = 0;       // domain bits
  int k = 0;       // independence order
  // evaluate f_seed(x); seeds are interpreted as k coefficients of n bits
  // each, coefficient i in bits [i*n, (i+1)*n).
  int eval(uint64_t seed, uint32_t x) const;
  uint64_t seed_count() const { return 1ULL << (static_cast<uint64_t>(n) * k); }
};

KWiseFunctionFamily kwise_poly_family(int n, int k);

/// Distribution over permutations of [N] with a declared independence order.
struct PermDistribution {
  int domain = 0;
  std::function<std::vector<int>(uint64_t seed)> sampler;
  // exhaustive enumerator, present iff the distribution is finite and small
  std::function<std::vector<int>(uint64_t index)> enumerator;
  uint64_t cardinality = 0;
  double declared_delta = 0.0;
  int declared_order = 0;
};

/// Uniform permutations of [N] (Fisher-Yates); exactly t-wise independent
/// for every t. Enumerable for N <= 8.
PermDistribution exact_twise_perm(int N);

/// The distribution concentrated on the identity permutation (test fixture).
PermDistribution identity_perm_distribution(int N);

/// Exact delta of Def-4.2-style approximate t-wise independence, measured by
/// exhaustive enumeration: max over distinct x- and y-tuples of
/// |Pr[pi(x)=y] - (N...(N-t+1))^-1|. Requires an enumerable distribution,
/// N <= 8, t <= 3.
double kwise_perm_delta(const PermDistribution& D, int t);

/// Keyed small-domain permutation: 4-round balanced Feistel network over
/// n/2-bit halves with a splitmix-seeded round function. Deterministic per
/// key. NOT cryptographically secure; a keyed stand-in only.
std::vector<int> keyed_prp(int n, uint64_t key);

/// Keyed Boolean function on n-bit inputs (splitmix-based). NOT
/// cryptographically secure; a keyed stand-in only.
std::function<int(uint32_t)> keyed_prf(int n, uint64_t key);

}  // namespace pfclab::kwise
