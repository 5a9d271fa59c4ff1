// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <algorithm>
#include <set>

#include "pfclab/kwise.hpp"

using namespace pfclab::kwise;

TEST_CASE("GF(2^n) multiplication is a field operation") {
  for (int n : {2, 3, 4, 8}) {
    const uint32_t size = 1u << n;
    // commutativity and distributivity on a sample grid
    for (uint32_t a = 0; a < std::min(size, 16u); ++a)
      for (uint32_t b = 0; b < std::min(size, 16u); ++b) {
        CHECK(gf_mul(a, b, n) == gf_mul(b, a, n));
        for (uint32_t c = 0; c < 4; ++c)
          CHECK(gf_mul(a ^ b, c, n) == (gf_mul(a, c, n) ^ gf_mul(b, c, n)));
      }
    CHECK(gf_mul(1, 5 % size, n) == 5 % size);
    // every nonzero element has an inverse
    for (uint32_t a = 1; a < std::min(size, 64u); ++a) {
      bool found = false;
      for (uint32_t b = 1; b < size && !found; ++b) found = gf_mul(a, b, n) == 1;
      CHECK(found);
    }
  }
}

TEST_CASE("associativity in GF(2^8) on random triples") {
  uint32_t x = 1;
  auto next = [&x] { return x = (x * 109 + 89) & 0xff; };
  for (int i = 0; i < 200; ++i) {
    uint32_t a = next(), b = next(), c = next();
    CHECK(gf_mul(gf_mul(a, b, 8), c, 8) == gf_mul(a, gf_mul(b, c, 8), 8));
  }
}

TEST_CASE("the degree-<k polynomial family is k-wise uniform") {
  // for any k distinct inputs, the k output bits are uniform over seeds
  const int n = 2, k = 2;
  auto fam = kwise_poly_family(n, k);
  uint32_t inputs[2] = {1, 3};
  int counts[4] = {0, 0, 0, 0};
  for (uint64_t seed = 0; seed < fam.seed_count(); ++seed) {
    int pattern = fam.eval(seed, inputs[0]) * 2 + fam.eval(seed, inputs[1]);
    counts[pattern]++;
  }
  for (int p = 0; p < 4; ++p)
    CHECK(counts[p] == static_cast<int>(fam.seed_count()) / 4);
}

TEST_CASE("uniform permutations have zero t-wise delta; identity does not") {
  CHECK(kwise_perm_delta(exact_twise_perm(4), 2) == 0.0);
  CHECK(kwise_perm_delta(exact_twise_perm(5), 2) <= 1e-15);
  // the point mass on the identity has Pr[pi(0)=0] = 1 vs uniform 1/4
  CHECK(kwise_perm_delta(identity_perm_distribution(4), 1) ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("the uniform permutation enumerator covers S_N exactly once") {
  auto D = exact_twise_perm(4);
  REQUIRE(D.cardinality == 24);
  std::set<std::vector<int>> seen;
  for (uint64_t i = 0; i < D.cardinality; ++i) {
    auto p = D.enumerator(i);
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3});
    CHECK(seen.insert(p).second);
  }
}

TEST_CASE("keyed permutations are bijections, deterministic, key-sensitive") {
  const int n = 6, d = 1 << n;
  auto p1 = keyed_prp(n, 42);
  auto p2 = keyed_prp(n, 42);
  auto p3 = keyed_prp(n, 43);
  CHECK(p1 == p2);
  CHECK(p1 != p3);
  std::vector<bool> hit(d, false);
  for (int v : p1) {
    REQUIRE(v >= 0);
    REQUIRE(v < d);
    CHECK(!hit[v]);
    hit[v] = true;
  }
}

TEST_CASE("keyed Boolean functions are deterministic and non-constant") {
  auto f = keyed_prf(8, 7);
  auto g = keyed_prf(8, 7);
  int ones = 0;
  for (uint32_t x = 0; x < 256; ++x) {
    CHECK(f(x) == g(x));
    ones += f(x);
  }
  CHECK(ones > 64);
  CHECK(ones < 192);
}
