// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/kwise.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pfclab/rng.hpp"

namespace pfclab::kwise {

uint32_t gf_modulus(int n) {
  // one irreducible polynomial per degree, lowest-weight conventional choices
  static const uint32_t table[17] = {
      0,      0x3,    0x7,    0xB,     0x13,   0x25,   0x43,   0x83,  0x11B,
      0x211,  0x409,  0x805,  0x1053,  0x201B, 0x4443, 0x8003, 0x1100B};
  if (n < 1 || n > 16) throw std::invalid_argument("gf_modulus: n must be in [1,16]");
  return table[n];
}

uint32_t gf_mul(uint32_t a, uint32_t b, int n) {
  const uint32_t mod = gf_modulus(n);
  const uint32_t top = 1u << n;
  uint32_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= mod;
  }
  return r;
}

int KWiseFunctionFamily::eval(uint64_t seed, uint32_t x) const {
  const uint32_t mask = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  // Horner evaluation of the degree-(k-1) polynomial at x
  uint32_t acc = 0;
  for (int i = k - 1; i >= 0; --i) {
    uint32_t coeff = static_cast<uint32_t>(seed >> (static_cast<uint64_t>(i) * n)) & mask;
    acc = gf_mul(acc, x, n) ^ coeff;
  }
  return static_cast<int>(acc & 1);
}

KWiseFunctionFamily kwise_poly_family(int n, int k) {
  if (n < 1 || n > 16) throw std::invalid_argument("kwise_poly_family: n must be in [1,16]");
  if (k < 1 || static_cast<long long>(n) * k > 62)
    throw std::invalid_argument("kwise_poly_family: seed space n*k must be <= 62 bits");
  KWiseFunctionFamily fam;
  fam.n = n;
  fam.k = k;
  return fam;
}

namespace {

long long ll_factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<int> fisher_yates(int N, Rng& rng) {
  std::vector<int> p(N);
  std::iota(p.begin(), p.end(), 0);
  for (int i = N - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

std::vector<int> unrank_perm(int N, uint64_t index) {
  // factorial-number-system unranking, lexicographic order
  std::vector<int> avail(N);
  std::iota(avail.begin(), avail.end(), 0);
  std::vector<int> p;
  p.reserve(N);
  for (int i = N - 1; i >= 0; --i) {
    uint64_t f = static_cast<uint64_t>(ll_factorial(i));
    int pos = static_cast<int>(index / f);
    index %= f;
    p.push_back(avail[pos]);
    avail.erase(avail.begin() + pos);
  }
  return p;
}

}  // namespace

PermDistribution exact_twise_perm(int N) {
  if (N < 1) throw std::invalid_argument("exact_twise_perm: N must be >= 1");
  PermDistribution D;
  D.domain = N;
  D.sampler = [N](uint64_t seed) {
    Rng rng(seed);
    return fisher_yates(N, rng);
  };
  if (N <= 8) {
    D.cardinality = static_cast<uint64_t>(ll_factorial(N));
    D.enumerator = [N](uint64_t index) { return unrank_perm(N, index); };
  }
  D.declared_delta = 0.0;
  D.declared_order = N;
  return D;
}

PermDistribution identity_perm_distribution(int N) {
  PermDistribution D;
  D.domain = N;
  std::vector<int> id(N);
  std::iota(id.begin(), id.end(), 0);
  D.sampler = [id](uint64_t) { return id; };
  D.enumerator = [id](uint64_t) { return id; };
  D.cardinality = 1;
  D.declared_delta = 1.0;
  D.declared_order = 0;
  return D;
}

double kwise_perm_delta(const PermDistribution& D, int t) {
  const int N = D.domain;
  if (!D.enumerator || D.cardinality == 0)
    throw std::invalid_argument("kwise_perm_delta: distribution not enumerable");
  if (N > 8 || t > 3 || t < 1 || t > N)
    throw std::invalid_argument("kwise_perm_delta: requires N <= 8, 1 <= t <= min(N,3)");

  // distinct t-tuples over [N]
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(t);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == t) {
      tuples.push_back(cur);
      return;
    }
    for (int v = 0; v < N; ++v) {
      bool used = false;
      for (int i = 0; i < pos; ++i)
        if (cur[i] == v) used = true;
      if (used) continue;
      cur[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);

  const size_t m = tuples.size();
  // index a distinct tuple by mixed radix over its entries
  auto tuple_id = [&](const std::vector<int>& v) {
    size_t id = 0;
    for (int x : v) id = id * N + static_cast<size_t>(x);
    return id;
  };
  std::vector<int> id_to_row(static_cast<size_t>(std::pow(N, t)), -1);
  for (size_t i = 0; i < m; ++i) id_to_row[tuple_id(tuples[i])] = static_cast<int>(i);

  std::vector<std::vector<double>> prob(m, std::vector<double>(m, 0.0));
  const double w = 1.0 / static_cast<double>(D.cardinality);
  std::vector<int> img(t);
  for (uint64_t idx = 0; idx < D.cardinality; ++idx) {
    auto pi = D.enumerator(idx);
    for (size_t r = 0; r < m; ++r) {
      for (int i = 0; i < t; ++i) img[i] = pi[tuples[r][i]];
      prob[r][static_cast<size_t>(id_to_row[tuple_id(img)])] += w;
    }
  }

  double falling = 1.0;
  for (int i = 0; i < t; ++i) falling *= static_cast<double>(N - i);
  const double uniform = 1.0 / falling;
  double delta = 0.0;
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < m; ++c)
      delta = std::max(delta, std::abs(prob[r][c] - uniform));
  return delta;
}

std::vector<int> keyed_prp(int n, uint64_t key) {
  if (n < 2 || n % 2 != 0 || n > 20)
    throw std::invalid_argument("keyed_prp: n must be even and in [2,20]");
  const int h = n / 2;
  const uint32_t hmask = (1u << h) - 1;
  const uint32_t N = 1u << n;

  auto round_fn = [&](int round, uint32_t x) -> uint32_t {
    uint64_t s = key ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(round + 1)) ^
                 (static_cast<uint64_t>(x) << 20);
    return static_cast<uint32_t>(splitmix64(s)) & hmask;
  };

  std::vector<int> perm(N);
  for (uint32_t v = 0; v < N; ++v) {
    uint32_t L = v >> h, R = v & hmask;
    for (int r = 0; r < 4; ++r) {
      uint32_t nl = R;
      uint32_t nr = L ^ round_fn(r, R);
      L = nl;
      R = nr;
    }
    perm[v] = static_cast<int>((L << h) | R);
  }
  return perm;
}

std::function<int(uint32_t)> keyed_prf(int n, uint64_t key) {
  if (n < 1 || n > 30) throw std::invalid_argument("keyed_prf: n must be in [1,30]");
  return [key](uint32_t x) {
    uint64_t s = key ^ (0xd1342543de82ef95ULL * (static_cast<uint64_t>(x) + 1));
    return static_cast<int>(splitmix64(s) & 1);
  };
}

}  // namespace pfclab::kwise
