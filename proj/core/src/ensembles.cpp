// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/ensembles.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include "pfclab/clifford.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/symgroup.hpp"

namespace pfclab::ensembles {

std::string UnitaryEnsemble::descriptor() const {
  std::ostringstream ss;
  ss << name << '[' << dim_in << "->" << dim_out << ']';
  return ss.str();
}

Matrix haar_unitary(int d, uint64_t seed) {
  if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
  Rng rng(seed);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // absorb the R-diagonal phases so Q is Haar distributed
  for (int j = 0; j < d; ++j) {
    Complex ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q;
}

UnitaryEnsemble haar_ensemble(int d) {
  UnitaryEnsemble e;
  e.name = "haar";
  e.dim_in = e.dim_out = d;
  e.sampler = [d](uint64_t seed) { return haar_unitary(d, seed); };
  return e;
}

Matrix perm_operator(const std::vector<int>& pi) {
  const int d = static_cast<int>(pi.size());
  std::vector<bool> hit(d, false);
  for (int v : pi) {
    if (v < 0 || v >= d || hit[v])
      throw std::invalid_argument("perm_operator: not a bijection");
    hit[v] = true;
  }
  Matrix m = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) m(pi[x], x) = 1.0;
  return m;
}

Matrix phase_operator(const std::vector<int>& f) {
  const int d = static_cast<int>(f.size());
  Matrix m = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) {
    if (f[x] != 0 && f[x] != 1)
      throw std::invalid_argument("phase_operator: table entries must be 0/1");
    m(x, x) = f[x] ? -1.0 : 1.0;
  }
  return m;
}

namespace {

std::vector<int> random_perm(int d, Rng& rng) {
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  for (int i = d - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

std::vector<int> random_bits(int d, Rng& rng) {
  std::vector<int> f(d);
  for (int x = 0; x < d; ++x) f[x] = static_cast<int>(rng.next_u64() & 1);
  return f;
}

std::vector<int> unrank_perm(int d, uint64_t index) {
  std::vector<int> avail(d);
  std::iota(avail.begin(), avail.end(), 0);
  std::vector<int> p;
  p.reserve(d);
  for (int i = d - 1; i >= 0; --i) {
    uint64_t f = static_cast<uint64_t>(symgroup::factorial(i));
    int pos = static_cast<int>(index / f);
    index %= f;
    p.push_back(avail[pos]);
    avail.erase(avail.begin() + pos);
  }
  return p;
}

std::vector<int> mask_bits(int d, uint64_t mask) {
  std::vector<int> f(d);
  for (int x = 0; x < d; ++x) f[x] = static_cast<int>((mask >> x) & 1);
  return f;
}

}  // namespace

UnitaryEnsemble perm_ensemble(int d) {
  UnitaryEnsemble e;
  e.name = "perm";
  e.dim_in = e.dim_out = d;
  e.sampler = [d](uint64_t seed) {
    Rng rng(seed);
    return perm_operator(random_perm(d, rng));
  };
  if (d <= 8) {
    e.cardinality = static_cast<uint64_t>(symgroup::factorial(d));
    e.enumerator = [d](uint64_t index) { return perm_operator(unrank_perm(d, index)); };
  }
  return e;
}

UnitaryEnsemble phase_ensemble(int d) {
  UnitaryEnsemble e;
  e.name = "phase";
  e.dim_in = e.dim_out = d;
  e.sampler = [d](uint64_t seed) {
    Rng rng(seed);
    return phase_operator(random_bits(d, rng));
  };
  if (d <= 20) {
    e.cardinality = 1ULL << d;
    e.enumerator = [d](uint64_t index) { return phase_operator(mask_bits(d, index)); };
  }
  return e;
}

Matrix pf_sample(int d, uint64_t seed) {
  Rng perm_rng(split_seed(seed, 0));
  Rng phase_rng(split_seed(seed, 1));
  return perm_operator(random_perm(d, perm_rng)) *
         phase_operator(random_bits(d, phase_rng));
}

UnitaryEnsemble pf_ensemble(int d) {
  UnitaryEnsemble e;
  e.name = "pf";
  e.dim_in = e.dim_out = d;
  e.sampler = [d](uint64_t seed) { return pf_sample(d, seed); };
  if (d <= 8) {
    const uint64_t nphase = 1ULL << d;
    e.cardinality = static_cast<uint64_t>(symgroup::factorial(d)) * nphase;
    e.enumerator = [d, nphase](uint64_t index) -> Matrix {
      return perm_operator(unrank_perm(d, index / nphase)) *
             phase_operator(mask_bits(d, index % nphase));
    };
  }
  return e;
}

UnitaryEnsemble pf_derandomized(int d, kwise::PermDistribution P,
                                kwise::KWiseFunctionFamily F) {
  if (d != (1 << F.n))
    throw std::invalid_argument("pf_derandomized: d must equal 2^{F.n}");
  if (P.domain != d)
    throw std::invalid_argument("pf_derandomized: permutation domain mismatch");
  auto table = [F, d](uint64_t fseed) {
    std::vector<int> f(d);
    for (int x = 0; x < d; ++x) f[x] = F.eval(fseed, static_cast<uint32_t>(x));
    return f;
  };
  UnitaryEnsemble e;
  e.name = "pf-derandomized";
  e.dim_in = e.dim_out = d;
  e.sampler = [P, F, table](uint64_t seed) -> Matrix {
    Rng rng(split_seed(seed, 1));
    uint64_t fseed = rng.next_below(F.seed_count());
    return perm_operator(P.sampler(split_seed(seed, 0))) *
           phase_operator(table(fseed));
  };
  if (P.enumerator && P.cardinality > 0) {
    const uint64_t nf = F.seed_count();
    e.cardinality = P.cardinality * nf;
    e.enumerator = [P, table, nf](uint64_t index) -> Matrix {
      return perm_operator(P.enumerator(index / nf)) * phase_operator(table(index % nf));
    };
  }
  return e;
}

UnitaryEnsemble clifford_ensemble(int n) {
  UnitaryEnsemble e;
  e.name = "clifford";
  e.dim_in = e.dim_out = 1 << n;
  e.sampler = [n](uint64_t seed) { return clifford::sample_clifford(n, seed); };
  if (n == 1) {
    e.cardinality = clifford::single_qubit_cliffords().size();
    e.enumerator = [](uint64_t index) {
      return clifford::single_qubit_cliffords()[index];
    };
  }
  return e;
}

Matrix pfc_sample(int n, uint64_t seed) {
  const int d = 1 << n;
  Rng perm_rng(split_seed(seed, 0));
  Rng phase_rng(split_seed(seed, 1));
  return perm_operator(random_perm(d, perm_rng)) *
         phase_operator(random_bits(d, phase_rng)) *
         clifford::sample_clifford(n, split_seed(seed, 2));
}

UnitaryEnsemble pfc_ensemble(int n) {
  UnitaryEnsemble e;
  e.name = "pfc";
  e.dim_in = e.dim_out = 1 << n;
  e.sampler = [n](uint64_t seed) { return pfc_sample(n, seed); };
  return e;
}

UnitaryEnsemble pfc_keyed_ensemble(int n) {
  if (n % 2 != 0)
    throw std::invalid_argument("pfc_keyed_ensemble: n must be even (Feistel halves)");
  UnitaryEnsemble e;
  e.name = "pfc-keyed";  // NOT cryptographically secure stand-in components
  e.dim_in = e.dim_out = 1 << n;
  e.sampler = [n](uint64_t key) -> Matrix {
    const int d = 1 << n;
    auto prf = kwise::keyed_prf(n, split_seed(key, 1));
    std::vector<int> f(d);
    for (int x = 0; x < d; ++x) f[x] = prf(static_cast<uint32_t>(x));
    return perm_operator(kwise::keyed_prp(n, split_seed(key, 0))) *
           phase_operator(f) * clifford::sample_clifford(n, split_seed(key, 2));
  };
  return e;
}

namespace {

CVector plus_state(int s) {
  const int dim = 1 << s;
  return CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

Matrix pad_with(const CVector& anc, int d_in) {
  // |psi> -> |psi> (x) |anc>: (d_in * |anc|) x d_in
  const int a = static_cast<int>(anc.size());
  Matrix m = Matrix::Zero(static_cast<long>(d_in) * a, d_in);
  for (int i = 0; i < d_in; ++i) m.block(static_cast<long>(i) * a, i, a, 1) = anc;
  return m;
}

}  // namespace

Matrix pri_isometry(int n, int s, uint64_t seed) {
  if (s <= 0 || s >= n)
    throw std::invalid_argument("pri_isometry: requires 0 < s < n");
  const int d = 1 << n;
  if (d > 4096) throw std::invalid_argument("pri_isometry: dimension overflow");
  return pf_sample(d, seed) * pad_with(plus_state(s), 1 << (n - s));
}

UnitaryEnsemble pri_ensemble(int n, int s) {
  if (s <= 0 || s >= n)
    throw std::invalid_argument("pri_ensemble: requires 0 < s < n");
  UnitaryEnsemble e;
  e.name = "pri";
  e.dim_in = 1 << (n - s);
  e.dim_out = 1 << n;
  e.sampler = [n, s](uint64_t seed) { return pri_isometry(n, s, seed); };
  return e;
}

Matrix haar_isometry(int d_out, int d_in, uint64_t seed) {
  if (d_in > d_out)
    throw std::invalid_argument("haar_isometry: d_in must be <= d_out");
  Matrix pad = Matrix::Zero(d_out, d_in);
  if (d_out % d_in == 0) {
    const int ratio = d_out / d_in;
    for (int i = 0; i < d_in; ++i) pad(static_cast<long>(i) * ratio, i) = 1.0;  // |psi> (x) |0...0>
  } else {
    for (int i = 0; i < d_in; ++i) pad(i, i) = 1.0;
  }
  return haar_unitary(d_out, seed) * pad;
}

UnitaryEnsemble haar_isometry_ensemble(int d_out, int d_in) {
  UnitaryEnsemble e;
  e.name = "haar-isometry";
  e.dim_in = d_in;
  e.dim_out = d_out;
  e.sampler = [d_out, d_in](uint64_t seed) { return haar_isometry(d_out, d_in, seed); };
  return e;
}

UnitaryEnsemble identity_ensemble(int d) {
  UnitaryEnsemble e;
  e.name = "identity";
  e.dim_in = e.dim_out = d;
  e.sampler = [d](uint64_t) { return Matrix::Identity(d, d); };
  e.enumerator = [d](uint64_t) { return Matrix::Identity(d, d); };
  e.cardinality = 1;
  return e;
}

}  // namespace pfclab::ensembles
