// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/clifford.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pfclab/rng.hpp"

namespace pfclab::clifford {

namespace {

const Complex kI(0.0, 1.0);

Matrix mat_I() { return Matrix::Identity(2, 2); }
Matrix mat_X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix mat_Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
Matrix mat_H() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
Matrix mat_S() {
  Matrix m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

Matrix embed1(const Matrix& g, int q, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    const Matrix& f = (i == q) ? g : mat_I();
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < out.rows(); ++a)
      for (int b = 0; b < out.cols(); ++b)
        next.block(a * 2, b * 2, 2, 2) = out(a, b) * f;
    out = next;
  }
  return out;
}

Matrix embed_cx(int c, int t, int n) {
  const int dim = 1 << n;
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    // qubit 0 is the most significant bit
    int cb = (i >> (n - 1 - c)) & 1;
    int j = cb ? i ^ (1 << (n - 1 - t)) : i;
    m(j, i) = 1.0;
  }
  return m;
}

}  // namespace

bool Pauli::commutes(const Pauli& o) const {
  int s = std::popcount(x & o.z) + std::popcount(z & o.x);
  return s % 2 == 0;
}

Pauli pauli_mul(const Pauli& a, const Pauli& b) {
  Pauli r;
  r.n = a.n;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  r.phase = (a.phase + b.phase + 2 * std::popcount(a.z & b.x)) % 4;
  return r;
}

Matrix Pauli::matrix() const {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    // qubit 0 most significant: build from the last factor outward
    int xb = (x >> q) & 1, zb = (z >> q) & 1;
    Matrix f = Matrix::Identity(2, 2);
    if (xb) f = mat_X() * f;
    if (zb) f = f * mat_Z();
    if (xb && zb) f = mat_X() * mat_Z();
    Matrix next(2 * out.rows(), 2 * out.cols());
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) =
            f(a, b) * out;
    out = next;
  }
  Complex ph = std::pow(kI, phase);
  return ph * out;
}

namespace {

// Symbolic conjugation P -> g P g^dag, qubit q given as bit index (bit q of
// the masks; qubit 0 of the circuit is mask bit n-1).

void conj_h(Pauli& p, int q) {
  uint32_t m = 1u << q;
  int xb = (p.x & m) ? 1 : 0, zb = (p.z & m) ? 1 : 0;
  if (xb && zb) p.phase = (p.phase + 2) % 4;
  // swap x and z bits
  if (xb != zb) {
    p.x ^= m;
    p.z ^= m;
  }
}

void conj_s(Pauli& p, int q) {
  uint32_t m = 1u << q;
  if (p.x & m) {
    p.phase = (p.phase + 1 + 2 * ((p.z & m) ? 1 : 0)) % 4;
    p.z ^= m;
  }
}

void conj_cx(Pauli& p, int c, int t) {
  uint32_t mc = 1u << c, mt = 1u << t;
  int xc = (p.x & mc) ? 1 : 0, zc = (p.z & mc) ? 1 : 0;
  int xt = (p.x & mt) ? 1 : 0, zt = (p.z & mt) ? 1 : 0;
  if (xc && zt && (xt ^ zc ^ 1)) p.phase = (p.phase + 2) % 4;
  if (xc) p.x ^= mt;
  if (zt) p.z ^= mc;
}

void conj_x(Pauli& p, int q) {
  if (p.z & (1u << q)) p.phase = (p.phase + 2) % 4;
}

void conj_z(Pauli& p, int q) {
  if (p.x & (1u << q)) p.phase = (p.phase + 2) % 4;
}

struct SweepState {
  int n;
  Pauli p, q;
  Matrix m;  // accumulated product of applied gates

  // circuit qubit index for mask bit b
  int cq(int b) const { return n - 1 - b; }

  void h(int b) {
    conj_h(p, b);
    conj_h(q, b);
    m = embed1(mat_H(), cq(b), n) * m;
  }
  void s(int b) {
    conj_s(p, b);
    conj_s(q, b);
    m = embed1(mat_S(), cq(b), n) * m;
  }
  void cx(int bc, int bt) {
    conj_cx(p, bc, bt);
    conj_cx(q, bc, bt);
    m = embed_cx(cq(bc), cq(bt), n) * m;
  }
  void gx(int b) {
    conj_x(p, b);
    conj_x(q, b);
    m = embed1(mat_X(), cq(b), n) * m;
  }
  void gz(int b) {
    conj_z(p, b);
    conj_z(q, b);
    m = embed1(mat_Z(), cq(b), n) * m;
  }
};

Pauli sample_hermitian_pauli(Rng& rng, int n, uint32_t active, bool nonidentity) {
  Pauli p;
  p.n = n;
  for (;;) {
    uint64_t bits = rng.next_u64();
    p.x = static_cast<uint32_t>(bits & active);
    p.z = static_cast<uint32_t>((bits >> 16) & active);
    if (nonidentity && p.x == 0 && p.z == 0) continue;
    int sign = static_cast<int>((bits >> 32) & 1);
    p.phase = (std::popcount(p.x & p.z) + 2 * sign) % 4;
    return p;
  }
}

// Sweep the anticommuting pair (P, Q) to (+X_b0, +Z_b0) on the block of mask
// bits <= b0, recording gates in st.
void sweep_pair(SweepState& st, int b0) {
  auto reduce_to_x = [&](Pauli SweepState::* which) {
    // make the chosen Pauli a pure X string
    for (int b = b0; b >= 0; --b) {
      uint32_t m = 1u << b;
      if ((st.*which).z & m) {
        if ((st.*which).x & m)
          st.s(b);
        else
          st.h(b);
      }
    }
    // move support onto bit b0 if needed
    if (!((st.*which).x & (1u << b0))) {
      int src = -1;
      for (int b = b0 - 1; b >= 0; --b)
        if ((st.*which).x & (1u << b)) {
          src = b;
          break;
        }
      // swap b0 <-> src
      st.cx(b0, src);
      st.cx(src, b0);
      st.cx(b0, src);
    }
    // cancel remaining X factors against X_{b0}
    for (int b = b0 - 1; b >= 0; --b)
      if ((st.*which).x & (1u << b)) st.cx(b0, b);
  };

  reduce_to_x(&SweepState::p);
  // now P = +-X_{b0}; Q anticommutes, so Q has the Z bit at b0 set
  if (!(st.q.x == 0 && st.q.z == (1u << b0))) {
    st.h(b0);  // P -> Z_{b0}; Q picks up an X bit at b0
    reduce_to_x(&SweepState::q);
    st.h(b0);  // back: P -> X_{b0}, Q -> Z_{b0}
  }
  if (st.p.phase != 0) st.gz(b0);
  if (st.q.phase != 0) st.gx(b0);
}

}  // namespace

Matrix sample_clifford(int n, uint64_t seed) {
  if (n < 1 || n > 3) throw std::invalid_argument("sample_clifford: n must be in [1,3]");
  Rng rng(seed);
  const int dim = 1 << n;

  SweepState st;
  st.n = n;
  st.m = Matrix::Identity(dim, dim);

  for (int j = 0; j < n; ++j) {
    int b0 = n - 1 - j;  // mask bit of circuit qubit j
    uint32_t active = (1u << (b0 + 1)) - 1;
    st.p = sample_hermitian_pauli(rng, n, active, true);
    do {
      st.q = sample_hermitian_pauli(rng, n, active, false);
    } while (st.p.commutes(st.q));
    sweep_pair(st, b0);
  }
  return st.m.adjoint();
}

const std::vector<Matrix>& single_qubit_cliffords() {
  static const std::vector<Matrix> group = [] {
    auto canon = [](Matrix m) {
      // fix global phase: first entry with |.| > eps made positive real
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          if (std::abs(m(i, j)) > 1e-9) {
            m *= std::abs(m(i, j)) / m(i, j);
            return m;
          }
      return m;
    };
    auto key = [](const Matrix& m) {
      std::vector<long long> k;
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
          k.push_back(std::llround(m(i, j).real() * 1e6));
          k.push_back(std::llround(m(i, j).imag() * 1e6));
        }
      return k;
    };
    std::map<std::vector<long long>, Matrix> seen;
    std::vector<Matrix> frontier = {canon(Matrix::Identity(2, 2))};
    seen[key(frontier[0])] = frontier[0];
    const std::vector<Matrix> gens = {mat_H(), mat_S()};
    while (!frontier.empty()) {
      std::vector<Matrix> next;
      for (const auto& m : frontier)
        for (const auto& g : gens) {
          Matrix c = canon(g * m);
          auto kk = key(c);
          if (!seen.count(kk)) {
            seen[kk] = c;
            next.push_back(c);
          }
        }
      frontier = std::move(next);
    }
    std::vector<Matrix> out;
    for (auto& [k, m] : seen) out.push_back(m);
    return out;
  }();
  return group;
}

bool is_pauli_string(const Matrix& m, double tol) {
  const int d = static_cast<int>(m.rows());
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) return false;
  int nonzero = 0;
  bool unit = false;
  for (uint32_t x = 0; x < (1u << n); ++x)
    for (uint32_t z = 0; z < (1u << n); ++z) {
      Pauli p;
      p.n = n;
      p.x = x;
      p.z = z;
      Complex coeff = (p.matrix().adjoint() * m).trace() / static_cast<double>(d);
      if (std::abs(coeff) > tol) {
        nonzero++;
        unit = std::abs(std::abs(coeff) - 1.0) <= tol;
      }
    }
  return nonzero == 1 && unit;
}

}  // namespace pfclab::clifford
