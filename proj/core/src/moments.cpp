// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include <Eigen/SVD>

#include "pfclab/rng.hpp"

namespace pfclab::moments {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Matrix kron_power(const Matrix& u, int t) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < t; ++i) {
    Matrix next(out.rows() * u.rows(), out.cols() * u.cols());
    for (int a = 0; a < out.rows(); ++a)
      for (int b = 0; b < out.cols(); ++b)
        next.block(a * u.rows(), b * u.cols(), u.rows(), u.cols()) = out(a, b) * u;
    out = next;
  }
  return out;
}

Matrix conjugate_term(const Matrix& u, const Matrix& x, int t) {
  Matrix ut = kron_power(u, t);
  if (ut.cols() != x.rows() || x.rows() != x.cols())
    throw std::invalid_argument("conjugate_term: dimension mismatch");
  return ut * x * ut.adjoint();
}

McTwirl twirl_mc(const ensembles::UnitaryEnsemble& e, int t, const Matrix& x,
                 uint64_t samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("twirl_mc: samples must be >= 1");
  const long long din = ipow(e.dim_in, t);
  const long long dout = ipow(e.dim_out, t);
  if (x.rows() != din || x.cols() != din)
    throw std::invalid_argument("twirl_mc: operator must be dim_in^t square");
  if (dout > 4096) throw std::invalid_argument("twirl_mc: dimension overflow");

  Matrix mean = Matrix::Zero(dout, dout);
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(dout, dout);
  for (uint64_t k = 0; k < samples; ++k) {
    Matrix term = conjugate_term(e.sampler(split_seed(seed, k)), x, t);
    // Welford update per entry (complex mean, |.|^2 spread)
    Matrix delta = term - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta.conjugate().cwiseProduct(term - mean).real();
  }
  McTwirl out;
  out.mean = mean;
  out.samples = samples;
  if (samples > 1) {
    double denom = static_cast<double>(samples) * static_cast<double>(samples - 1);
    out.max_stderr = std::sqrt(m2.maxCoeff() / denom);
  }
  return out;
}

Matrix twirl_exact_enum(const ensembles::UnitaryEnsemble& e, int t, const Matrix& x,
                        double budget) {
  if (!e.exact_enumerable())
    throw std::invalid_argument("twirl_exact_enum: ensemble is not enumerable");
  const long long din = ipow(e.dim_in, t);
  const long long dout = ipow(e.dim_out, t);
  if (x.rows() != din || x.cols() != din)
    throw std::invalid_argument("twirl_exact_enum: operator must be dim_in^t square");
  double cost = static_cast<double>(e.cardinality) * static_cast<double>(dout) *
                static_cast<double>(dout);
  if (cost > budget)
    throw std::invalid_argument("twirl_exact_enum: over scalar-op budget");

  Matrix acc = Matrix::Zero(dout, dout);
  for (uint64_t k = 0; k < e.cardinality; ++k)
    acc += conjugate_term(e.enumerator(k), x, t);
  return acc / static_cast<double>(e.cardinality);
}

PhaseAverage uniform_phase_average() {
  return [](const std::vector<int>& odd) { return odd.empty() ? 1.0 : 0.0; };
}

PhaseAverage family_phase_average(const kwise::KWiseFunctionFamily& fam) {
  if (fam.seed_count() > (1ULL << 20))
    throw std::invalid_argument("family_phase_average: seed space too large to enumerate");
  auto memo = std::make_shared<std::map<std::vector<int>, double>>();
  return [fam, memo](const std::vector<int>& odd) {
    if (odd.empty()) return 1.0;
    if (auto it = memo->find(odd); it != memo->end()) return it->second;
    const uint64_t n = fam.seed_count();
    long long sum = 0;
    for (uint64_t seed = 0; seed < n; ++seed) {
      int parity = 0;
      for (int v : odd) parity ^= fam.eval(seed, static_cast<uint32_t>(v));
      sum += parity ? -1 : 1;
    }
    double avg = static_cast<double>(sum) / static_cast<double>(n);
    (*memo)[odd] = avg;
    return avg;
  };
}

std::vector<int> index_to_tuple(long long idx, int d, int t) {
  std::vector<int> a(t);
  for (int i = t - 1; i >= 0; --i) {
    a[i] = static_cast<int>(idx % d);
    idx /= d;
  }
  return a;
}

long long tuple_to_index(const std::vector<int>& a, int d) {
  long long idx = 0;
  for (int v : a) idx = idx * d + v;
  return idx;
}

Matrix pf_twirl_mask(const Matrix& x, int d, int t, const PhaseAverage& mu,
                     const kwise::PermDistribution& P, double budget) {
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("pf_twirl_mask: dimension overflow");
  if (x.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("pf_twirl_mask: operator must be d^t square");
  if (!P.enumerator || P.cardinality == 0)
    throw std::invalid_argument("pf_twirl_mask: permutation distribution not enumerable");
  if (P.domain != d)
    throw std::invalid_argument("pf_twirl_mask: permutation domain mismatch");

  std::vector<std::vector<int>> tuples(dim);
  for (long long i = 0; i < dim; ++i) tuples[i] = index_to_tuple(i, d, t);

  // phase-averaged entries: coeff = mu(odd-values of r,c) * x(r,c)
  struct Entry {
    int r, c;
    Complex coeff;
  };
  std::vector<Entry> entries;
  std::vector<int> counts(d);
  for (long long r = 0; r < dim; ++r)
    for (long long c = 0; c < dim; ++c) {
      if (x(r, c) == Complex(0.0, 0.0)) continue;
      std::fill(counts.begin(), counts.end(), 0);
      for (int v : tuples[r]) counts[v]++;
      for (int v : tuples[c]) counts[v]++;
      std::vector<int> odd;
      for (int v = 0; v < d; ++v)
        if (counts[v] & 1) odd.push_back(v);
      double m = mu(odd);
      if (m == 0.0) continue;
      entries.push_back({static_cast<int>(r), static_cast<int>(c), m * x(r, c)});
    }

  double cost = static_cast<double>(P.cardinality) *
                (static_cast<double>(entries.size()) + static_cast<double>(dim) * t);
  if (cost > budget) throw std::invalid_argument("pf_twirl_mask: over scalar-op budget");

  Matrix out = Matrix::Zero(dim, dim);
  const double w = 1.0 / static_cast<double>(P.cardinality);
  std::vector<int> map(dim);
  std::vector<int> img(t);
  for (uint64_t k = 0; k < P.cardinality; ++k) {
    auto pi = P.enumerator(k);
    for (long long i = 0; i < dim; ++i) {
      for (int j = 0; j < t; ++j) img[j] = pi[tuples[i][j]];
      map[i] = static_cast<int>(tuple_to_index(img, d));
    }
    for (const auto& en : entries) out(map[en.r], map[en.c]) += w * en.coeff;
  }
  return out;
}

Matrix pf_twirl_exact(const Matrix& x, int d, int t) {
  if (d > 8) throw std::invalid_argument("pf_twirl_exact: d > 8 not enumerable; use the distinct-support closed form");
  return pf_twirl_mask(x, d, t, uniform_phase_average(), kwise::exact_twise_perm(d),
                       1e10);
}

bool is_distinct_tuple(const std::vector<int>& a) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j]) return false;
  return true;
}

std::vector<std::vector<int>> distinct_tuples(int d, int t) {
  const long long dim = ipow(d, t);
  std::vector<std::vector<int>> out;
  for (long long i = 0; i < dim; ++i) {
    auto a = index_to_tuple(i, d, t);
    if (is_distinct_tuple(a)) out.push_back(std::move(a));
  }
  return out;
}

Matrix distinct_projector(int d, int t) {
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("distinct_projector: dimension overflow");
  Matrix p = Matrix::Zero(dim, dim);
  for (long long i = 0; i < dim; ++i)
    if (is_distinct_tuple(index_to_tuple(i, d, t))) p(i, i) = 1.0;
  return p;
}

namespace {

// sigma with y_i = x_{sigma(i)} for distinct tuples with equal value sets;
// returns empty when y is not a rearrangement of x.
std::vector<int> locate_sigma(const std::vector<int>& x, const std::vector<int>& y) {
  const int t = static_cast<int>(x.size());
  std::vector<int> sigma(t, -1);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < t; ++j)
      if (x[j] == y[i]) {
        sigma[i] = j;
        break;
      }
    if (sigma[i] < 0) return {};
  }
  return sigma;
}

}  // namespace

Matrix pf_twirl_closed_form(const std::vector<int>& x_tuple,
                            const std::vector<int>& y_tuple, int d, int t) {
  if (static_cast<int>(x_tuple.size()) != t || static_cast<int>(y_tuple.size()) != t)
    throw std::invalid_argument("pf_twirl_closed_form: tuple length mismatch");
  if (!is_distinct_tuple(x_tuple) || !is_distinct_tuple(y_tuple))
    throw std::invalid_argument("pf_twirl_closed_form: tuples must be distinct");
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("pf_twirl_closed_form: dimension overflow");

  Matrix out = Matrix::Zero(dim, dim);
  auto sigma = locate_sigma(x_tuple, y_tuple);
  if (sigma.empty()) return out;

  double tr_lambda = 1.0;
  for (int i = 0; i < t; ++i) tr_lambda *= static_cast<double>(d - i);
  auto inv = symgroup::inverse(sigma);
  std::vector<int> row(t);
  for (const auto& b : distinct_tuples(d, t)) {
    for (int i = 0; i < t; ++i) row[i] = b[inv[i]];  // (R_sigma b)_i = b_{sigma^-1(i)}
    out(tuple_to_index(row, d), tuple_to_index(b, d)) = 1.0 / tr_lambda;
  }
  return out;
}

Matrix pf_twirl_distinct(const Matrix& x, int d, int t, double support_tol) {
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("pf_twirl_distinct: dimension overflow");
  if (x.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("pf_twirl_distinct: operator must be d^t square");

  std::vector<char> distinct(dim);
  std::vector<std::vector<int>> tuples(dim);
  for (long long i = 0; i < dim; ++i) {
    tuples[i] = index_to_tuple(i, d, t);
    distinct[i] = is_distinct_tuple(tuples[i]) ? 1 : 0;
  }
  for (long long r = 0; r < dim; ++r)
    for (long long c = 0; c < dim; ++c)
      if ((!distinct[r] || !distinct[c]) && std::abs(x(r, c)) > support_tol)
        throw std::invalid_argument(
            "pf_twirl_distinct: operator not supported on the distinct subspace");

  // accumulate total coefficient per rearrangement sigma
  std::map<std::vector<int>, Complex> coeffs;
  for (long long r = 0; r < dim; ++r) {
    if (!distinct[r]) continue;
    for (long long c = 0; c < dim; ++c) {
      if (!distinct[c] || x(r, c) == Complex(0.0, 0.0)) continue;
      auto sigma = locate_sigma(tuples[r], tuples[c]);
      if (sigma.empty()) continue;  // phase average kills the term
      coeffs[sigma] += x(r, c);
    }
  }

  double tr_lambda = 1.0;
  for (int i = 0; i < t; ++i) tr_lambda *= static_cast<double>(d - i);
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<int> row(t);
  for (const auto& [sigma, coeff] : coeffs) {
    auto inv = symgroup::inverse(sigma);
    Complex w = coeff / tr_lambda;
    for (long long b = 0; b < dim; ++b) {
      if (!distinct[b]) continue;
      for (int i = 0; i < t; ++i) row[i] = tuples[b][inv[i]];
      out(tuple_to_index(row, d), b) += w;
    }
  }
  return out;
}

double DistinctData::relative_error() const {
  double eps = 0.0;
  for (double def : deficiency) {
    if (def >= 1.0)
      throw std::runtime_error("relative_error: a block has deficiency 1 (empty)");
    eps = std::max(eps, 1.0 / (1.0 - def) - 1.0);
  }
  return eps;
}

DistinctData distinct_data(int d, int t) {
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("distinct_data: dimension overflow");

  DistinctData dd;
  dd.d = d;
  dd.t = t;
  Matrix lam = distinct_projector(d, t);
  dd.trace = lam.real().trace();
  double expect = 1.0;
  for (int i = 0; i < t; ++i) expect *= static_cast<double>(d - i);
  if (std::abs(dd.trace - expect) > 1e-9)
    throw std::runtime_error("distinct_data: Tr[Lambda] != d!/(d-t)!");

  dd.parts = symgroup::partitions(t);
  const double tfact = static_cast<double>(symgroup::factorial(t));
  for (const auto& lambda : dd.parts) {
    auto blk = symgroup::isotypic_projector(lambda, d);
    double btr = 0.0;
    for (long long i = 0; i < dim; ++i)
      if (lam(i, i).real() > 0.5) btr += blk.projector.mat()(i, i).real();
    dd.block_traces.push_back(btr);

    // cross-check: Tr[Lambda 1_lambda] * t! = dim(V_lambda)^2 * Tr[Lambda]
    double expected = static_cast<double>(blk.specht_dim) *
                      static_cast<double>(blk.specht_dim) * dd.trace / tfact;
    if (std::abs(btr - expected) > 1e-6 * std::max(1.0, std::abs(expected)))
      throw std::runtime_error("distinct_data: block trace violates closed form");

    double weyl_block_tr = btr / static_cast<double>(blk.specht_dim);
    double def = 1.0 - weyl_block_tr / static_cast<double>(blk.weyl_dim);
    dd.deficiency.push_back(def);
    dd.max_deficiency = std::max(dd.max_deficiency, def);
  }
  std::vector<int> dims(t, d);
  dd.projector = ComplexOperator(std::move(lam), dims, dims);
  return dd;
}

Matrix superoperator_matrix(const ChannelFn& c, int dim) {
  const long long d2 = static_cast<long long>(dim) * dim;
  if (d2 > 4096) throw std::invalid_argument("superoperator_matrix: dimension overflow");
  Matrix s(d2, d2);
  Matrix unit = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      unit(a, b) = 1.0;
      Matrix y = c(unit);
      unit(a, b) = 0.0;
      const long long col = static_cast<long long>(a) * dim + b;
      for (int r = 0; r < dim; ++r)
        for (int cc = 0; cc < dim; ++cc)
          s(static_cast<long long>(r) * dim + cc, col) = y(r, cc);
    }
  return s;
}

Matrix extended_channel(const ChannelFn& c, const Matrix& rho, int dim_a, int dim_e) {
  const long long dim = static_cast<long long>(dim_a) * dim_e;
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("extended_channel: dimension mismatch");
  Matrix out = Matrix::Zero(dim, dim);
  Matrix block(dim_a, dim_a);
  for (int e1 = 0; e1 < dim_e; ++e1)
    for (int e2 = 0; e2 < dim_e; ++e2) {
      for (int a1 = 0; a1 < dim_a; ++a1)
        for (int a2 = 0; a2 < dim_a; ++a2)
          block(a1, a2) = rho(static_cast<long long>(a1) * dim_e + e1,
                              static_cast<long long>(a2) * dim_e + e2);
      Matrix y = c(block);
      for (int a1 = 0; a1 < dim_a; ++a1)
        for (int a2 = 0; a2 < dim_a; ++a2)
          out(static_cast<long long>(a1) * dim_e + e1,
              static_cast<long long>(a2) * dim_e + e2) = y(a1, a2);
    }
  return out;
}

AmplificationCheck amplification_identity_check(const ensembles::UnitaryEnsemble& e,
                                                int t, int m, double budget) {
  if (e.dim_in != e.dim_out)
    throw std::invalid_argument("amplification_identity_check: requires a unitary ensemble");
  const int d = e.dim_in;
  const long long dim = ipow(d, t);
  if (dim * dim > 4096)
    throw std::invalid_argument("amplification_identity_check: superoperator overflow");

  Matrix sx = superoperator_matrix(
      [&](const Matrix& x) { return twirl_exact_enum(e, t, x, budget); },
      static_cast<int>(dim));
  Matrix sh = superoperator_matrix(
      [&](const Matrix& x) { return symgroup::haar_twirl_exact(x, d, t); },
      static_cast<int>(dim));

  auto power = [](const Matrix& a, int k) {
    Matrix r = Matrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
  };
  Matrix diff = sx - sh;
  Matrix lhs = power(diff, m);
  Matrix rhs = power(sx, m) - sh;

  AmplificationCheck chk;
  chk.residual = (lhs - rhs).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Matrix> svd1(diff);
  Eigen::JacobiSVD<Matrix> svd2(lhs);
  chk.diff_norm = svd1.singularValues()(0);
  chk.diff_power_norm = svd2.singularValues()(0);
  chk.pass = chk.residual <= 1e-10;
  return chk;
}

}  // namespace pfclab::moments
