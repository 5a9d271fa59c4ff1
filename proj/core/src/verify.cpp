// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pfclab/clifford.hpp"
#include "pfclab/rng.hpp"
#include "pfclab/symgroup.hpp"

namespace pfclab::verify {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

CVector random_state(int dim, Rng& rng) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return v / v.norm();
}

Matrix random_ginibre(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return g;
}

/// full trace norm ||a - b||_1 of a difference of Hermitian operators
double herm_diff_trace_norm(const Matrix& a, const Matrix& b) {
  Matrix diff = a - b;
  Matrix sym = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  return 0.5 * herm_diff_trace_norm(a, b);
}

struct MatrixWelford {
  Matrix mean;
  Eigen::MatrixXd m2;
  uint64_t count = 0;

  void init(long long rows, long long cols) {
    mean = Matrix::Zero(rows, cols);
    m2 = Eigen::MatrixXd::Zero(rows, cols);
  }
  void add(const Matrix& x) {
    ++count;
    Matrix delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta.conjugate().cwiseProduct(x - mean).real();
  }
  double max_stderr() const {
    if (count < 2) return 0.0;
    double denom = static_cast<double>(count) * static_cast<double>(count - 1);
    return std::sqrt(m2.maxCoeff() / denom);
  }
};

struct ScalarWelford {
  double mean = 0.0, m2 = 0.0;
  uint64_t count = 0;
  void add(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double stderr_mean() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / (static_cast<double>(count) * static_cast<double>(count - 1)));
  }
};

// distinct-supported random operator Lambda G Lambda (not normalised)
Matrix random_distinct_operator(int d, int t, Rng& rng) {
  const long long dim = ipow(d, t);
  Matrix lam = moments::distinct_projector(d, t);
  return lam * random_ginibre(static_cast<int>(dim), rng) * lam;
}

// distinct-supported random density operator
Matrix random_distinct_state(int d, int t, Rng& rng) {
  Matrix g = random_distinct_operator(d, t, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// apply a D x D operator to register `reg` of `nregs` D-dimensional registers
CVector apply_on_register(const CVector& v, const Matrix& op, int reg, int nregs, int D) {
  const long long dim = v.size();
  const long long stride = ipow(D, nregs - 1 - reg);
  const long long block = stride * D;
  CVector out = CVector::Zero(dim);
  for (long long base = 0; base < dim; base += block)
    for (long long off = 0; off < stride; ++off)
      for (int r = 0; r < D; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < D; ++c) acc += op(r, c) * v(base + off + stride * c);
        out(base + off + stride * r) = acc;
      }
  return out;
}

Matrix kron_mats(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

// --- adaptive-query harness ---

long long AdaptiveCircuit::workspace_dim() const {
  return static_cast<long long>(1 << (n - s)) * dim_r * ipow(1 << s, t);
}

void AdaptiveCircuit::check() const {
  if (s <= 0 || s >= n) throw std::invalid_argument("AdaptiveCircuit: requires 0 < s < n");
  if (t < 1) throw std::invalid_argument("AdaptiveCircuit: t must be >= 1");
  const long long dim = workspace_dim();
  if (dim > 4096) throw std::invalid_argument("AdaptiveCircuit: workspace overflow");
  if (static_cast<int>(steps.size()) != t)
    throw std::invalid_argument("AdaptiveCircuit: need exactly t interleaving unitaries");
  for (const auto& m : steps) {
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("AdaptiveCircuit: step dimension mismatch");
    if ((m.adjoint() * m - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kOpTol)
      throw std::invalid_argument("AdaptiveCircuit: step is not unitary");
  }
  const long long ar = static_cast<long long>(1 << (n - s)) * dim_r;
  if (a0.size() != ar) throw std::invalid_argument("AdaptiveCircuit: initial state dimension");
}

AdaptiveCircuit random_adaptive_circuit(int n, int s, int t, int dim_r, uint64_t seed) {
  AdaptiveCircuit c;
  c.n = n;
  c.s = s;
  c.t = t;
  c.dim_r = dim_r;
  const long long dim = c.workspace_dim();
  for (int i = 0; i < t; ++i)
    c.steps.push_back(ensembles::haar_unitary(static_cast<int>(dim), split_seed(seed, i)));
  Rng rng(split_seed(seed, 1000));
  c.a0 = random_state((1 << (n - s)) * dim_r, rng);
  c.check();
  return c;
}

double distinct_plus_weight(int s, int t, bool* degenerate) {
  const double ds = static_cast<double>(1 << s);
  if (degenerate) *degenerate = t > (1 << s);
  if (t > (1 << s)) return 0.0;
  double w = 1.0;
  for (int i = 0; i < t; ++i) w *= 1.0 - static_cast<double>(i) / ds;
  return w;
}

namespace {

// apply u (on the composite A,B_i of dim 2^n) to the workspace vector
CVector apply_query(const CVector& v, const Matrix& u, const AdaptiveCircuit& c, int query) {
  const int da = 1 << (c.n - c.s);
  const int db = 1 << c.s;
  const int du = da * db;
  const long long dim = v.size();
  const long long strideA = dim / da;                     // A is slowest
  const long long strideB = ipow(db, c.t - 1 - query);    // B_query stride
  CVector out = CVector::Zero(dim);
  CVector sub(du), res(du);
  // iterate over all coordinates with a = b_query = 0
  for (long long idx = 0; idx < dim; ++idx) {
    long long a = idx / strideA;
    if (a != 0) continue;
    long long bq = (idx / strideB) % db;
    if (bq != 0) continue;
    for (int ai = 0; ai < da; ++ai)
      for (int bi = 0; bi < db; ++bi)
        sub(ai * db + bi) = v(idx + ai * strideA + bi * strideB);
    res = u * sub;
    for (int ai = 0; ai < da; ++ai)
      for (int bi = 0; bi < db; ++bi)
        out(idx + ai * strideA + bi * strideB) = res(ai * db + bi);
  }
  return out;
}

}  // namespace

CVector adaptive_state(const AdaptiveCircuit& c, const Matrix& u, bool project_distinct) {
  const int db = 1 << c.s;
  const long long bdim = ipow(db, c.t);
  const int du = (1 << (c.n - c.s)) * db;
  if (u.rows() != du || u.cols() != du)
    throw std::invalid_argument("adaptive_state: query unitary must act on A,B_i");

  CVector bvec = CVector::Constant(bdim, 1.0 / std::sqrt(static_cast<double>(bdim)));
  if (project_distinct) {
    for (long long i = 0; i < bdim; ++i) {
      auto tup = moments::index_to_tuple(i, db, c.t);
      if (!moments::is_distinct_tuple(tup)) bvec(i) = 0.0;
    }
  }
  const long long ar = c.a0.size();
  CVector psi(ar * bdim);
  for (long long x = 0; x < ar; ++x)
    for (long long b = 0; b < bdim; ++b) psi(x * bdim + b) = c.a0(x) * bvec(b);

  for (int i = 0; i < c.t; ++i) {
    psi = apply_query(psi, u, c, i);
    psi = c.steps[i] * psi;
  }
  return psi;
}

// --- gate teleportation ---

TeleportSpec random_teleport_spec(int t, int D, int set_size, uint64_t seed) {
  if (t < 1 || D < 2) throw std::invalid_argument("random_teleport_spec: bad t or D");
  const long long tuples = ipow(D, t);
  if (set_size < 1 || set_size > tuples)
    throw std::invalid_argument("random_teleport_spec: bad set size");
  TeleportSpec spec;
  spec.t = t;
  spec.D = D;
  for (int i = 0; i < t; ++i) {
    spec.interleave.push_back(ensembles::haar_unitary(D, split_seed(seed, 2 * i)));
    spec.queries.push_back(ensembles::haar_unitary(D, split_seed(seed, 2 * i + 1)));
  }
  Rng rng(split_seed(seed, 999));
  spec.psi = random_state(D, rng);
  // sample set_size tuple indices without replacement
  std::vector<long long> all(tuples);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < set_size; ++i) {
    long long j = i + static_cast<long long>(rng.next_below(tuples - i));
    std::swap(all[i], all[j]);
    spec.S.push_back(moments::index_to_tuple(all[i], D, t));
  }
  return spec;
}

Matrix gate_teleport(const TeleportSpec& spec) {
  const int t = spec.t, D = spec.D;
  if (spec.S.empty()) throw std::invalid_argument("gate_teleport: S must be nonempty");
  const long long phi_dim = ipow(D, 2 * t);
  if (phi_dim * D > 100000) throw std::invalid_argument("gate_teleport: dimension overflow");

  // |Omega_S> on registers C_1 C_1' ... C_t C_t' (slowest first)
  CVector omega = CVector::Zero(phi_dim);
  for (const auto& x : spec.S) {
    long long idx = 0;
    for (int i = 0; i < t; ++i) idx = (idx * D + x[i]) * D + x[i];
    omega(idx) += 1.0;
  }
  // apply U_i on the primed registers (register 2i+1 of the 2t registers)
  for (int i = 0; i < t; ++i)
    omega = apply_on_register(omega, spec.queries[i], 2 * i + 1, 2 * t, D);

  // total pure input |psi>_{C_0} (x) |phi>
  CVector w(phi_dim * D);
  for (int i0 = 0; i0 < D; ++i0)
    for (long long p = 0; p < phi_dim; ++p) w(i0 * phi_dim + p) = spec.psi(i0) * omega(p);

  // sandwich operator L: <Omega|_{C0 C1} (x)_{i<t} <Omega|(A_i (x) I)_{C_i' C_{i+1}}
  // (x) (A_t)_{C_t'}
  Matrix bra0 = Matrix::Zero(1, static_cast<long long>(D) * D);
  for (int i = 0; i < D; ++i) bra0(0, static_cast<long long>(i) * D + i) = 1.0;
  Matrix L = bra0;
  for (int i = 0; i + 1 < t; ++i) {
    Matrix bra = Matrix::Zero(1, static_cast<long long>(D) * D);
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k)
        bra(0, static_cast<long long>(j) * D + k) = spec.interleave[i](k, j);
    L = kron_mats(L, bra);
  }
  L = kron_mats(L, spec.interleave[t - 1]);

  CVector out = L * w;
  return out * out.adjoint();
}

Matrix teleport_reference(const TeleportSpec& spec) {
  const int t = spec.t, D = spec.D;
  CVector acc = CVector::Zero(D);
  for (const auto& x : spec.S) {
    CVector v = spec.psi;
    for (int i = 0; i < t; ++i) {
      Complex amp = v(x[i]);
      v = CVector::Zero(D);
      v(x[i]) = amp;
      v = spec.interleave[i] * (spec.queries[i] * v);
    }
    acc += v;
  }
  return acc * acc.adjoint();
}

double verify_teleport_identity(const TeleportSpec& spec) {
  return (gate_teleport(spec) - teleport_reference(spec)).cwiseAbs().maxCoeff();
}

// --- named experiments ---

ExperimentReport run_pf_closed_form(int d, int t) {
  ExperimentReport rep;
  rep.experiment = "pf-closed-form";
  rep.param("d", d);
  rep.param("t", t);

  auto e = ensembles::pf_ensemble(d);
  auto tuples = moments::distinct_tuples(d, t);
  const long long dim = ipow(d, t);
  auto P = kwise::exact_twise_perm(d);
  auto mu = moments::uniform_phase_average();

  double res_enum = 0.0, res_mask = 0.0;
  for (const auto& x : tuples)
    for (const auto& y : tuples) {
      Matrix unit = Matrix::Zero(dim, dim);
      unit(moments::tuple_to_index(x, d), moments::tuple_to_index(y, d)) = 1.0;
      Matrix closed = moments::pf_twirl_closed_form(x, y, d, t);
      Matrix via_enum = moments::twirl_exact_enum(e, t, unit, 1e10);
      Matrix via_mask = moments::pf_twirl_mask(unit, d, t, mu, P, 1e10);
      res_enum = std::max(res_enum, (via_enum - closed).cwiseAbs().maxCoeff());
      res_mask = std::max(res_mask, (via_mask - closed).cwiseAbs().maxCoeff());
    }
  rep.value("basis_pairs", static_cast<double>(tuples.size() * tuples.size()));
  rep.value("max_residual_enum_vs_closed", res_enum);
  rep.value("max_residual_mask_vs_closed", res_mask);
  rep.pass = res_enum <= 1e-12 && res_mask <= 1e-12;
  return rep;
}

ExperimentReport run_kwise_substitution(int d, int t, int trials, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "kwise-substitution";
  rep.param("d", d);
  rep.param("t", t);
  rep.param("trials", trials);
  rep.seed = seed;

  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw std::invalid_argument("kwise-substitution: d must be a power of 2");
  auto fam = kwise::kwise_poly_family(n, 2 * t);
  auto mu_full = moments::uniform_phase_average();
  auto mu_fam = moments::family_phase_average(fam);
  auto P = kwise::exact_twise_perm(d);

  double res_sub = 0.0, res_closed = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, trial));
    Matrix x = random_distinct_operator(d, t, rng);
    Matrix full = moments::pf_twirl_mask(x, d, t, mu_full, P, 1e10);
    Matrix sub = moments::pf_twirl_mask(x, d, t, mu_fam, P, 1e10);
    Matrix closed = moments::pf_twirl_distinct(x, d, t);
    res_sub = std::max(res_sub, (full - sub).cwiseAbs().maxCoeff());
    res_closed = std::max(res_closed, (full - closed).cwiseAbs().maxCoeff());
  }
  rep.value("phase_family_order", 2 * t);
  rep.value("max_residual_substitution", res_sub);
  rep.value("max_residual_closed_form", res_closed);
  rep.pass = res_sub <= 1e-12 && res_closed <= 1e-10;
  return rep;
}

ExperimentReport run_distinct_data(int d, int t, int trials, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "distinct-data";
  rep.param("d", d);
  rep.param("t", t);
  rep.param("trials", trials);
  rep.seed = seed;

  auto dd = moments::distinct_data(d, t);
  rep.value("trace", dd.trace);
  double formula_res = 0.0;
  for (size_t i = 0; i < dd.parts.size(); ++i) {
    rep.value("block_trace" + dd.parts[i].str(), dd.block_traces[i]);
    rep.value("deficiency" + dd.parts[i].str(), dd.deficiency[i]);
    // closed form: deficiency = 1 - Tr[Lambda] / prod_{(i,j)} (d + j - i)
    double prod = 1.0;
    for (size_t r = 0; r < dd.parts[i].rows.size(); ++r)
      for (int c = 0; c < dd.parts[i].rows[r]; ++c)
        prod *= static_cast<double>(d + c - static_cast<int>(r));
    formula_res = std::max(formula_res, std::abs(dd.deficiency[i] - (1.0 - dd.trace / prod)));
  }
  rep.value("max_deficiency", dd.max_deficiency);
  rep.value("relative_error", dd.relative_error());
  rep.value("deficiency_formula_residual", formula_res);

  // distance between the exact Haar and P F twirls on random distinct states
  double worst = 0.0;
  const double bound = 2.0 * dd.max_deficiency;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, trial));
    Matrix phi = random_distinct_state(d, t, rng);
    Matrix mh = symgroup::haar_twirl_exact(phi, d, t);
    Matrix mp = moments::pf_twirl_distinct(phi, d, t, 1e-9);
    worst = std::max(worst, herm_diff_trace_norm(mh, mp));
  }
  rep.value("max_twirl_distance", worst);
  rep.value("twirl_distance_bound", bound);
  rep.pass = formula_res <= 1e-12 && worst <= bound + 1e-8;
  return rep;
}

ExperimentReport run_design_error(int n, int t, uint64_t samples, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "design-error";
  rep.param("n", n);
  rep.param("t", t);
  rep.param("samples", static_cast<long long>(samples));
  rep.seed = seed;

  const int d = 1 << n;
  const long long dim_a = ipow(d, t);
  const long long dim_e = dim_a;
  auto e = ensembles::pfc_ensemble(n);
  auto dd = moments::distinct_data(d, t);
  const double bound =
      2.0 * std::sqrt(static_cast<double>(t) * (t - 1) / (d + 1.0)) + 2.0 * dd.max_deficiency;
  rep.value("assembled_bound", bound);
  rep.note("diamond-norm lower bound from probe maximization only");

  // probes as dim_a x dim_e amplitude matrices
  std::vector<Matrix> probes;
  {
    Matrix omega = Matrix::Identity(dim_a, dim_e) / std::sqrt(static_cast<double>(dim_a));
    probes.push_back(omega);
    Rng rng(split_seed(seed, 77));
    CVector v = random_state(static_cast<int>(dim_a * dim_e), rng);
    Matrix purified(dim_a, dim_e);
    for (long long a = 0; a < dim_a; ++a)
      for (long long ee = 0; ee < dim_e; ++ee) purified(a, ee) = v(a * dim_e + ee);
    probes.push_back(purified);
  }

  double worst = 0.0, worst_stderr = 0.0;
  int pidx = 0;
  for (const auto& phi : probes) {
    MatrixWelford acc;
    acc.init(dim_a * dim_e, dim_a * dim_e);
    for (uint64_t k = 0; k < samples; ++k) {
      Matrix u = e.sampler(split_seed(split_seed(seed, pidx), k));
      Matrix w = moments::kron_power(u, t) * phi;  // (U^{(x)t} (x) I)|phi>
      CVector wv(dim_a * dim_e);
      for (long long a = 0; a < dim_a; ++a)
        for (long long ee = 0; ee < dim_e; ++ee) wv(a * dim_e + ee) = w(a, ee);
      acc.add(wv * wv.adjoint());
    }
    CVector pv(dim_a * dim_e);
    for (long long a = 0; a < dim_a; ++a)
      for (long long ee = 0; ee < dim_e; ++ee) pv(a * dim_e + ee) = phi(a, ee);
    Matrix haar = moments::extended_channel(
        [&](const Matrix& x) { return symgroup::haar_twirl_exact(x, d, t); },
        pv * pv.adjoint(), static_cast<int>(dim_a), static_cast<int>(dim_e));
    double val = trace_distance(acc.mean, haar);
    rep.value("probe" + std::to_string(pidx) + "_distance", val);
    rep.value("probe" + std::to_string(pidx) + "_stderr", acc.max_stderr());
    worst = std::max(worst, val);
    worst_stderr = std::max(worst_stderr, acc.max_stderr());
    ++pidx;
  }
  double slack = 3.0 * worst_stderr * static_cast<double>(dim_a * dim_e);
  rep.value("max_distance", worst);
  rep.value("mc_slack", slack);
  rep.pass = worst <= bound + slack;
  return rep;
}

ExperimentReport run_clifford_overlap(int n, int t, uint64_t samples, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "clifford-overlap";
  rep.param("n", n);
  rep.param("t", t);
  rep.param("samples", static_cast<long long>(samples));
  rep.seed = seed;

  const int d = 1 << n;
  const long long dim = ipow(d, t);
  const double bound = 1.0 - static_cast<double>(t) * (t - 1) / (d + 1.0);
  rep.value("overlap_bound", bound);

  Matrix lam = moments::distinct_projector(d, t);

  // probe library: repeated basis state, repeated random product state,
  // uniform superposition, random entangled state, a distinct basis state
  std::vector<CVector> probes;
  {
    CVector b0 = CVector::Zero(dim);
    b0(0) = 1.0;  // |0,...,0>, maximally colliding
    probes.push_back(b0);
    Rng rng(split_seed(seed, 1));
    CVector single = random_state(d, rng);
    CVector rep_state = CVector::Ones(1);
    for (int i = 0; i < t; ++i) {
      CVector next(rep_state.size() * d);
      for (long long a = 0; a < rep_state.size(); ++a)
        for (int b = 0; b < d; ++b) next(a * d + b) = rep_state(a) * single(b);
      rep_state = next;
    }
    probes.push_back(rep_state);
    probes.push_back(CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
    probes.push_back(random_state(static_cast<int>(dim), rng));
    CVector bd = CVector::Zero(dim);
    auto tuples = moments::distinct_tuples(d, t);
    bd(moments::tuple_to_index(tuples[0], d)) = 1.0;
    probes.push_back(bd);
  }

  bool pass = true;
  for (size_t p = 0; p < probes.size(); ++p) {
    ScalarWelford acc;
    for (uint64_t k = 0; k < samples; ++k) {
      Matrix c = clifford::sample_clifford(n, split_seed(split_seed(seed, p), k));
      CVector w = moments::kron_power(c, t) * probes[p];
      acc.add((w.adjoint() * lam * w)(0, 0).real());
    }
    rep.value("probe" + std::to_string(p) + "_overlap", acc.mean);
    rep.value("probe" + std::to_string(p) + "_stderr", acc.stderr_mean());
    if (acc.mean < bound - 3.0 * acc.stderr_mean()) pass = false;
  }

  // single-qubit group is an exact 2-design: enumerated twirl matches Haar
  double res_design = 0.0;
  {
    const auto& group = clifford::single_qubit_cliffords();
    Matrix unit = Matrix::Zero(4, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        unit(a, b) = 1.0;
        Matrix acc2 = Matrix::Zero(4, 4);
        for (const auto& c : group) acc2 += moments::conjugate_term(c, unit, 2);
        acc2 /= static_cast<double>(group.size());
        Matrix haar = symgroup::haar_twirl_exact(unit, 2, 2);
        res_design = std::max(res_design, (acc2 - haar).cwiseAbs().maxCoeff());
        unit(a, b) = 0.0;
      }
  }
  rep.value("single_qubit_design_residual", res_design);
  rep.pass = pass && res_design <= 1e-10;
  return rep;
}

ExperimentReport run_relative_error(int d, int t, int trials, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "relative-error";
  rep.param("d", d);
  rep.param("t", t);
  rep.param("trials", trials);
  rep.seed = seed;

  auto dd = moments::distinct_data(d, t);
  const double eps = dd.relative_error();
  rep.value("relative_error", eps);

  double worst_min_eig = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, trial));
    Matrix phi = random_distinct_state(d, t, rng);
    Matrix lhs = (1.0 + eps) * symgroup::haar_twirl_exact(phi, d, t) -
                 moments::pf_twirl_distinct(phi, d, t, 1e-9);
    double me = min_eig_hermitian(lhs, 1e-8);
    worst_min_eig = std::min(worst_min_eig, me);
  }
  rep.value("min_eigenvalue", worst_min_eig);
  rep.pass = worst_min_eig >= -1e-8;
  return rep;
}

ExperimentReport run_amplification(int d, int t, int m) {
  ExperimentReport rep;
  rep.experiment = "amplification";
  rep.param("d", d);
  rep.param("t", t);
  rep.param("m", m);

  auto chk = moments::amplification_identity_check(ensembles::pf_ensemble(d), t, m);
  rep.value("max_residual", chk.residual);
  rep.value("difference_norm", chk.diff_norm);
  rep.value("difference_power_norm", chk.diff_power_norm);
  rep.pass = chk.pass;
  return rep;
}

ExperimentReport run_teleport(int trials, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "teleport";
  rep.param("trials", trials);
  rep.seed = seed;

  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, 5000 + trial));
    int t = 1 + static_cast<int>(rng.next_below(2));
    int D = (rng.next_u64() & 1) ? 2 : 4;
    long long tuples = ipow(D, t);
    int set_size = 1 + static_cast<int>(rng.next_below(tuples));
    auto spec = random_teleport_spec(t, D, set_size, split_seed(seed, trial));
    worst = std::max(worst, verify_teleport_identity(spec));
  }
  rep.value("max_residual", worst);
  rep.pass = worst <= 1e-10;
  return rep;
}

ExperimentReport run_pri_adaptive(int n, int s, int t, uint64_t samples, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "pri-adaptive";
  rep.param("n", n);
  rep.param("s", s);
  rep.param("t", t);
  rep.param("samples", static_cast<long long>(samples));
  rep.seed = seed;

  const int d = 1 << n;
  auto circuit = random_adaptive_circuit(n, s, t, 2, split_seed(seed, 0));
  const long long dim = circuit.workspace_dim();

  // exact collision-weight identity for a sampled query unitary
  bool degenerate = false;
  const double w = distinct_plus_weight(s, t, &degenerate);
  rep.value("collision_weight", w);
  if (degenerate) rep.note("t exceeds 2^s: distinct weight is zero");
  double id_res = 0.0;
  for (int k = 0; k < 3; ++k) {
    Matrix u = ensembles::pf_sample(d, split_seed(seed, 100 + k));
    CVector full = adaptive_state(circuit, u, false);
    CVector proj = adaptive_state(circuit, u, true);
    id_res = std::max(id_res, std::abs((full - proj).norm() - std::sqrt(1.0 - w)));
  }
  rep.value("collision_identity_residual", id_res);

  // Monte-Carlo adaptive distinguishing advantage: P F isometry vs Haar
  MatrixWelford acc_pf, acc_haar;
  acc_pf.init(dim, dim);
  acc_haar.init(dim, dim);
  for (uint64_t k = 0; k < samples; ++k) {
    Matrix upf = ensembles::pf_sample(d, split_seed(split_seed(seed, 1), k));
    Matrix uh = ensembles::haar_unitary(d, split_seed(split_seed(seed, 2), k));
    CVector vpf = adaptive_state(circuit, upf, false);
    CVector vh = adaptive_state(circuit, uh, false);
    acc_pf.add(vpf * vpf.adjoint());
    acc_haar.add(vh * vh.adjoint());
  }
  const double value = trace_distance(acc_pf.mean, acc_haar.mean);
  const double eps = moments::distinct_data(d, t).relative_error();
  const double leakage = 2.0 * std::sqrt(1.0 - w);
  const double slack =
      3.0 * (acc_pf.max_stderr() + acc_haar.max_stderr()) * static_cast<double>(dim);
  rep.value("measured_advantage", value);
  rep.value("leakage", leakage);
  rep.value("relative_error_term", 2.0 * eps);
  rep.value("mc_slack", slack);
  const double bound = leakage + 2.0 * eps + slack;
  rep.value("assembled_bound", bound);
  rep.pass = id_res <= 1e-10 && value <= bound;
  return rep;
}

ExperimentReport run_nonadaptive_pru(int n, int t, uint64_t samples, uint64_t seed) {
  ExperimentReport rep;
  rep.experiment = "nonadaptive-pru";
  rep.param("n", n);
  rep.param("t", t);
  rep.param("samples", static_cast<long long>(samples));
  rep.seed = seed;

  const int d = 1 << n;
  const long long dim_a = ipow(d, t);
  auto dd = moments::distinct_data(d, t);
  const double bound =
      2.0 * std::sqrt(static_cast<double>(t) * (t - 1) / (d + 1.0)) + 2.0 * dd.max_deficiency;
  rep.value("assembled_bound", bound);

  // maximally entangled probe against the sampled P F C ensemble
  Matrix omega = Matrix::Identity(dim_a, dim_a) / std::sqrt(static_cast<double>(dim_a));
  auto run_probe = [&](const ensembles::UnitaryEnsemble& e, uint64_t sub) {
    MatrixWelford acc;
    acc.init(dim_a * dim_a, dim_a * dim_a);
    for (uint64_t k = 0; k < samples; ++k) {
      Matrix u = e.sampler(split_seed(split_seed(seed, sub), k));
      Matrix w = moments::kron_power(u, t) * omega;
      CVector wv(dim_a * dim_a);
      for (long long a = 0; a < dim_a; ++a)
        for (long long ee = 0; ee < dim_a; ++ee) wv(a * dim_a + ee) = w(a, ee);
      acc.add(wv * wv.adjoint());
    }
    return acc;
  };

  auto acc_pfc = run_probe(ensembles::pfc_ensemble(n), 0);
  CVector ov(dim_a * dim_a);
  for (long long a = 0; a < dim_a; ++a)
    for (long long ee = 0; ee < dim_a; ++ee) ov(a * dim_a + ee) = omega(a, ee);
  Matrix haar = moments::extended_channel(
      [&](const Matrix& x) { return symgroup::haar_twirl_exact(x, d, t); },
      ov * ov.adjoint(), static_cast<int>(dim_a), static_cast<int>(dim_a));
  const double value = trace_distance(acc_pfc.mean, haar);
  const double slack =
      3.0 * acc_pfc.max_stderr() * static_cast<double>(dim_a * dim_a);
  rep.value("pfc_distance", value);
  rep.value("mc_slack", slack);

  // keyed-vs-random substitution gap (keyed components are NOT
  // cryptographically secure stand-ins; the gap is recorded, not bounded)
  if (n % 2 == 0) {
    auto acc_keyed = run_probe(ensembles::pfc_keyed_ensemble(n), 3);
    rep.value("keyed_vs_random_gap", trace_distance(acc_keyed.mean, acc_pfc.mean));
    rep.note("keyed components are NOT cryptographically secure stand-ins");
  } else {
    rep.note("keyed substitution skipped: Feistel stand-in needs even n");
  }

  // permutations alone fix the uniform superposition: distance stays large
  CVector plus = CVector::Constant(dim_a, 1.0 / std::sqrt(static_cast<double>(dim_a)));
  Matrix plus_rho = plus * plus.adjoint();
  Matrix perm_twirl =
      moments::twirl_exact_enum(ensembles::perm_ensemble(d), t, plus_rho, 1e10);
  double perm_value = trace_distance(perm_twirl, symgroup::haar_twirl_exact(plus_rho, d, t));
  rep.value("perm_only_distance", perm_value);

  rep.pass = value <= bound + slack && perm_value > 0.05;
  return rep;
}

ExperimentReport run_kwise_independence(int n, int k) {
  ExperimentReport rep;
  rep.experiment = "kwise-independence";
  rep.param("n", n);
  rep.param("k", k);

  if (n > 4) throw std::invalid_argument("kwise-independence: exhaustive check needs n <= 4");
  auto fam = kwise::kwise_poly_family(n, k);
  const int dsize = 1 << n;
  const uint64_t seeds = fam.seed_count();
  const uint64_t patterns = 1ULL << k;
  const uint64_t expect = seeds / patterns;

  bool uniform = true;
  long long worst_dev = 0;
  // every k-subset of inputs, via bitmask enumeration
  for (uint32_t mask = 0; mask < (1u << dsize); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<uint32_t> inputs;
    for (int x = 0; x < dsize; ++x)
      if (mask & (1u << x)) inputs.push_back(static_cast<uint32_t>(x));
    std::vector<uint64_t> counts(patterns, 0);
    for (uint64_t seed = 0; seed < seeds; ++seed) {
      uint64_t pat = 0;
      for (int i = 0; i < k; ++i)
        pat |= static_cast<uint64_t>(fam.eval(seed, inputs[i])) << i;
      counts[pat]++;
    }
    for (uint64_t c : counts) {
      long long dev = std::llabs(static_cast<long long>(c) - static_cast<long long>(expect));
      worst_dev = std::max(worst_dev, dev);
      if (c != expect) uniform = false;
    }
  }
  rep.value("exact_count_per_pattern", static_cast<double>(expect));
  rep.value("max_count_deviation", static_cast<double>(worst_dev));

  double delta = kwise::kwise_perm_delta(kwise::exact_twise_perm(4), 2);
  rep.value("uniform_perm_delta", delta);
  rep.pass = uniform && delta == 0.0;
  return rep;
}

namespace {

int or_default(int v, int def) { return v > 0 ? v : def; }
long long or_default_ll(long long v, long long def) { return v > 0 ? v : def; }

}  // namespace

std::vector<std::string> experiment_names() {
  return {"pf-closed-form", "distinct-data",  "design-error",
          "clifford-overlap", "kwise-substitution", "amplification",
          "relative-error", "teleport",       "pri-adaptive",
          "nonadaptive-pru", "kwise-independence"};
}

ExperimentReport run_experiment(const std::string& name, const ExperimentParams& p) {
  if (name == "pf-closed-form")
    return run_pf_closed_form(or_default(p.d, 4), or_default(p.t, 2));
  if (name == "kwise-substitution")
    return run_kwise_substitution(or_default(p.d, 8), or_default(p.t, 2),
                                  or_default(p.trials, 20), p.seed);
  if (name == "distinct-data")
    return run_distinct_data(or_default(p.d, 16), or_default(p.t, 2),
                             or_default(p.trials, 50), p.seed);
  if (name == "design-error")
    return run_design_error(or_default(p.n, 2), or_default(p.t, 2),
                            static_cast<uint64_t>(or_default_ll(p.samples, 2000)), p.seed);
  if (name == "clifford-overlap")
    return run_clifford_overlap(or_default(p.n, 2), or_default(p.t, 2),
                                static_cast<uint64_t>(or_default_ll(p.samples, 10000)),
                                p.seed);
  if (name == "relative-error")
    return run_relative_error(or_default(p.d, 16), or_default(p.t, 2),
                              or_default(p.trials, 50), p.seed);
  if (name == "amplification")
    return run_amplification(or_default(p.d, 2), or_default(p.t, 2), or_default(p.m, 2));
  if (name == "teleport") return run_teleport(or_default(p.trials, 100), p.seed);
  if (name == "pri-adaptive")
    return run_pri_adaptive(or_default(p.n, 3), or_default(p.s, 1), or_default(p.t, 2),
                            static_cast<uint64_t>(or_default_ll(p.samples, 1500)), p.seed);
  if (name == "nonadaptive-pru")
    return run_nonadaptive_pru(or_default(p.n, 2), or_default(p.t, 2),
                               static_cast<uint64_t>(or_default_ll(p.samples, 2000)),
                               p.seed);
  if (name == "kwise-independence")
    return run_kwise_independence(or_default(p.n, 3), or_default(p.k, 4));
  throw std::invalid_argument("unknown experiment: " + name);
}

std::vector<ExperimentReport> run_suite(const std::string& level, uint64_t seed,
                                        bool parallel) {
  if (level != "smoke" && level != "full")
    throw std::invalid_argument("run_suite: level must be 'smoke' or 'full'");
  std::vector<std::function<ExperimentReport()>> jobs;
  // exact-identity experiments at desk scale
  jobs.push_back([] { return run_pf_closed_form(4, 2); });
  jobs.push_back([=] { return run_kwise_substitution(4, 2, 5, split_seed(seed, 1)); });
  jobs.push_back([=] { return run_distinct_data(8, 2, 10, split_seed(seed, 2)); });
  jobs.push_back([=] { return run_relative_error(8, 2, 10, split_seed(seed, 3)); });
  jobs.push_back([] { return run_amplification(2, 2, 2); });
  jobs.push_back([=] { return run_teleport(20, split_seed(seed, 4)); });
  jobs.push_back([] { return run_kwise_independence(3, 4); });
  if (level == "full") {
    jobs.push_back([=] { return run_kwise_substitution(8, 2, 20, split_seed(seed, 5)); });
    jobs.push_back([=] { return run_distinct_data(16, 2, 50, split_seed(seed, 6)); });
    jobs.push_back([=] { return run_relative_error(16, 2, 50, split_seed(seed, 7)); });
    jobs.push_back([=] { return run_design_error(2, 2, 2000, split_seed(seed, 8)); });
    jobs.push_back([=] { return run_clifford_overlap(2, 2, 10000, split_seed(seed, 9)); });
    jobs.push_back([=] { return run_teleport(100, split_seed(seed, 10)); });
    jobs.push_back([=] { return run_pri_adaptive(3, 1, 2, 1500, split_seed(seed, 11)); });
    jobs.push_back([=] { return run_nonadaptive_pru(2, 2, 2000, split_seed(seed, 12)); });
  }

  std::vector<ExperimentReport> out;
  out.reserve(jobs.size());
  if (parallel) {
    // every job carries its own sub-seed, so results (and their order) are
    // identical to a sequential run
    std::vector<std::future<ExperimentReport>> futures;
    for (auto& job : jobs)
      futures.push_back(std::async(std::launch::async, std::move(job)));
    for (auto& f : futures) out.push_back(f.get());
  } else {
    for (auto& job : jobs) out.push_back(job());
  }
  return out;
}

}  // namespace pfclab::verify
