// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/tensor.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace pfclab {

int product_dim(const std::vector<int>& dims) {
  long long p = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("register dimension must be positive");
    p *= d;
    if (p > (1 << 20)) throw std::invalid_argument("register layout dimension overflow");
  }
  return static_cast<int>(p);
}

ComplexOperator::ComplexOperator(Matrix m, std::vector<int> dims_out,
                                 std::vector<int> dims_in)
    : mat_(std::move(m)), dims_out_(std::move(dims_out)), dims_in_(std::move(dims_in)) {
  if (product_dim(dims_out_) != mat_.rows() || product_dim(dims_in_) != mat_.cols())
    throw std::invalid_argument("operator shape inconsistent with register layout");
}

ComplexOperator::ComplexOperator(Matrix m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("single-register constructor requires a square matrix");
  dims_out_ = {static_cast<int>(m.rows())};
  dims_in_ = dims_out_;
  mat_ = std::move(m);
}

bool ComplexOperator::is_isometry(double tol) const {
  Matrix g = mat_.adjoint() * mat_;
  g -= Matrix::Identity(cols(), cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

bool ComplexOperator::is_hermitian(double tol) const {
  if (!is_square()) return false;
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexOperator ComplexOperator::identity(const std::vector<int>& dims) {
  int n = product_dim(dims);
  return ComplexOperator(Matrix::Identity(n, n), dims, dims);
}

ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a.mat()(i, j) * b.mat();
  std::vector<int> dout = a.dims_out(), din = a.dims_in();
  dout.insert(dout.end(), b.dims_out().begin(), b.dims_out().end());
  din.insert(din.end(), b.dims_in().begin(), b.dims_in().end());
  return ComplexOperator(std::move(m), std::move(dout), std::move(din));
}

Matrix partial_trace(const Matrix& x, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (x.rows() != x.cols() || product_dim(dims) != x.rows())
    throw std::invalid_argument("partial_trace: layout inconsistent with operator");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: register index out of range");
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate register index");
    kept[k] = true;
  }

  // strides for row-major composite index
  std::vector<long long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  long long dim_keep = 1, dim_tr = 1;
  std::vector<int> keep_regs, tr_regs;
  for (int i = 0; i < n; ++i)
    (kept[i] ? keep_regs : tr_regs).push_back(i);
  for (int i : keep_regs) dim_keep *= dims[i];
  for (int i : tr_regs) dim_tr *= dims[i];

  auto expand = [&](long long idx, const std::vector<int>& regs) {
    // map a compact row-major index over `regs` to the full composite index
    long long full = 0;
    for (int pos = static_cast<int>(regs.size()) - 1; pos >= 0; --pos) {
      int r = regs[pos];
      full += (idx % dims[r]) * stride[r];
      idx /= dims[r];
    }
    return full;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (long long a = 0; a < dim_keep; ++a) {
    long long fa = expand(a, keep_regs);
    for (long long b = 0; b < dim_keep; ++b) {
      long long fb = expand(b, keep_regs);
      Complex s = 0.0;
      for (long long c = 0; c < dim_tr; ++c) {
        long long fc = expand(c, tr_regs);
        s += x(fa + fc, fb + fc);
      }
      out(a, b) = s;
    }
  }
  return out;
}

ComplexOperator partial_trace(const ComplexOperator& x, const std::vector<int>& keep) {
  if (!x.is_square() || x.dims_out() != x.dims_in())
    throw std::invalid_argument("partial_trace requires a square operator with equal layouts");
  Matrix out = partial_trace(x.mat(), x.dims_out(), keep);
  std::vector<int> kd;
  std::vector<int> sorted_keep = keep;
  std::sort(sorted_keep.begin(), sorted_keep.end());
  for (int k : sorted_keep) kd.push_back(x.dims_out()[k]);
  if (kd.empty()) kd = {1};
  return ComplexOperator(std::move(out), kd, kd);
}

double trace_norm(const Matrix& x) {
  if (x.rows() != x.cols())
    throw std::invalid_argument("trace_norm requires a square matrix");
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double min_eig_hermitian(const Matrix& x, double tol, double* asym_out) {
  if (x.rows() != x.cols())
    throw std::invalid_argument("min_eig_hermitian requires a square matrix");
  double asym = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (asym_out) *asym_out = asym;
  if (asym > tol)
    throw std::invalid_argument("min_eig_hermitian: input not Hermitian within tolerance");
  Matrix h = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix complete_isometry(const Matrix& v) {
  const int rows = static_cast<int>(v.rows());
  const int cols = static_cast<int>(v.cols());
  if (cols > rows) throw std::invalid_argument("complete_isometry: more columns than rows");
  Matrix u(rows, rows);
  u.leftCols(cols) = v;
  int filled = cols;
  for (int e = 0; e < rows && filled < rows; ++e) {
    CVector cand = CVector::Zero(rows);
    cand(e) = 1.0;
    for (int j = 0; j < filled; ++j) cand -= (u.col(j).adjoint() * cand)(0) * u.col(j);
    double nrm = cand.norm();
    if (nrm > 1e-8) {
      // re-orthogonalize once for numerical safety
      for (int j = 0; j < filled; ++j) cand -= (u.col(j).adjoint() * cand)(0) * u.col(j);
      u.col(filled++) = cand / cand.norm();
    }
  }
  if (filled != rows) throw std::runtime_error("complete_isometry: completion failed");
  return u;
}

// --- dump format ---

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void dump_operator(std::ostream& os, const ComplexOperator& op) {
  os << "pfclab-operator v1\n";
  os << "dims_out";
  for (int d : op.dims_out()) os << ' ' << d;
  os << "\ndims_in";
  for (int d : op.dims_in()) os << ' ' << d;
  os << "\nentries\n";
  for (int i = 0; i < op.rows(); ++i)
    for (int j = 0; j < op.cols(); ++j)
      os << fmt_double(op.mat()(i, j).real()) << ' '
         << fmt_double(op.mat()(i, j).imag()) << '\n';
}

ComplexOperator load_operator(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "pfclab-operator v1")
    throw std::runtime_error("load_operator: bad header");
  auto read_dims = [&](const std::string& tag) {
    if (!std::getline(is, line)) throw std::runtime_error("load_operator: truncated");
    std::istringstream ss(line);
    std::string t;
    ss >> t;
    if (t != tag) throw std::runtime_error("load_operator: expected " + tag);
    std::vector<int> dims;
    int d;
    while (ss >> d) dims.push_back(d);
    if (dims.empty()) throw std::runtime_error("load_operator: empty " + tag);
    return dims;
  };
  std::vector<int> dout = read_dims("dims_out");
  std::vector<int> din = read_dims("dims_in");
  if (!std::getline(is, line) || line != "entries")
    throw std::runtime_error("load_operator: expected entries");
  int r = product_dim(dout), c = product_dim(din);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      double re, im;
      if (!(is >> re >> im)) throw std::runtime_error("load_operator: truncated entries");
      m(i, j) = Complex(re, im);
    }
  return ComplexOperator(std::move(m), std::move(dout), std::move(din));
}

std::string dump_operator_string(const ComplexOperator& op) {
  std::ostringstream ss;
  dump_operator(ss, op);
  return ss.str();
}

ComplexOperator load_operator_string(const std::string& s) {
  std::istringstream ss(s);
  return load_operator(ss);
}

// --- register states ---

int RegisterState::dim() const {
  long long p = 1;
  for (auto& [name, d] : layout) p *= d;
  return static_cast<int>(p);
}

Matrix RegisterState::density() const {
  if (is_pure()) return vec * vec.adjoint();
  return dens;
}

void RegisterState::check(double pure_tol, double dens_tol) const {
  if (is_pure()) {
    if (vec.size() != dim()) throw std::invalid_argument("state vector inconsistent with layout");
    if (normalized && std::abs(vec.norm() - 1.0) > pure_tol)
      throw std::invalid_argument("pure state not normalized");
  } else {
    if (dens.rows() != dim() || dens.cols() != dim())
      throw std::invalid_argument("density operator inconsistent with layout");
    if ((dens - dens.adjoint()).cwiseAbs().maxCoeff() > dens_tol)
      throw std::invalid_argument("density operator not Hermitian");
    Matrix h = 0.5 * (dens + dens.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -dens_tol)
      throw std::invalid_argument("density operator not positive semidefinite");
    if (normalized && std::abs(dens.trace().real() - 1.0) > dens_tol)
      throw std::invalid_argument("density operator trace not 1");
  }
}

RegisterState RegisterState::pure(std::vector<std::pair<std::string, int>> layout,
                                  CVector v, bool normalized) {
  RegisterState s;
  s.layout = std::move(layout);
  s.vec = std::move(v);
  s.normalized = normalized;
  s.check();
  return s;
}

RegisterState RegisterState::density_op(std::vector<std::pair<std::string, int>> layout,
                                        Matrix rho, bool normalized) {
  RegisterState s;
  s.layout = std::move(layout);
  s.dens = std::move(rho);
  s.normalized = normalized;
  s.check();
  return s;
}

}  // namespace pfclab
