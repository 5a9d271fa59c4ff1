// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pfclab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Comparison tolerances used throughout: operator identities are checked to
// kOpTol, scalar identities to kScalarTol.
inline constexpr double kOpTol = 1e-10;
inline constexpr double kScalarTol = 1e-12;

/// Dense complex operator between composite registers. The row space is a
/// tensor product of registers with dimensions dims_out, the column space of
/// registers with dimensions dims_in (row-major / big-endian factor order:
/// the first register is the slowest-varying index).
class ComplexOperator {
 public:
  ComplexOperator() = default;
  ComplexOperator(Matrix m, std::vector<int> dims_out, std::vector<int> dims_in);

  // Square operator with a single register of dimension m.rows().
  explicit ComplexOperator(Matrix m);

  const Matrix& mat() const { return mat_; }
  Matrix& mat() { return mat_; }
  const std::vector<int>& dims_out() const { return dims_out_; }
  const std::vector<int>& dims_in() const { return dims_in_; }

  int rows() const { return static_cast<int>(mat_.rows()); }
  int cols() const { return static_cast<int>(mat_.cols()); }
  bool is_square() const { return mat_.rows() == mat_.cols(); }

  bool is_isometry(double tol = kOpTol) const;
  bool is_hermitian(double tol = kOpTol) const;

  static ComplexOperator identity(const std::vector<int>& dims);

 private:
  Matrix mat_;
  std::vector<int> dims_out_;
  std::vector<int> dims_in_;
};

ComplexOperator kron(const ComplexOperator& a, const ComplexOperator& b);

/// Trace over all registers not listed in `keep` (indices into the layout,
/// ascending order of appearance preserved for the kept registers).
ComplexOperator partial_trace(const ComplexOperator& x, const std::vector<int>& keep);

// Matrix-level variant: layout given explicitly, same on both sides.
Matrix partial_trace(const Matrix& x, const std::vector<int>& dims,
                     const std::vector<int>& keep);

double trace_norm(const Matrix& x);
inline double trace_norm(const ComplexOperator& x) { return trace_norm(x.mat()); }

/// Smallest eigenvalue of a Hermitian matrix. The input is symmetrized
/// before solving; inputs whose asymmetry residual max|x - x^dag| exceeds
/// `tol` are rejected. The residual is reported through `asym_out` if given.
double min_eig_hermitian(const Matrix& x, double tol = kOpTol,
                         double* asym_out = nullptr);

/// Extend an isometry (cols <= rows) to a unitary by completing its columns
/// to an orthonormal basis (deterministic: QR of [V | I]).
Matrix complete_isometry(const Matrix& v);

int product_dim(const std::vector<int>& dims);

// --- self-describing text dump, bit-exact round trip ---

void dump_operator(std::ostream& os, const ComplexOperator& op);
ComplexOperator load_operator(std::istream& is);
std::string dump_operator_string(const ComplexOperator& op);
ComplexOperator load_operator_string(const std::string& s);

// --- register states ---

/// Pure state or density operator over a named register layout.
struct RegisterState {
  std::vector<std::pair<std::string, int>> layout;
  CVector vec;    // pure state, empty if density
  Matrix dens;    // density operator, empty if pure
  bool normalized = false;

  bool is_pure() const { return vec.size() > 0; }
  int dim() const;
  Matrix density() const;  // |v><v| for pure states, dens otherwise
  void check(double pure_tol = kScalarTol, double dens_tol = kOpTol) const;

  static RegisterState pure(std::vector<std::pair<std::string, int>> layout,
                            CVector v, bool normalized = true);
  static RegisterState density_op(std::vector<std::pair<std::string, int>> layout,
                                  Matrix rho, bool normalized = true);
};

}  // namespace pfclab
