// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pfclab/ensembles.hpp"
#include "pfclab/kwise.hpp"
#include "pfclab/symgroup.hpp"
#include "pfclab/tensor.hpp"

namespace pfclab::moments {

/// u^{(x) t}
Matrix kron_power(const Matrix& u, int t);

/// U^{(x) t} x U^{(x) t, dag} (works for isometries: x is dim_in^t square).
Matrix conjugate_term(const Matrix& u, const Matrix& x, int t);

struct McTwirl {
  Matrix mean;
  double max_stderr = 0.0;  // max over entries of the standard error of the mean
  uint64_t samples = 0;
};

/// Monte-Carlo t-th moment: empirical mean of V^{(x)t} x V^{(x)t,dag} with
/// per-entry Welford standard errors. Sub-sample seeds follow the seed-split
/// contract, so results are independent of evaluation order.
McTwirl twirl_mc(const ensembles::UnitaryEnsemble& e, int t, const Matrix& x,
                 uint64_t samples, uint64_t seed);

/// Exact average over an enumerable ensemble. Refuses when the scalar-op
/// estimate |e| * (d^t)^2 exceeds `budget`.
Matrix twirl_exact_enum(const ensembles::UnitaryEnsemble& e, int t, const Matrix& x,
                        double budget = 1e9);

// --- exact P F twirls ---

/// The average E_f (-1)^{sum_{v in odd} f(v)} of a phase family over the set
/// of values appearing an odd number of times in the combined input/output
/// tuples. For the uniform family this is 1 when the set is empty and 0
/// otherwise.
using PhaseAverage = std::function<double(const std::vector<int>& odd_values)>;

PhaseAverage uniform_phase_average();
/// Exhaustive average over all seeds of the family (memoized per odd-set).
PhaseAverage family_phase_average(const kwise::KWiseFunctionFamily& fam);

/// Exact t-th moment of the P F ensemble with P from the enumerable
/// distribution `P` and the phase average given analytically by `mu`:
/// entries (r, c) are scaled by mu(odd multiset of r,c values) and pushed
/// through every permutation. Exact for every input operator.
Matrix pf_twirl_mask(const Matrix& x, int d, int t, const PhaseAverage& mu,
                     const kwise::PermDistribution& P, double budget = 1e9);

/// Exact t-th moment of the uniform P F ensemble (d <= 8).
Matrix pf_twirl_exact(const Matrix& x, int d, int t);

/// Closed-form P F moment of |x_tuple><y_tuple| for distinct tuples:
/// Lambda R_sigma / Tr[Lambda] when y = x_sigma (y_i = x_{sigma(i)}),
/// zero when y is not a rearrangement of x.
Matrix pf_twirl_closed_form(const std::vector<int>& x_tuple,
                            const std::vector<int>& y_tuple, int d, int t);

/// Closed-form P F moment of an operator supported on distinct tuples
/// (entries outside the distinct block must vanish). Scales to d = 16, t = 2.
Matrix pf_twirl_distinct(const Matrix& x, int d, int t, double support_tol = kScalarTol);

// --- distinct subspace ---

bool is_distinct_tuple(const std::vector<int>& a);
std::vector<std::vector<int>> distinct_tuples(int d, int t);
std::vector<int> index_to_tuple(long long idx, int d, int t);
long long tuple_to_index(const std::vector<int>& a, int d);

/// Diagonal 0/1 projector onto the span of distinct tuples.
Matrix distinct_projector(int d, int t);

struct DistinctData {
  int d = 0, t = 0;
  ComplexOperator projector;
  double trace = 0.0;  // d!/(d-t)!
  std::vector<symgroup::Partition> parts;
  std::vector<double> block_traces;  // Tr[Lambda 1_{P_lambda}]
  std::vector<double> deficiency;    // 1 - Tr[Lambda^{(lambda)}]/dim(W_lambda)
  double max_deficiency = 0.0;
  /// max_lambda 1/(1 - deficiency) - 1: the one-sided relative design error.
  double relative_error() const;
};

/// Lambda with its per-block traces and deficiencies, cross-checked against
/// the closed forms Tr[Lambda] = d!/(d-t)! and
/// Tr[Lambda 1_{P_lambda}] * t! = dim(V_lambda)^2 * Tr[Lambda].
DistinctData distinct_data(int d, int t);

// --- superoperators ---

using ChannelFn = std::function<Matrix(const Matrix&)>;

/// dim^2 x dim^2 matrix of the channel over matrix units in row-major order;
/// multiplying it with the row-major vec(x) equals applying the channel.
Matrix superoperator_matrix(const ChannelFn& c, int dim);

/// Apply a channel acting on an A factor of dimension dim_a to an operator on
/// A (x) E (A slowest-varying).
Matrix extended_channel(const ChannelFn& c, const Matrix& rho, int dim_a, int dim_e);

struct AmplificationCheck {
  double residual = 0.0;        // max entrywise |(S_X - S_H)^m - (S_X^m - S_H)|
  double diff_norm = 0.0;       // ||S_X - S_H||_2
  double diff_power_norm = 0.0; // ||(S_X - S_H)^m||_2
  bool pass = false;
};

/// Verifies the moment-difference amplification identity
/// (M_X - M_Haar)^{o m} = M_X^{o m} - M_Haar on superoperator matrices.
AmplificationCheck amplification_identity_check(const ensembles::UnitaryEnsemble& e,
                                                int t, int m, double budget = 1e9);

}  // namespace pfclab::moments
