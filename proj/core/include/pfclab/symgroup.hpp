// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfclab/tensor.hpp"

namespace pfclab::symgroup {

/// Young diagram: weakly decreasing positive parts.
struct Partition {
  std::vector<int> rows;

  Partition() = default;
  Partition(std::initializer_list<int> r) : rows(r) { validate(); }
  explicit Partition(std::vector<int> r) : rows(std::move(r)) { validate(); }

  int sum() const;
  int num_rows() const { return static_cast<int>(rows.size()); }
  void validate() const;
  std::string str() const;  // e.g. "(2,1)"

  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const { return rows < o.rows; }
};

/// All partitions of t in reverse-lexicographic order: (t) first, (1,..,1) last.
std::vector<Partition> partitions(int t);

/// dim V_lambda via the hook-length formula.
long long specht_dim(const Partition& lambda);

/// dim W_lambda = dim(V_lambda)/t! * prod_{(i,j) in lambda} (d + j - i).
long long weyl_dim(const Partition& lambda, int d);

/// Character chi_lambda at a given cycle type, by Murnaghan-Nakayama
/// recursion (memoized per t).
long long character(const Partition& lambda, const Partition& cycle_type);

/// All elements of S_t in lexicographic one-line order; permutations are
/// 0-based vectors pi with pi[i] = image of i.
std::vector<std::vector<int>> all_permutations(int t);

std::vector<int> compose(const std::vector<int>& pi, const std::vector<int>& sigma);
std::vector<int> inverse(const std::vector<int>& pi);
Partition cycle_type(const std::vector<int>& pi);
int num_cycles(const std::vector<int>& pi);

/// The d^t x d^t operator permuting tensor factors: R_pi |a> = |a_{pi^-1}>,
/// i.e. component i of the image tuple is a_{pi^-1(i)}.
Matrix perm_rep(const std::vector<int>& pi, int d);

struct SchurBlock {
  Partition partition;
  long long weyl_dim = 0;
  long long specht_dim = 0;
  ComplexOperator projector;  // 1_{P_lambda} on (C^d)^{ot t}
};

/// Isotypic projector 1_{P_lambda} = dim(V_lambda)/t! sum_pi chi(pi^-1) R_pi,
/// cross-checked against Tr = weyl_dim * specht_dim.
SchurBlock isotypic_projector(const Partition& lambda, int d);

/// Exact t-wise Haar twirl E_U[U^{ot t} x U^{ot t,dag}], computed as the
/// Hilbert-Schmidt-orthogonal projection onto span{R_pi}. Requires d >= t so
/// that the Gram matrix G_{pi sigma} = d^{#cycles(pi sigma^-1)} is
/// well-conditioned; d < t is rejected.
Matrix haar_twirl_exact(const Matrix& x, int d, int t);

struct CharacterTable {
  int t = 0;
  std::vector<Partition> parts;                  // row = irrep label, column = cycle type
  std::vector<std::vector<long long>> values;    // values[row][col]

  std::string to_text() const;  // plain integer matrix, one row per line
};

CharacterTable character_table(int t);

/// Sizes of conjugacy classes of S_t, indexed like partitions(t).
std::vector<long long> conjugacy_class_sizes(int t);

long long factorial(int n);

}  // namespace pfclab::symgroup
