// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "pfclab/symgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

namespace pfclab::symgroup {

int Partition::sum() const {
  return std::accumulate(rows.begin(), rows.end(), 0);
}

void Partition::validate() const {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && rows[i] > rows[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

std::string Partition::str() const {
  std::ostringstream ss;
  ss << '(';
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) ss << ',';
    ss << rows[i];
  }
  ss << ')';
  return ss.str();
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int t) {
  if (t < 1 || t > 8) throw std::invalid_argument("partitions: t must be in [1,8]");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(t, t, cur, out);
  return out;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long specht_dim(const Partition& lambda) {
  const auto& r = lambda.rows;
  const int t = lambda.sum();
  // column lengths
  int ncols = r.empty() ? 0 : r[0];
  std::vector<int> col(ncols, 0);
  for (int len : r)
    for (int j = 0; j < len; ++j) col[j]++;
  long long hooks = 1;
  for (size_t i = 0; i < r.size(); ++i)
    for (int j = 0; j < r[i]; ++j)
      hooks *= (r[i] - j) + (col[j] - static_cast<int>(i)) - 1;
  return factorial(t) / hooks;
}

long long weyl_dim(const Partition& lambda, int d) {
  const int t = lambda.sum();
  if (d < lambda.num_rows())
    throw std::invalid_argument("weyl_dim: d smaller than number of rows");
  __int128 num = specht_dim(lambda);
  for (size_t i = 0; i < lambda.rows.size(); ++i)
    for (int j = 0; j < lambda.rows[i]; ++j)
      num *= d + j - static_cast<int>(i);
  return static_cast<long long>(num / factorial(t));
}

namespace {

// Murnaghan-Nakayama over beta-numbers: removing a border strip of length r
// from lambda corresponds to lowering one beta number by r, with sign given
// by the number of beta numbers jumped over.
long long mn_character(std::vector<int> lambda, std::vector<int> mu,
                       std::map<std::pair<std::vector<int>, std::vector<int>>, long long>& memo) {
  // drop zero parts
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  while (!mu.empty() && mu.back() == 0) mu.pop_back();
  if (mu.empty()) return lambda.empty() ? 1 : 0;

  auto key = std::make_pair(lambda, mu);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const int r = mu[0];
  std::vector<int> mu_rest(mu.begin() + 1, mu.end());
  const int k = static_cast<int>(lambda.size());
  std::vector<int> beta(k);
  for (int i = 0; i < k; ++i) beta[i] = lambda[i] + (k - 1 - i);

  long long total = 0;
  for (int i = 0; i < k; ++i) {
    int b = beta[i] - r;
    if (b < 0) continue;
    if (std::find(beta.begin(), beta.end(), b) != beta.end()) continue;
    int height = 0;
    for (int j = 0; j < k; ++j)
      if (beta[j] > b && beta[j] < beta[i]) height++;
    std::vector<int> nb = beta;
    nb[i] = b;
    std::sort(nb.rbegin(), nb.rend());
    std::vector<int> nl(k);
    for (int j = 0; j < k; ++j) nl[j] = nb[j] - (k - 1 - j);
    long long sub = mn_character(nl, mu_rest, memo);
    total += (height % 2 == 0) ? sub : -sub;
  }
  memo[key] = total;
  return total;
}

std::map<std::pair<std::vector<int>, std::vector<int>>, long long> g_mn_memo;
std::mutex g_mn_mutex;

}  // namespace

long long character(const Partition& lambda, const Partition& ct) {
  if (lambda.sum() != ct.sum())
    throw std::invalid_argument("character: partitions of different integers");
  std::lock_guard<std::mutex> lock(g_mn_mutex);
  return mn_character(lambda.rows, ct.rows, g_mn_memo);
}

std::vector<std::vector<int>> all_permutations(int t) {
  std::vector<int> p(t);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> compose(const std::vector<int>& pi, const std::vector<int>& sigma) {
  // (pi . sigma)(i) = pi(sigma(i))
  std::vector<int> r(pi.size());
  for (size_t i = 0; i < pi.size(); ++i) r[i] = pi[sigma[i]];
  return r;
}

std::vector<int> inverse(const std::vector<int>& pi) {
  std::vector<int> r(pi.size());
  for (size_t i = 0; i < pi.size(); ++i) r[pi[i]] = static_cast<int>(i);
  return r;
}

Partition cycle_type(const std::vector<int>& pi) {
  std::vector<bool> seen(pi.size(), false);
  std::vector<int> lens;
  for (size_t i = 0; i < pi.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = pi[j];
      len++;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return Partition(lens);
}

int num_cycles(const std::vector<int>& pi) {
  return cycle_type(pi).num_rows();
}

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// composite index map of R_pi: tuple a -> a_{pi^-1}
std::vector<int> perm_rep_index_map(const std::vector<int>& pi, int d) {
  const int t = static_cast<int>(pi.size());
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("perm_rep: dimension overflow (d^t > 4096)");
  std::vector<int> inv = inverse(pi);
  std::vector<int> map(dim);
  std::vector<int> a(t);
  for (long long idx = 0; idx < dim; ++idx) {
    long long rem = idx;
    for (int i = t - 1; i >= 0; --i) {
      a[i] = static_cast<int>(rem % d);
      rem /= d;
    }
    long long out = 0;
    for (int i = 0; i < t; ++i) out = out * d + a[inv[i]];
    map[idx] = static_cast<int>(out);
  }
  return map;
}

}  // namespace

Matrix perm_rep(const std::vector<int>& pi, int d) {
  if (d < 1) throw std::invalid_argument("perm_rep: d must be >= 1");
  auto map = perm_rep_index_map(pi, d);
  const long long dim = static_cast<long long>(map.size());
  Matrix r = Matrix::Zero(dim, dim);
  for (long long i = 0; i < dim; ++i) r(map[i], i) = 1.0;
  return r;
}

SchurBlock isotypic_projector(const Partition& lambda, int d) {
  const int t = lambda.sum();
  const long long tfact = factorial(t);
  auto perms = all_permutations(t);
  const long long dim = ipow(d, t);
  if (dim > 4096) throw std::invalid_argument("isotypic_projector: dimension overflow");

  Matrix proj = Matrix::Zero(dim, dim);
  const double scale = static_cast<double>(specht_dim(lambda)) / static_cast<double>(tfact);
  for (const auto& pi : perms) {
    long long chi = character(lambda, cycle_type(pi));  // chi(pi^-1) = chi(pi)
    if (chi == 0) continue;
    auto map = perm_rep_index_map(pi, d);
    const double w = scale * static_cast<double>(chi);
    for (long long i = 0; i < dim; ++i) proj(map[i], i) += w;
  }

  SchurBlock blk;
  blk.partition = lambda;
  blk.specht_dim = specht_dim(lambda);
  blk.weyl_dim = weyl_dim(lambda, d);
  double tr = proj.trace().real();
  double expected = static_cast<double>(blk.weyl_dim * blk.specht_dim);
  if (std::abs(tr - expected) > 1e-8 * std::max(1.0, expected))
    throw std::runtime_error("isotypic_projector: trace does not match dim(W)*dim(V)");
  std::vector<int> dims(t, d);
  blk.projector = ComplexOperator(std::move(proj), dims, dims);
  return blk;
}

Matrix haar_twirl_exact(const Matrix& x, int d, int t) {
  const long long dim = ipow(d, t);
  if (x.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("haar_twirl_exact: operator is not d^t x d^t");
  if (d < t)
    throw std::invalid_argument(
        "haar_twirl_exact: d < t makes the permutation Gram matrix singular; "
        "increase d or reduce t");

  auto perms = all_permutations(t);
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> maps(m);
  for (int i = 0; i < m; ++i) maps[i] = perm_rep_index_map(perms[i], d);

  // Gram matrix G_{pi,sigma} = Tr[R_pi^dag R_sigma] = d^{#cycles(pi^-1 sigma)}
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i) {
    auto inv_i = inverse(perms[i]);
    for (int j = 0; j < m; ++j)
      gram(i, j) = static_cast<double>(ipow(d, num_cycles(compose(inv_i, perms[j]))));
  }

  // b_pi = Tr[R_pi^dag x] = sum_i x(map_pi(i), i)
  Eigen::VectorXcd b(m);
  for (int i = 0; i < m; ++i) {
    Complex s = 0.0;
    for (long long k = 0; k < dim; ++k) s += x(maps[i][k], k);
    b(i) = s;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  Eigen::VectorXcd c = lu.solve(b);

  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < m; ++i)
    for (long long k = 0; k < dim; ++k) out(maps[i][k], k) += c(i);
  return out;
}

CharacterTable character_table(int t) {
  CharacterTable tab;
  tab.t = t;
  tab.parts = partitions(t);
  tab.values.resize(tab.parts.size());
  for (size_t r = 0; r < tab.parts.size(); ++r) {
    tab.values[r].resize(tab.parts.size());
    for (size_t c = 0; c < tab.parts.size(); ++c)
      tab.values[r][c] = character(tab.parts[r], tab.parts[c]);
  }
  return tab;
}

std::string CharacterTable::to_text() const {
  std::ostringstream ss;
  for (const auto& row : values) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) ss << ' ';
      ss << row[c];
    }
    ss << '\n';
  }
  return ss.str();
}

std::vector<long long> conjugacy_class_sizes(int t) {
  auto parts = partitions(t);
  std::vector<long long> out;
  for (const auto& mu : parts) {
    std::map<int, int> mult;
    for (int p : mu.rows) mult[p]++;
    long long denom = 1;
    for (auto [k, m] : mult) denom *= ipow(k, m) * factorial(m);
    out.push_back(factorial(t) / denom);
  }
  return out;
}

}  // namespace pfclab::symgroup
