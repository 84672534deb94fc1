#include "sl2hat/rat_matrix.hpp"

#include <stdexcept>

namespace sl2hat {

RatMat RatMat::transposed() const {
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Rat> mat_vec(const RatMat& m, const std::vector<Rat>& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("mat_vec: size mismatch");
  std::vector<Rat> y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: size mismatch");
  RatMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::size_t rank_ff(const RatMat& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  if (nr == 0 || nc == 0) return 0;

  // Clear denominators row by row; row scaling does not change the rank.
  std::vector<std::vector<mpz_class>> a(nr, std::vector<mpz_class>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < nc; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den().get_mpz_t());
    for (std::size_t j = 0; j < nc; ++j)
      a[i][j] = m(i, j).get_num() * (lcm / m(i, j).get_den());
  }

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < nr; ++col) {
    std::size_t piv = rank;
    while (piv < nr && a[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < nr; ++i) {
      for (std::size_t j = col + 1; j < nc; ++j) {
        mpz_class t = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Rat inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rat>> null_space(const RatMat& m) {
  RatMat e = m;
  std::vector<std::size_t> pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -e(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rat>> left_null_space(const RatMat& m) {
  return null_space(m.transposed());
}

SolveResult solve(const RatMat& m, const std::vector<Rat>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
  RatMat aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  SolveResult res;
  if (!pivots.empty() && pivots.back() == m.cols()) return res;  // 0 = 1 row
  res.consistent = true;
  res.unique = pivots.size() == m.cols();
  res.x.assign(m.cols(), Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) res.x[pivots[i]] = aug(i, m.cols());
  return res;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse: not square");
  const std::size_t n = m.rows();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw std::domain_error("inverse: singular matrix");
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace sl2hat
