#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sl2hat/rational.hpp"

namespace sl2hat {

// Dense matrix of exact rationals. Sizes in this library are small (block
// dimensions of graded weight spaces), so no sparsity tricks are needed;
// exactness and deterministic pivoting are what matter.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  RatMat transposed() const;

  bool operator==(const RatMat&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

std::vector<Rat> mat_vec(const RatMat& m, const std::vector<Rat>& x);
RatMat mat_mul(const RatMat& a, const RatMat& b);

// Rank by Bareiss fraction-free elimination on a denominator-cleared integer
// copy; intermediate entries stay bounded by minors of the input.
std::size_t rank_ff(const RatMat& m);

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RatMat& m);

// Basis of {x : m x = 0}, deterministic (free variables in column order,
// free coordinate normalized to 1).
std::vector<std::vector<Rat>> null_space(const RatMat& m);

// Basis of {x : x^T m = 0}.
std::vector<std::vector<Rat>> left_null_space(const RatMat& m);

struct SolveResult {
  bool consistent = false;
  bool unique = false;
  std::vector<Rat> x;  // a particular solution when consistent
};

// Solves m x = b by elimination on the augmented matrix.
SolveResult solve(const RatMat& m, const std::vector<Rat>& b);

// Inverse of a square matrix; throws std::domain_error if singular.
RatMat inverse(const RatMat& m);

}  // namespace sl2hat
