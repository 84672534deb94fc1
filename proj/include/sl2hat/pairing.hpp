#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sl2hat/gvm.hpp"
#include "sl2hat/rat_matrix.hpp"

namespace sl2hat {

// theta(y) u for a PBW word y: the anti-automorphism g(m) -> -g(-m) applied
// to the word (reversing the product), acting on u. Lowers the grade of u by
// depth(y).
Elem theta_apply(const Module& m, const Elem& u, const Word& y);

// Invariant pairing <u, v>_M: for v = y (x) u_k it is the grade-0 pairing of
// the lowest-level part of theta(y) u against u_k. The grade-0 form on the
// lowest level is the invariant one normalized by <u_0, u_n> = 1, which
// forces <u_k, u_{n-k}> = (-1)^k and all other grade-0 pairs to vanish.
Rat pair_form(const Module& m, const Elem& u, const Elem& v);

// Gram matrix of the pairing: rows over the (d, w) block, columns over the
// (d, -w) block (the only block it can pair against). Reference
// implementation: one pair_form evaluation per entry.
RatMat gram_block_serial(const Module& m, int d, int w);

// Same matrices for every weight block of grade d, computed by the
// OpenMP kernel: rows are distributed over threads and the theta-reduction
// of a column monomial is shared across the irrep indices attached to it.
std::vector<RatMat> gram_blocks_parallel(const Module& m, int d);

// Precomputed pairing data for one module: Gram blocks, radical (the kernel
// of the pairing, one basis per block), and the K/J splitting with its
// projections. Immutable after construction.
class PairingContext {
 public:
  explicit PairingContext(const Module& m, bool parallel = true);

  const Module& module() const { return mod_; }

  const RatMat& gram(int d, int w) const;

  // Radical vectors of block (d, w) as coordinate rows over the block basis.
  const std::vector<std::vector<Rat>>& radical_coords(int d, int w) const;
  std::vector<Elem> radical_basis(int d) const;
  int radical_dim(int d) const;
  int radical_dim(int d, int w) const;
  // Smallest grade with nonzero radical, or max_grade+1 if none appears.
  int first_radical_grade() const;

  struct Split {
    // Column-echelon bases (coordinates over the block basis).
    std::vector<std::vector<Rat>> k_basis, j_basis;
    RatMat p_k, p_j;  // projection matrices on block coordinates
  };
  const Split& split(int d, int w) const;

  Elem project_k(const Elem& v) const;
  Elem project_j(const Elem& v) const;

 private:
  const Module& mod_;
  std::map<std::pair<int, int>, RatMat> gram_;
  std::map<std::pair<int, int>, std::vector<std::vector<Rat>>> radical_;
  std::map<std::pair<int, int>, Split> split_;
  std::vector<int> radical_dim_by_grade_;

  void build_split(int d, const Module::Block& blk);
};

// Reconstructs the element of K(d, -w) that represents a functional given by
// its values against the (d, w) block basis. The functional must annihilate
// the radical part of the block; throws std::domain_error otherwise.
Elem phi_transport(const PairingContext& ctx, int d, int w,
                   const std::vector<Rat>& functional);

// The nondegenerate invariant form on the maximal proper submodule J,
// transported from the generalized Verma module V' whose lowest level
// matches the lowest radical block. Realized through the map
// phi: V'(d - M) -> J(d) sending y (x) u_j to y f(0)^j s, where s is the
// singular generator of the radical and M its grade.
class JForm {
 public:
  // Throws std::domain_error("J not irreducible at this truncation") when
  // the grade dimensions of the radical do not match the quotient of V'.
  JForm(const PairingContext& ctx, bool parallel = true);

  int lowest_grade() const { return m_; }
  int lowest_weight() const { return rprime_; }
  const Module& source_module() const { return *vprime_; }
  const Elem& generator() const { return s_; }

  // <u, v>_J for homogeneous u, v in the radical. Zero for mismatched
  // grades or non-opposite weights.
  Rat value(const Elem& u, const Elem& v) const;

  // Coordinates in V'(d - M, w) of a preimage of u under phi.
  std::vector<Rat> preimage_coords(int d, int w, const Elem& u) const;

 private:
  const PairingContext& ctx_;
  int m_ = 0;        // lowest radical grade
  int rprime_ = 0;   // highest weight of the lowest radical block
  Elem s_;           // singular generator
  std::unique_ptr<Module> vprime_;
  std::unique_ptr<PairingContext> vprime_pairing_;
  // phi matrix per (d, w): columns = images of the V'(d-M, w) block basis,
  // in coordinates of the V(d, w) block.
  std::map<std::pair<int, int>, RatMat> phi_;
};

}  // namespace sl2hat
