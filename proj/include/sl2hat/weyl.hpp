#pragma once

#include <vector>

#include "sl2hat/rational.hpp"

namespace sl2hat {

// Element of the dual Cartan subalgebra in coordinates over the basis
// {alpha/2, k', d'}. In these coordinates rho = (1, 2, 0), the simple roots
// are alpha_0 = (-2, 0, 1) and alpha_1 = (2, 0, 0), and the coroot
// evaluations are L(h_0) = l - a, L(h_1) = a.
struct AffWeight {
  Rat a, l, d;
  bool operator==(const AffWeight&) const = default;
};

inline AffWeight rho() { return {make_rat(1), make_rat(2), make_rat(0)}; }

// Simple reflection r_i(L) = L - L(h_i) alpha_i for i in {0, 1}.
AffWeight reflect(int i, const AffWeight& w);

// A reduced word in the infinite dihedral Weyl group: alternating letters
// over {0, 1}, leftmost letter acting last.
using WeylWord = std::vector<int>;

bool is_reduced(const WeylWord& w);

// Dot action w . L = w(L + rho) - rho.
AffWeight dot(const WeylWord& w, const AffWeight& lambda);

// The unique length-j element of W^1: (r0 r1)^n r0 for j = 2n+1,
// (r0 r1)^n for j = 2n.
WeylWord w1_element(int j);

// Highest weight of the j-th term in the resolution of L(n alpha/2 + l k'):
// m(j, n) = (l+2) j + (l/2)(1 - (-1)^j) + (-1)^j n. Requires 0 <= n <= l.
long m_of(int j, long n, long level);

// Bruhat order on reduced words; for the infinite dihedral group this is
// length comparison together with equality.
bool bruhat_leq(const WeylWord& x, const WeylWord& y);

// Multiplicity [V^{x.L} : L(y.L)] for dominant integral L.
int verma_mult(const WeylWord& x, const WeylWord& y);
// Multiplicity in the generalized Verma module: x <= y and r1 x <= y fails.
int gvm_mult(const WeylWord& x, const WeylWord& y);

struct ResolutionTerm {
  int j;
  long weight;  // a-coefficient of w_j . L
  long shift;   // grade at which its top sits, = -(d-coefficient)
};
std::vector<ResolutionTerm> resolution_weights(long n, long level, int j_max);

// Alternating sum over the resolution of shifted graded dimensions:
// sum_j (-1)^j (a_j + 1) p3(d - s_j), where p3 counts PBW monomials.
// Equals dim L(n alpha/2 + l k') at grade d by exactness.
long euler_dims(long n, long level, int d);

}  // namespace sl2hat
