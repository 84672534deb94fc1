#pragma once

#include <vector>

#include "sl2hat/rational.hpp"

namespace sl2hat {

// Chevalley generators of sl(2). The enum order fixes the label order used
// throughout (basis sorting, block enumeration, output).
enum class Gen : int { E = 0, H = 1, F = 2 };

constexpr const char* gen_name(Gen g) {
  switch (g) {
    case Gen::E: return "e";
    case Gen::H: return "h";
    default: return "f";
  }
}

// ad-h weight of the generator: [h,e] = 2e, [h,h] = 0, [h,f] = -2f.
constexpr int gen_hweight(Gen g) {
  return g == Gen::E ? 2 : (g == Gen::F ? -2 : 0);
}

// Finite irreducible M(p): basis u_0,...,u_p with h u_k = (p-2k) u_k,
// f u_k = u_{k+1} and e u_k = k(p-k+1) u_{k-1}. The unnormalized f-string
// keeps every structure constant an integer.
struct IrrepTerm {
  int k;
  Rat c;
};
std::vector<IrrepTerm> irrep_action(int p, Gen g, int k);

// Highest weights of the irreducible constituents of M(p) (x) M(q):
// p+q, p+q-2, ..., |p-q|, each with multiplicity one.
std::vector<int> tensor_decompose(int p, int q);

// dim Hom(M(p) (x) M(q), M(r)) in {0, 1}.
int hom_dim(int p, int q, int r);

// Explicit matrix of a nonzero homomorphism M(p) (x) M(q) -> M(r), or the
// zero map when the hom space vanishes. Normalization: the singular vector
// of weight r in the tensor product, scaled so its first nonzero coordinate
// (in lexicographic (k1,k2) order) is 1, maps to u_0 of M(r).
class CGHom {
 public:
  int p = 0, q = 0, r = 0;
  bool zero = true;
  // value(k1, k2) = image of u_{k1} (x) u_{k2}, as coordinates over M(r)
  std::vector<std::vector<Rat>> val;

  const std::vector<Rat>& operator()(int k1, int k2) const {
    return val[static_cast<std::size_t>(k1) * (q + 1) + k2];
  }
  CGHom scaled(const Rat& c) const;
};

CGHom clebsch_gordan_hom(int p, int q, int r);

}  // namespace sl2hat
