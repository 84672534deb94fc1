#include "sl2hat/sl2_core.hpp"

#include <cstdlib>
#include <stdexcept>

#include "sl2hat/rat_matrix.hpp"

namespace sl2hat {

std::vector<IrrepTerm> irrep_action(int p, Gen g, int k) {
  if (p < 0 || k < 0 || k > p) throw std::out_of_range("irrep_action: bad index");
  switch (g) {
    case Gen::H:
      return {{k, make_rat(p - 2 * k)}};
    case Gen::F:
      if (k == p) return {};
      return {{k + 1, make_rat(1)}};
    case Gen::E:
      if (k == 0) return {};
      return {{k - 1, make_rat(static_cast<long>(k) * (p - k + 1))}};
  }
  return {};
}

std::vector<int> tensor_decompose(int p, int q) {
  if (p < 0 || q < 0) throw std::out_of_range("tensor_decompose: negative weight");
  std::vector<int> parts;
  for (int r = p + q; r >= std::abs(p - q); r -= 2) parts.push_back(r);
  return parts;
}

int hom_dim(int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0) return 0;
  if ((p + q - r) % 2 != 0) return 0;
  return (r <= p + q && r >= std::abs(p - q)) ? 1 : 0;
}

CGHom CGHom::scaled(const Rat& c) const {
  CGHom out = *this;
  for (auto& row : out.val)
    for (auto& x : row) x *= c;
  return out;
}

namespace {

using Tensor = std::vector<Rat>;  // coordinates over u_{k1} (x) u_{k2}

std::size_t tidx(int k1, int k2, int q) {
  return static_cast<std::size_t>(k1) * (q + 1) + k2;
}

Tensor tensor_act(int p, int q, Gen g, const Tensor& v) {
  Tensor out(v.size());
  for (int k1 = 0; k1 <= p; ++k1)
    for (int k2 = 0; k2 <= q; ++k2) {
      const Rat& c = v[tidx(k1, k2, q)];
      if (c == 0) continue;
      for (const auto& t : irrep_action(p, g, k1)) out[tidx(t.k, k2, q)] += c * t.c;
      for (const auto& t : irrep_action(q, g, k2)) out[tidx(k1, t.k, q)] += c * t.c;
    }
  return out;
}

// Singular vector of weight s: solves e w = 0 inside the weight-s subspace,
// normalized so the first nonzero coordinate is 1.
Tensor singular_tensor(int p, int q, int s) {
  std::vector<std::pair<int, int>> slots;  // (k1,k2) with matching weight
  for (int k1 = 0; k1 <= p; ++k1)
    for (int k2 = 0; k2 <= q; ++k2)
      if ((p - 2 * k1) + (q - 2 * k2) == s) slots.emplace_back(k1, k2);
  if (slots.empty()) throw std::logic_error("singular_tensor: empty weight space");

  // e maps weight s to weight s+2; set up the kernel system on the slot basis.
  std::vector<std::pair<int, int>> up;
  for (int k1 = 0; k1 <= p; ++k1)
    for (int k2 = 0; k2 <= q; ++k2)
      if ((p - 2 * k1) + (q - 2 * k2) == s + 2) up.emplace_back(k1, k2);

  RatMat a(up.size(), slots.size());
  for (std::size_t j = 0; j < slots.size(); ++j) {
    Tensor v((p + 1) * (q + 1));
    v[tidx(slots[j].first, slots[j].second, q)] = 1;
    Tensor ev = tensor_act(p, q, Gen::E, v);
    for (std::size_t i = 0; i < up.size(); ++i)
      a(i, j) = ev[tidx(up[i].first, up[i].second, q)];
  }
  auto kernel = null_space(a);
  if (kernel.size() != 1)
    throw std::logic_error("singular_tensor: kernel dimension != 1");

  Tensor w((p + 1) * (q + 1));
  for (std::size_t j = 0; j < slots.size(); ++j)
    w[tidx(slots[j].first, slots[j].second, q)] = kernel[0][j];
  for (auto& c : w)
    if (c != 0) {
      Rat inv = 1 / c;
      for (auto& x : w) x *= inv;
      break;
    }
  return w;
}

}  // namespace

CGHom clebsch_gordan_hom(int p, int q, int r) {
  CGHom hom;
  hom.p = p;
  hom.q = q;
  hom.r = r;
  hom.val.assign(static_cast<std::size_t>(p + 1) * (q + 1),
                 std::vector<Rat>(r + 1));
  if (hom_dim(p, q, r) == 0) return hom;
  hom.zero = false;

  // Full basis of the tensor product adapted to the decomposition: f-strings
  // of the singular vectors. In M(s) the string f^t u_0 = u_t has coefficient
  // one, so the column for (s, t) directly matches the basis of M(s).
  const std::size_t dim = static_cast<std::size_t>(p + 1) * (q + 1);
  std::vector<int> parts = tensor_decompose(p, q);
  RatMat basis(dim, dim);
  std::size_t col = 0;
  std::size_t r_col0 = 0;
  for (int s : parts) {
    Tensor w = singular_tensor(p, q, s);
    if (s == r) r_col0 = col;
    for (int t = 0; t <= s; ++t) {
      for (std::size_t i = 0; i < dim; ++i) basis(i, col) = w[i];
      ++col;
      if (t < s) w = tensor_act(p, q, Gen::F, w);
    }
  }
  RatMat inv = inverse(basis);

  for (int k1 = 0; k1 <= p; ++k1)
    for (int k2 = 0; k2 <= q; ++k2) {
      std::size_t i = tidx(k1, k2, q);
      for (int t = 0; t <= r; ++t) hom.val[i][t] = inv(r_col0 + t, i);
    }
  return hom;
}

}  // namespace sl2hat
