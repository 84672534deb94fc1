#include "sl2hat/weyl.hpp"

#include <stdexcept>

#include "sl2hat/affine_pbw.hpp"

namespace sl2hat {

AffWeight reflect(int i, const AffWeight& w) {
  if (i != 0 && i != 1) throw std::invalid_argument("reflect: generator index");
  if (i == 1) return {-w.a, w.l, w.d};
  Rat ev = w.l - w.a;  // w(h_0)
  return {w.a + 2 * ev, w.l, w.d - ev};
}

bool is_reduced(const WeylWord& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) return false;
  for (int c : w)
    if (c != 0 && c != 1) return false;
  return true;
}

AffWeight dot(const WeylWord& w, const AffWeight& lambda) {
  if (!is_reduced(w)) throw std::invalid_argument("dot: word not reduced");
  AffWeight r0 = rho();
  AffWeight v{lambda.a + r0.a, lambda.l + r0.l, lambda.d + r0.d};
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = reflect(*it, v);
  return {v.a - r0.a, v.l - r0.l, v.d - r0.d};
}

WeylWord w1_element(int j) {
  if (j < 0) throw std::invalid_argument("w1_element: negative length");
  WeylWord w(j);
  for (int i = 0; i < j; ++i) w[i] = i % 2;
  return w;
}

long m_of(int j, long n, long level) {
  if (j < 0 || n < 0 || n > level)
    throw std::domain_error("m_of: requires j >= 0 and 0 <= n <= level");
  long parity = (j % 2 == 0) ? 0 : 1;
  long sign = (j % 2 == 0) ? 1 : -1;
  return (level + 2) * j + level * parity + sign * n;
}

bool bruhat_leq(const WeylWord& x, const WeylWord& y) {
  if (!is_reduced(x) || !is_reduced(y))
    throw std::invalid_argument("bruhat_leq: word not reduced");
  return x.size() < y.size() || x == y;
}

int verma_mult(const WeylWord& x, const WeylWord& y) {
  return bruhat_leq(x, y) ? 1 : 0;
}

int gvm_mult(const WeylWord& x, const WeylWord& y) {
  if (!bruhat_leq(x, y)) return 0;
  WeylWord r1x = x;
  if (!x.empty() && x.front() == 1)
    r1x.erase(r1x.begin());
  else
    r1x.insert(r1x.begin(), 1);
  return bruhat_leq(r1x, y) ? 0 : 1;
}

std::vector<ResolutionTerm> resolution_weights(long n, long level, int j_max) {
  if (n < 0 || n > level)
    throw std::domain_error("resolution_weights: requires 0 <= n <= level");
  AffWeight lambda{make_rat(n), make_rat(level), make_rat(0)};
  std::vector<ResolutionTerm> out;
  for (int j = 0; j <= j_max; ++j) {
    AffWeight wj = dot(w1_element(j), lambda);
    out.push_back({j, to_long(wj.a), to_long(-wj.d)});
  }
  return out;
}

long euler_dims(long n, long level, int d) {
  if (d < 0) return 0;
  long total = 0;
  for (int j = 0;; ++j) {
    AffWeight wj = dot(w1_element(j), {make_rat(n), make_rat(level), make_rat(0)});
    long shift = to_long(-wj.d);
    if (shift > d) break;
    long a = to_long(wj.a);
    long dim = (a + 1) * pbw_count(d - static_cast<int>(shift));
    total += (j % 2 == 0) ? dim : -dim;
  }
  return total;
}

}  // namespace sl2hat
