#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "sl2hat/rational.hpp"
#include "sl2hat/sl2_core.hpp"

namespace sl2hat {

// g(mode) = g (x) t^mode in the affine algebra. Basis monomials use
// mode < 0 only; positive modes appear transiently while commuting.
struct AffGen {
  Gen g;
  int mode;
  auto operator<=>(const AffGen&) const = default;
};

// A PBW monomial: product of negative-mode generators in normal order.
// The empty word is the identity.
using Word = std::vector<AffGen>;
using NegCombination = std::map<Word, Rat>;

inline int depth(const AffGen& x) { return -x.mode; }
int depth(const Word& w);
int hweight(const Word& w);

// Normal order: deeper modes first, ties broken by e < h < f.
inline bool pbw_before(const AffGen& x, const AffGen& y) {
  if (depth(x) != depth(y)) return depth(x) > depth(y);
  return static_cast<int>(x.g) < static_cast<int>(y.g);
}
bool is_normal_ordered(const Word& w);

// [x, y] = [g,h](m+n) + m <g,h> delta_{m+n,0} level, with <e,f> = 1,
// <h,h> = 2 and all other pairings zero.
struct Bracket {
  Rat coeff;    // coefficient of gen; 0 means no generator term
  AffGen gen{Gen::E, 0};
  Rat central;  // scalar contribution, already multiplied by the level
};
Bracket bracket(const AffGen& x, const AffGen& y, const Rat& level);

// Rewrites an arbitrary product of negative-mode generators into the
// normal-ordered basis. Exact; central terms cannot arise here because
// two negative modes never sum to zero.
NegCombination straighten(const Word& w);

// All normal-ordered monomials of total depth d, in canonical enumeration
// order. The count is the q^d coefficient of prod_{n>=1} (1-q^n)^{-3}.
std::vector<Word> enumerate_pbw(int d);
long pbw_count(int d);

// Text form, e.g. "e(-2)h(-1)"; the empty word renders as "1".
std::string render(const Word& w);

}  // namespace sl2hat
