#include "sl2hat/affine_pbw.hpp"

#include <stdexcept>

namespace sl2hat {

int depth(const Word& w) {
  int d = 0;
  for (const auto& x : w) d += depth(x);
  return d;
}

int hweight(const Word& w) {
  int s = 0;
  for (const auto& x : w) s += gen_hweight(x.g);
  return s;
}

bool is_normal_ordered(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (pbw_before(w[i + 1], w[i])) return false;
  return true;
}

namespace {

// Structure constants of sl(2): [a, b] = lie_coeff * lie_gen (or zero).
bool lie_bracket(Gen a, Gen b, long& coeff, Gen& out) {
  if (a == b) return false;
  if (a == Gen::H) {
    coeff = b == Gen::E ? 2 : -2;
    out = b;
    return true;
  }
  if (b == Gen::H) {
    coeff = a == Gen::E ? -2 : 2;
    out = a;
    return true;
  }
  // {a,b} = {e,f}
  coeff = a == Gen::E ? 1 : -1;
  out = Gen::H;
  return true;
}

long killing_pairing(Gen a, Gen b) {
  if (a == Gen::H && b == Gen::H) return 2;
  if ((a == Gen::E && b == Gen::F) || (a == Gen::F && b == Gen::E)) return 1;
  return 0;
}

void add_term(NegCombination& acc, const Word& w, const Rat& c) {
  if (c == 0) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

}  // namespace

Bracket bracket(const AffGen& x, const AffGen& y, const Rat& level) {
  Bracket b;
  long c;
  Gen g;
  if (lie_bracket(x.g, y.g, c, g)) {
    b.coeff = make_rat(c);
    b.gen = AffGen{g, x.mode + y.mode};
  }
  if (x.mode + y.mode == 0)
    b.central = make_rat(x.mode) * killing_pairing(x.g, y.g) * level;
  return b;
}

NegCombination straighten(const Word& w) {
  for (const auto& x : w)
    if (x.mode >= 0) throw std::invalid_argument("straighten: nonnegative mode");

  NegCombination done;
  // Worklist of pending products; each swap of an out-of-order adjacent pair
  // strictly decreases the inversion count, and commutators shorten the word.
  std::vector<std::pair<Word, Rat>> todo{{w, make_rat(1)}};
  while (!todo.empty()) {
    auto [cur, coeff] = std::move(todo.back());
    todo.pop_back();
    bool sorted = true;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!pbw_before(cur[i + 1], cur[i])) continue;
      sorted = false;
      Word swapped = cur;
      std::swap(swapped[i], swapped[i + 1]);
      todo.emplace_back(std::move(swapped), coeff);
      // Negative modes only: no central term is possible here.
      Bracket br = bracket(cur[i], cur[i + 1], 0);
      if (br.coeff != 0) {
        Word shorter;
        shorter.reserve(cur.size() - 1);
        shorter.insert(shorter.end(), cur.begin(), cur.begin() + i);
        shorter.push_back(br.gen);
        shorter.insert(shorter.end(), cur.begin() + i + 2, cur.end());
        todo.emplace_back(std::move(shorter), coeff * br.coeff);
      }
      break;
    }
    if (sorted) add_term(done, cur, coeff);
  }
  return done;
}

std::vector<Word> enumerate_pbw(int d) {
  if (d < 0) throw std::invalid_argument("enumerate_pbw: negative depth");
  std::vector<Word> out;
  Word cur;
  // Generators are emitted in normal order, so each suffix choice must not
  // precede the last generator already placed.
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int n = remaining; n >= 1; --n) {
      for (Gen g : {Gen::E, Gen::H, Gen::F}) {
        AffGen next{g, -n};
        if (!cur.empty() && pbw_before(next, cur.back())) continue;
        cur.push_back(next);
        self(self, remaining - n);
        cur.pop_back();
      }
    }
  };
  rec(rec, d);
  return out;
}

long pbw_count(int d) {
  // q^d coefficient of prod (1-q^n)^{-3}, computed by series multiplication.
  std::vector<long> coef(d + 1, 0);
  coef[0] = 1;
  for (int n = 1; n <= d; ++n)
    for (int rep = 0; rep < 3; ++rep)
      for (int k = n; k <= d; ++k) coef[k] += coef[k - n];
  return coef[d];
}

std::string render(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& x : w) {
    s += gen_name(x.g);
    s += '(';
    s += std::to_string(x.mode);
    s += ')';
  }
  return s;
}

}  // namespace sl2hat
