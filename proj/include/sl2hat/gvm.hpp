#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sl2hat/affine_pbw.hpp"
#include "sl2hat/rational.hpp"
#include "sl2hat/sl2_core.hpp"

namespace sl2hat {

struct GVMConfig {
  int n = 0;            // sl(2) highest weight of the lowest level
  Rat level = 0;        // level; the critical value -2 is excluded
  int max_grade = 0;    // truncation: depths above this are dropped
};

// Basis vector: PBW monomial applied to the irrep vector u_k.
using TermKey = std::pair<Word, int>;

// Exact linear combination of basis vectors of a truncated module.
class Elem {
 public:
  std::map<TermKey, Rat> terms;

  static Elem basis(const Word& w, int k) {
    Elem e;
    e.terms.emplace(TermKey{w, k}, make_rat(1));
    return e;
  }
  static Elem lowest(int k) { return basis({}, k); }

  bool is_zero() const { return terms.empty(); }
  void add(const TermKey& key, const Rat& c);
  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Rat& c);
  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(const Rat& c, Elem a) { return a *= c; }
  bool operator==(const Elem&) const = default;
};

// Truncated generalized Verma module: PBW monomials of depth <= max_grade
// over the (n+1)-dimensional lowest level. Immutable after construction.
class Module {
 public:
  explicit Module(GVMConfig cfg);

  const GVMConfig& cfg() const { return cfg_; }
  int max_grade() const { return cfg_.max_grade; }

  int dim(int d) const;
  const std::vector<TermKey>& basis(int d) const;
  int index_of(int d, const TermKey& key) const;  // -1 if absent

  struct Block {
    int weight;
    std::vector<int> elems;  // indices into basis(d), ascending
  };
  const std::vector<Block>& blocks(int d) const;      // weights descending
  const Block* block(int d, int w) const;             // null if empty

 private:
  GVMConfig cfg_;
  std::vector<std::vector<TermKey>> basis_;
  std::vector<std::map<TermKey, int>> index_;
  std::vector<std::vector<Block>> blocks_;
};

struct ActResult {
  Elem elem;
  bool truncated = false;  // set when terms above the truncation were dropped
};

// Action of g(mode). Negative modes raise the grade by |mode| (dropping
// overflow past the truncation); nonnegative modes commute rightward until
// they reach the lowest level, where g(0) acts through the irrep and
// positive modes annihilate. k acts as the level throughout.
ActResult act(const Module& m, Gen g, int mode, const Elem& v);

// Applies a PBW word (rightmost generator first).
ActResult act_word(const Module& m, const Word& w, const Elem& v);

// grade/weight of a homogeneous element; nullopt for 0 or mixed.
std::optional<int> grade_of(const Elem& v);
std::optional<int> hweight_of(const Elem& v, int n);

// Lowest conformal weight plus d: d + n(n+2) / (4(level+2)).
Rat conformal_weight(const GVMConfig& cfg, int d);

// Basis of {v at grade d : e(0)v = 0 and g(k)v = 0 for all g, 1 <= k <= d},
// computed blockwise per h-weight.
std::vector<Elem> singular_vectors(const Module& m, int d);

// Coordinates of a homogeneous element over the (d, w) block basis.
// Throws if the element has terms outside the block.
std::vector<Rat> block_coords(const Module& m, int d, int w, const Elem& v);
Elem from_block_coords(const Module& m, int d, int w,
                       const std::vector<Rat>& coords);

std::string render(const Elem& v);

// One line per grade: "grade dim weight:dim ..." for the CLI and goldens.
std::string skeleton(const Module& m);

}  // namespace sl2hat
