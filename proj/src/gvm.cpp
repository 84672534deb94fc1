#include "sl2hat/gvm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sl2hat/rat_matrix.hpp"

namespace sl2hat {

void Elem::add(const TermKey& key, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Elem& Elem::operator+=(const Elem& o) {
  for (const auto& [k, c] : o.terms) add(k, c);
  return *this;
}

Elem& Elem::operator-=(const Elem& o) {
  for (const auto& [k, c] : o.terms) add(k, -c);
  return *this;
}

Elem& Elem::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

Module::Module(GVMConfig cfg) : cfg_(cfg) {
  if (cfg_.n < 0) throw std::domain_error("Module: negative highest weight");
  if (cfg_.level == -2) throw std::domain_error("Module: critical level");
  if (cfg_.max_grade < 0) throw std::domain_error("Module: negative truncation");

  basis_.resize(cfg_.max_grade + 1);
  index_.resize(cfg_.max_grade + 1);
  blocks_.resize(cfg_.max_grade + 1);
  for (int d = 0; d <= cfg_.max_grade; ++d) {
    for (const Word& w : enumerate_pbw(d))
      for (int k = 0; k <= cfg_.n; ++k) basis_[d].push_back({w, k});
    for (std::size_t i = 0; i < basis_[d].size(); ++i)
      index_[d].emplace(basis_[d][i], static_cast<int>(i));

    std::map<int, std::vector<int>, std::greater<>> by_weight;
    for (std::size_t i = 0; i < basis_[d].size(); ++i) {
      const auto& [w, k] = basis_[d][i];
      by_weight[hweight(w) + cfg_.n - 2 * k].push_back(static_cast<int>(i));
    }
    for (auto& [w, idx] : by_weight) blocks_[d].push_back({w, std::move(idx)});
  }
}

int Module::dim(int d) const {
  if (d < 0 || d > cfg_.max_grade) return 0;
  return static_cast<int>(basis_[d].size());
}

const std::vector<TermKey>& Module::basis(int d) const {
  if (d < 0 || d > cfg_.max_grade) throw std::out_of_range("Module::basis");
  return basis_[d];
}

int Module::index_of(int d, const TermKey& key) const {
  if (d < 0 || d > cfg_.max_grade) return -1;
  auto it = index_[d].find(key);
  return it == index_[d].end() ? -1 : it->second;
}

const std::vector<Module::Block>& Module::blocks(int d) const {
  if (d < 0 || d > cfg_.max_grade) throw std::out_of_range("Module::blocks");
  return blocks_[d];
}

const Module::Block* Module::block(int d, int w) const {
  if (d < 0 || d > cfg_.max_grade) return nullptr;
  for (const auto& b : blocks_[d])
    if (b.weight == w) return &b;
  return nullptr;
}

namespace {

// g(mode) with mode >= 0 applied to a single basis term, commuting rightward.
void apply_nonneg(const Module& m, Gen g, int mode, const Word& w, int k,
                  const Rat& coeff, Elem& out) {
  if (coeff == 0) return;
  if (w.empty()) {
    if (mode > 0) return;  // annihilates the lowest level
    for (const auto& t : irrep_action(m.cfg().n, g, k))
      out.add({w, t.k}, coeff * t.c);
    return;
  }
  const AffGen head = w.front();
  const Word rest(w.begin() + 1, w.end());

  // head * (g(mode) rest): recurse, then put head back in front.
  Elem inner;
  apply_nonneg(m, g, mode, rest, k, coeff, inner);
  for (const auto& [key, c] : inner.terms) {
    Word prod;
    prod.reserve(key.first.size() + 1);
    prod.push_back(head);
    prod.insert(prod.end(), key.first.begin(), key.first.end());
    for (const auto& [sw, sc] : straighten(prod)) out.add({sw, key.second}, c * sc);
  }

  // [g(mode), head] rest
  Bracket br = bracket({g, mode}, head, m.cfg().level);
  if (br.coeff != 0) {
    if (br.gen.mode >= 0) {
      apply_nonneg(m, br.gen.g, br.gen.mode, rest, k, coeff * br.coeff, out);
    } else {
      Word prod;
      prod.reserve(rest.size() + 1);
      prod.push_back(br.gen);
      prod.insert(prod.end(), rest.begin(), rest.end());
      for (const auto& [sw, sc] : straighten(prod))
        out.add({sw, k}, coeff * br.coeff * sc);
    }
  }
  if (br.central != 0) out.add({rest, k}, coeff * br.central);
}

}  // namespace

ActResult act(const Module& m, Gen g, int mode, const Elem& v) {
  ActResult res;
  if (mode < 0) {
    for (const auto& [key, c] : v.terms) {
      Word prod;
      prod.reserve(key.first.size() + 1);
      prod.push_back({g, mode});
      prod.insert(prod.end(), key.first.begin(), key.first.end());
      if (depth(prod) > m.max_grade()) {
        res.truncated = true;
        continue;
      }
      for (const auto& [sw, sc] : straighten(prod))
        res.elem.add({sw, key.second}, c * sc);
    }
    return res;
  }
  for (const auto& [key, c] : v.terms)
    apply_nonneg(m, g, mode, key.first, key.second, c, res.elem);
  return res;
}

ActResult act_word(const Module& m, const Word& w, const Elem& v) {
  ActResult res{v, false};
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    ActResult step = act(m, it->g, it->mode, res.elem);
    res.elem = std::move(step.elem);
    res.truncated = res.truncated || step.truncated;
  }
  return res;
}

std::optional<int> grade_of(const Elem& v) {
  std::optional<int> d;
  for (const auto& [key, c] : v.terms) {
    int dd = depth(key.first);
    if (d && *d != dd) return std::nullopt;
    d = dd;
  }
  return d;
}

std::optional<int> hweight_of(const Elem& v, int n) {
  std::optional<int> w;
  for (const auto& [key, c] : v.terms) {
    int ww = hweight(key.first) + n - 2 * key.second;
    if (w && *w != ww) return std::nullopt;
    w = ww;
  }
  return w;
}

Rat conformal_weight(const GVMConfig& cfg, int d) {
  if (d < 0) throw std::domain_error("conformal_weight: negative grade");
  Rat lowest = make_rat(static_cast<long>(cfg.n) * (cfg.n + 2)) /
               (4 * (cfg.level + 2));
  return lowest + d;
}

std::vector<Elem> singular_vectors(const Module& m, int d) {
  if (d < 1 || d > m.max_grade()) return {};
  std::vector<Elem> out;
  for (const auto& blk : m.blocks(d)) {
    // Stack the constraints e(0)v = 0 and g(k)v = 0, 1 <= k <= d, expressed
    // over the target grade bases.
    std::vector<std::pair<Gen, int>> ops{{Gen::E, 0}};
    for (int k = 1; k <= d; ++k)
      for (Gen g : {Gen::E, Gen::H, Gen::F}) ops.emplace_back(g, k);

    std::size_t rows = 0;
    std::vector<std::vector<Rat>> rows_data;
    for (std::size_t j = 0; j < blk.elems.size(); ++j) {
      const TermKey& key = m.basis(d)[blk.elems[j]];
      Elem v = Elem::basis(key.first, key.second);
      std::vector<Rat> col;
      for (const auto& [g, k] : ops) {
        Elem img = act(m, g, k, v).elem;
        for (int i = 0; i < m.dim(d - k); ++i) {
          auto it = img.terms.find(m.basis(d - k)[i]);
          col.push_back(it == img.terms.end() ? Rat(0) : it->second);
        }
      }
      if (rows == 0) rows = col.size();
      rows_data.push_back(std::move(col));
    }
    RatMat a(rows, blk.elems.size());
    for (std::size_t j = 0; j < rows_data.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) a(i, j) = rows_data[j][i];
    for (const auto& kv : null_space(a)) {
      Elem v;
      for (std::size_t j = 0; j < blk.elems.size(); ++j)
        v.add(m.basis(d)[blk.elems[j]], kv[j]);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Rat> block_coords(const Module& m, int d, int w, const Elem& v) {
  const Module::Block* blk = m.block(d, w);
  if (!blk) {
    if (v.is_zero()) return {};
    throw std::invalid_argument("block_coords: no such block");
  }
  std::vector<Rat> coords(blk->elems.size());
  std::size_t found = 0;
  for (std::size_t j = 0; j < blk->elems.size(); ++j) {
    auto it = v.terms.find(m.basis(d)[blk->elems[j]]);
    if (it != v.terms.end()) {
      coords[j] = it->second;
      ++found;
    }
  }
  if (found != v.terms.size())
    throw std::invalid_argument("block_coords: element not in block");
  return coords;
}

Elem from_block_coords(const Module& m, int d, int w,
                       const std::vector<Rat>& coords) {
  const Module::Block* blk = m.block(d, w);
  if (!blk || coords.size() != blk->elems.size())
    throw std::invalid_argument("from_block_coords: size mismatch");
  Elem v;
  for (std::size_t j = 0; j < coords.size(); ++j)
    v.add(m.basis(d)[blk->elems[j]], coords[j]);
  return v;
}

std::string render(const Elem& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : v.terms) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*" << render(key.first) << "[u" << key.second << "]";
  }
  return os.str();
}

std::string skeleton(const Module& m) {
  std::ostringstream os;
  os << "n=" << m.cfg().n << " level=" << to_string(m.cfg().level)
     << " max_grade=" << m.max_grade() << "\n";
  for (int d = 0; d <= m.max_grade(); ++d) {
    os << d << " " << m.dim(d);
    for (const auto& b : m.blocks(d)) os << " " << b.weight << ":" << b.elems.size();
    os << "\n";
  }
  return os.str();
}

}  // namespace sl2hat
