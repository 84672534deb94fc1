#include "sl2hat/pairing.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sl2hat {

Elem theta_apply(const Module& m, const Elem& u, const Word& y) {
  // theta reverses the product, so the first generator of y acts first;
  // each factor contributes a sign.
  Elem cur = u;
  for (const auto& x : y) {
    if (cur.is_zero()) break;
    cur = act(m, x.g, -x.mode, cur).elem;
  }
  if (y.size() % 2 == 1) cur *= make_rat(-1);
  return cur;
}

namespace {

// Grade-0 pairing <u_j, u_k> = (-1)^j delta_{k, n-j}.
Rat lowest_pair(int n, const Elem& grade0, int k) {
  auto it = grade0.terms.find(TermKey{{}, n - k});
  if (it == grade0.terms.end()) return 0;
  return ((n - k) % 2 == 0) ? it->second : -it->second;
}

Elem lowest_part(const Elem& v) {
  Elem out;
  for (const auto& [key, c] : v.terms)
    if (key.first.empty()) out.add(key, c);
  return out;
}

}  // namespace

Rat pair_form(const Module& m, const Elem& u, const Elem& v) {
  Rat total = 0;
  for (const auto& [key, c] : v.terms) {
    Elem reduced = lowest_part(theta_apply(m, u, key.first));
    if (reduced.is_zero()) continue;
    total += c * lowest_pair(m.cfg().n, reduced, key.second);
  }
  return total;
}

RatMat gram_block_serial(const Module& m, int d, int w) {
  const Module::Block* rows = m.block(d, w);
  const Module::Block* cols = m.block(d, -w);
  if (!rows || !cols) return RatMat(rows ? rows->elems.size() : 0,
                                    cols ? cols->elems.size() : 0);
  RatMat g(rows->elems.size(), cols->elems.size());
  for (std::size_t i = 0; i < rows->elems.size(); ++i) {
    const TermKey& bi = m.basis(d)[rows->elems[i]];
    Elem u = Elem::basis(bi.first, bi.second);
    for (std::size_t j = 0; j < cols->elems.size(); ++j) {
      const TermKey& bj = m.basis(d)[cols->elems[j]];
      g(i, j) = pair_form(m, u, Elem::basis(bj.first, bj.second));
    }
  }
  return g;
}

std::vector<RatMat> gram_blocks_parallel(const Module& m, int d) {
  const auto& blocks = m.blocks(d);
  const int n = m.cfg().n;
  std::vector<RatMat> out(blocks.size());

  // Column layout per block: contiguous runs sharing one monomial. The
  // theta-reduction of a row against that monomial is computed once per run
  // and reused for every irrep index in it.
  struct Run {
    const Word* word;
    std::vector<std::pair<std::size_t, int>> cols;  // (column, irrep index)
  };
  std::vector<std::vector<Run>> runs(blocks.size());
  std::vector<std::size_t> block_of_cols(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Module::Block* cols = m.block(d, -blocks[b].weight);
    out[b] = RatMat(blocks[b].elems.size(), cols ? cols->elems.size() : 0);
    if (!cols) continue;
    for (std::size_t j = 0; j < cols->elems.size(); ++j) {
      const TermKey& key = m.basis(d)[cols->elems[j]];
      if (runs[b].empty() || *runs[b].back().word != key.first)
        runs[b].push_back({&key.first, {}});
      runs[b].back().cols.emplace_back(j, key.second);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> work;  // (block, row)
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t i = 0; i < blocks[b].elems.size(); ++i) work.emplace_back(b, i);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(work.size()); ++t) {
    const auto [b, i] = work[t];
    const TermKey& bi = m.basis(d)[blocks[b].elems[i]];
    Elem u = Elem::basis(bi.first, bi.second);
    for (const Run& run : runs[b]) {
      Elem reduced = lowest_part(theta_apply(m, u, *run.word));
      for (const auto& [j, k] : run.cols)
        out[b](i, j) = lowest_pair(n, reduced, k);
    }
  }
  return out;
}

PairingContext::PairingContext(const Module& m, bool parallel) : mod_(m) {
  radical_dim_by_grade_.assign(m.max_grade() + 1, 0);
  for (int d = 0; d <= m.max_grade(); ++d) {
    const auto& blocks = m.blocks(d);
    std::vector<RatMat> grams;
    if (parallel) {
      grams = gram_blocks_parallel(m, d);
    } else {
      grams.reserve(blocks.size());
      for (const auto& b : blocks) grams.push_back(gram_block_serial(m, d, b.weight));
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      int w = blocks[b].weight;
      auto rad = left_null_space(grams[b]);
      radical_dim_by_grade_[d] += static_cast<int>(rad.size());
      radical_.emplace(std::make_pair(d, w), std::move(rad));
      gram_.emplace(std::make_pair(d, w), std::move(grams[b]));
    }
    for (const auto& b : blocks) build_split(d, b);
  }
}

const RatMat& PairingContext::gram(int d, int w) const {
  auto it = gram_.find({d, w});
  if (it == gram_.end()) throw std::out_of_range("PairingContext::gram");
  return it->second;
}

const std::vector<std::vector<Rat>>& PairingContext::radical_coords(int d,
                                                                    int w) const {
  auto it = radical_.find({d, w});
  if (it == radical_.end()) throw std::out_of_range("PairingContext::radical");
  return it->second;
}

std::vector<Elem> PairingContext::radical_basis(int d) const {
  std::vector<Elem> out;
  for (const auto& b : mod_.blocks(d))
    for (const auto& coords : radical_coords(d, b.weight))
      out.push_back(from_block_coords(mod_, d, b.weight, coords));
  return out;
}

int PairingContext::radical_dim(int d) const {
  if (d < 0 || d > mod_.max_grade()) return 0;
  return radical_dim_by_grade_[d];
}

int PairingContext::radical_dim(int d, int w) const {
  auto it = radical_.find({d, w});
  return it == radical_.end() ? 0 : static_cast<int>(it->second.size());
}

int PairingContext::first_radical_grade() const {
  for (int d = 0; d <= mod_.max_grade(); ++d)
    if (radical_dim_by_grade_[d] > 0) return d;
  return mod_.max_grade() + 1;
}

namespace {

// Columns of a matrix spanning the intersection of two column spans.
std::vector<std::vector<Rat>> intersect_spans(
    const std::vector<std::vector<Rat>>& a,
    const std::vector<std::vector<Rat>>& b, std::size_t dim) {
  if (a.empty() || b.empty()) return {};
  RatMat stacked(dim, a.size() + b.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) stacked(i, j) = a[j][i];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) stacked(i, a.size() + j) = -b[j][i];
  std::vector<std::vector<Rat>> out;
  for (const auto& ker : null_space(stacked)) {
    std::vector<Rat> v(dim);
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) v[i] += ker[j] * a[j][i];
    bool nonzero = false;
    for (const auto& c : v) nonzero = nonzero || c != 0;
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

std::size_t span_rank(const std::vector<std::vector<Rat>>& vecs,
                      std::size_t dim) {
  if (vecs.empty()) return 0;
  RatMat m(dim, vecs.size());
  for (std::size_t j = 0; j < vecs.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = vecs[j][i];
  return rank_ff(m);
}

}  // namespace

void PairingContext::build_split(int d, const Module::Block& blk) {
  // Highest-weight vectors of the grade decompose it into f(0)-strings; the
  // radical is a sum of full strings, so splitting the highest-weight space
  // against the radical splits the whole grade. Strings are seeded at every
  // weight, so the split at (d, w) collects contributions from weights >= w.
  // To keep this per-block function self-contained, seed only once per grade.
  if (split_.count({d, blk.weight})) return;

  const std::size_t grade_dim = mod_.dim(d);
  std::map<int, std::vector<std::vector<Rat>>> k_cols, j_cols;

  for (const auto& b : mod_.blocks(d)) {
    const int w = b.weight;
    const std::size_t bdim = b.elems.size();
    // e(0)-kernel of the block.
    const Module::Block* up = mod_.block(d, w + 2);
    RatMat e0(up ? up->elems.size() : 0, bdim);
    for (std::size_t j = 0; j < bdim; ++j) {
      const TermKey& key = mod_.basis(d)[b.elems[j]];
      Elem img = act(mod_, Gen::E, 0, Elem::basis(key.first, key.second)).elem;
      if (up) {
        auto coords = block_coords(mod_, d, w + 2, img);
        for (std::size_t i = 0; i < coords.size(); ++i) e0(i, j) = coords[i];
      }
    }
    auto hw = null_space(e0);
    if (hw.empty()) continue;
    auto j_hw = intersect_spans(radical_coords(d, w), hw, bdim);

    // Extend the radical part of the highest-weight space to all of it.
    std::vector<std::vector<Rat>> chosen = j_hw;
    std::size_t rank = span_rank(chosen, bdim);
    for (const auto& cand : hw) {
      if (rank == hw.size()) break;
      auto trial = chosen;
      trial.push_back(cand);
      std::size_t r = span_rank(trial, bdim);
      if (r > rank) {
        chosen = std::move(trial);
        rank = r;
      }
    }
    // f(0)-strings seeded at weight w; a string of highest weight w has
    // length w+1 and visits the blocks (d, w - 2t).
    auto seed_strings = [&](const std::vector<std::vector<Rat>>& seeds,
                            std::size_t from,
                            std::map<int, std::vector<std::vector<Rat>>>& dest) {
      for (std::size_t s = from; s < seeds.size(); ++s) {
        Elem v = from_block_coords(mod_, d, w, seeds[s]);
        for (int t = 0; t <= w; ++t) {
          if (v.is_zero()) break;
          dest[w - 2 * t].push_back(block_coords(mod_, d, w - 2 * t, v));
          v = act(mod_, Gen::F, 0, v).elem;
        }
      }
    };
    seed_strings(j_hw, 0, j_cols);
    seed_strings(chosen, j_hw.size(), k_cols);
  }

  std::size_t total = 0;
  for (const auto& b : mod_.blocks(d)) {
    const std::size_t bdim = b.elems.size();
    auto& kc = k_cols[b.weight];
    auto& jc = j_cols[b.weight];
    if (kc.size() + jc.size() != bdim ||
        jc.size() != radical_coords(d, b.weight).size())
      throw std::logic_error("kj split: string count mismatch at grade " +
                             std::to_string(d));
    total += bdim;

    RatMat t(bdim, bdim);
    for (std::size_t j = 0; j < kc.size(); ++j)
      for (std::size_t i = 0; i < bdim; ++i) t(i, j) = kc[j][i];
    for (std::size_t j = 0; j < jc.size(); ++j)
      for (std::size_t i = 0; i < bdim; ++i) t(i, kc.size() + j) = jc[j][i];
    RatMat tinv = inverse(t);
    RatMat pk(bdim, bdim);
    for (std::size_t a = 0; a < kc.size(); ++a)
      for (std::size_t i = 0; i < bdim; ++i)
        for (std::size_t j = 0; j < bdim; ++j) pk(i, j) += kc[a][i] * tinv(a, j);
    RatMat pj(bdim, bdim);
    for (std::size_t i = 0; i < bdim; ++i) {
      for (std::size_t j = 0; j < bdim; ++j) pj(i, j) = -pk(i, j);
      pj(i, i) += 1;
    }
    split_.emplace(std::make_pair(d, b.weight),
                   Split{std::move(kc), std::move(jc), std::move(pk),
                         std::move(pj)});
  }
  if (total != grade_dim)
    throw std::logic_error("kj split: dimension mismatch at grade " +
                           std::to_string(d));
}

const PairingContext::Split& PairingContext::split(int d, int w) const {
  auto it = split_.find({d, w});
  if (it == split_.end()) throw std::out_of_range("PairingContext::split");
  return it->second;
}

namespace {

Elem project(const PairingContext& ctx, const Elem& v, bool keep_k) {
  const Module& m = ctx.module();
  // Group terms by (grade, weight) and project blockwise.
  std::map<std::pair<int, int>, Elem> groups;
  for (const auto& [key, c] : v.terms) {
    int d = depth(key.first);
    int w = hweight(key.first) + m.cfg().n - 2 * key.second;
    groups[{d, w}].add(key, c);
  }
  Elem out;
  for (const auto& [dw, part] : groups) {
    auto coords = block_coords(m, dw.first, dw.second, part);
    const RatMat& p = keep_k ? ctx.split(dw.first, dw.second).p_k
                             : ctx.split(dw.first, dw.second).p_j;
    out += from_block_coords(m, dw.first, dw.second, mat_vec(p, coords));
  }
  return out;
}

}  // namespace

Elem PairingContext::project_k(const Elem& v) const { return project(*this, v, true); }
Elem PairingContext::project_j(const Elem& v) const { return project(*this, v, false); }

Elem phi_transport(const PairingContext& ctx, int d, int w,
                   const std::vector<Rat>& functional) {
  const Module& m = ctx.module();
  const Module::Block* blk = m.block(d, w);
  if (!blk) {
    for (const auto& c : functional)
      if (c != 0) throw std::invalid_argument("phi_transport: no such block");
    return {};
  }
  if (functional.size() != blk->elems.size())
    throw std::invalid_argument("phi_transport: functional size mismatch");

  for (const auto& rad : ctx.radical_coords(d, w)) {
    Rat dot = 0;
    for (std::size_t j = 0; j < rad.size(); ++j) dot += rad[j] * functional[j];
    if (dot != 0)
      throw std::domain_error("phi_transport: functional does not annihilate the radical");
  }

  // Solve pair(y, b_j) = functional_j for y in the K-part of (d, -w).
  const auto& ksrc = ctx.split(d, -w).k_basis;
  const RatMat& g = ctx.gram(d, -w);  // rows (d,-w), cols (d,w)
  RatMat sys(functional.size(), ksrc.size());
  for (std::size_t a = 0; a < ksrc.size(); ++a)
    for (std::size_t j = 0; j < functional.size(); ++j) {
      Rat acc = 0;
      for (std::size_t i = 0; i < ksrc[a].size(); ++i)
        acc += ksrc[a][i] * g(i, j);
      sys(j, a) = acc;
    }
  SolveResult sol = solve(sys, functional);
  if (!sol.consistent || !sol.unique)
    throw std::logic_error("phi_transport: K-Gram solve failed");
  std::vector<Rat> coords(m.block(d, -w)->elems.size());
  for (std::size_t a = 0; a < ksrc.size(); ++a)
    for (std::size_t i = 0; i < coords.size(); ++i)
      coords[i] += sol.x[a] * ksrc[a][i];
  return from_block_coords(m, d, -w, coords);
}

JForm::JForm(const PairingContext& ctx, bool parallel) : ctx_(ctx) {
  const Module& m = ctx.module();
  m_ = ctx.first_radical_grade();
  if (m_ > m.max_grade())
    throw std::domain_error("JForm: no radical within the truncation");

  rprime_ = 0;
  for (const auto& b : m.blocks(m_)) {
    if (ctx.radical_dim(m_, b.weight) > 0) {
      rprime_ = b.weight;
      break;
    }
  }
  if (ctx.radical_dim(m_, rprime_) != 1)
    throw std::domain_error("J not irreducible at this truncation");
  s_ = from_block_coords(m, m_, rprime_, ctx.radical_coords(m_, rprime_)[0]);

  vprime_ = std::make_unique<Module>(
      GVMConfig{rprime_, m.cfg().level, m.max_grade() - m_});
  vprime_pairing_ = std::make_unique<PairingContext>(*vprime_, parallel);

  // Lowered copies of the generator: f(0)^j s.
  std::vector<Elem> fs(rprime_ + 1);
  fs[0] = s_;
  for (int j = 1; j <= rprime_; ++j) fs[j] = act(m, Gen::F, 0, fs[j - 1]).elem;

  for (int dj = m_; dj <= m.max_grade(); ++dj) {
    const int dsrc = dj - m_;
    for (const auto& b : vprime_->blocks(dsrc)) {
      const Module::Block* target = m.block(dj, b.weight);
      RatMat phi(target ? target->elems.size() : 0, b.elems.size());
      for (std::size_t j = 0; j < b.elems.size(); ++j) {
        const TermKey& key = vprime_->basis(dsrc)[b.elems[j]];
        Elem img = act_word(m, key.first, fs[key.second]).elem;
        auto coords = block_coords(m, dj, b.weight, img);
        for (std::size_t i = 0; i < coords.size(); ++i) phi(i, j) = coords[i];
      }
      std::size_t rank = rank_ff(phi);
      std::size_t want_target = ctx.radical_dim(dj, b.weight);
      std::size_t want_source =
          b.elems.size() - vprime_pairing_->radical_dim(dsrc, b.weight);
      if (rank != want_target || rank != want_source)
        throw std::domain_error("J not irreducible at this truncation");
      phi_.emplace(std::make_pair(dj, b.weight), std::move(phi));
    }
  }
}

std::vector<Rat> JForm::preimage_coords(int d, int w, const Elem& u) const {
  auto it = phi_.find({d, w});
  if (it == phi_.end()) throw std::out_of_range("JForm: block outside the radical range");
  SolveResult sol = solve(it->second, block_coords(ctx_.module(), d, w, u));
  if (!sol.consistent)
    throw std::domain_error("JForm: element is not in the radical");
  return sol.x;
}

Rat JForm::value(const Elem& u, const Elem& v) const {
  if (u.is_zero() || v.is_zero()) return 0;
  auto du = grade_of(u), dv = grade_of(v);
  auto wu = hweight_of(u, ctx_.module().cfg().n);
  auto wv = hweight_of(v, ctx_.module().cfg().n);
  if (!du || !dv || !wu || !wv)
    throw std::invalid_argument("JForm::value: arguments must be homogeneous");
  if (*du != *dv || *wu + *wv != 0) return 0;

  auto xu = preimage_coords(*du, *wu, u);
  auto xv = preimage_coords(*dv, *wv, v);
  const RatMat& g = vprime_pairing_->gram(*du - m_, *wu);
  Rat total = 0;
  for (std::size_t i = 0; i < xu.size(); ++i) {
    if (xu[i] == 0) continue;
    for (std::size_t j = 0; j < xv.size(); ++j) total += xu[i] * g(i, j) * xv[j];
  }
  return total;
}

}  // namespace sl2hat
