#include "sl2hat/intertwiner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sl2hat {

namespace {

// Unique (j, n) with m(j, n) = r, if any: for fixed j the values fill the
// interval [(level+2) j, (level+2) j + level] and consecutive intervals are
// disjoint.
std::optional<std::pair<int, long>> find_resolution_index(long r, long level) {
  if (r < 0 || level < 0) return std::nullopt;
  for (int j = 0; (level + 2) * j <= r; ++j) {
    long lo = (level + 2) * j;
    if (r > lo + level) continue;
    long n = (j % 2 == 0) ? r - lo : lo + level - r;
    if (n >= 0 && n <= level) return std::make_pair(j, n);
  }
  return std::nullopt;
}

long binom_long(long n, long k) {
  if (k < 0) return 0;
  long num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

// Deterministic permutation, independent of library internals.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::uint64_t seed) {
  std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[next() % i]);
}

}  // namespace

ConditionReport check_thm63_conditions(int p, int q, int r, long level) {
  ConditionReport rep;
  if (level < 0) {
    rep.note = "level must be a nonnegative integer";
    return rep;
  }
  if (auto jn = find_resolution_index(r, level)) {
    rep.representable = true;
    rep.j = jn->first;
    rep.n = jn->second;
    rep.r_prime = m_of(rep.j + 1, rep.n, level);
    rep.r_second = m_of(rep.j + 2, rep.n, level);
    rep.hom_pq_rprime = hom_dim(p, q, static_cast<int>(rep.r_prime));
    rep.hom_pq_rsecond = hom_dim(p, q, static_cast<int>(rep.r_second));
    rep.construction_ok = rep.hom_pq_rprime == 0 && rep.hom_pq_rsecond == 0;
    if (!rep.construction_ok)
      rep.note = "nonzero homomorphisms into the first radical weights";
  } else {
    rep.note =
        "target is not a resolution weight; irreducibility of its maximal "
        "proper submodule is not established";
  }
  if (auto jn = find_resolution_index(q, level)) {
    rep.q_representable = true;
    rep.q_prime = m_of(jn->first + 1, jn->second, level);
    rep.hom_pr_qprime = hom_dim(p, r, static_cast<int>(rep.q_prime));
    rep.descent_ok = rep.construction_ok && rep.hom_pr_qprime == 0;
  }
  return rep;
}

ItwContext::ItwContext(const ItwParams& params) : params_(params) {
  if (params.p < 0 || params.q < 0 || params.r < 0 || params.level < 0 ||
      params.max_grade < 0)
    throw std::domain_error("ItwContext: parameters out of range");
  Rat level = make_rat(params.level);
  mod_p_ = std::make_unique<Module>(GVMConfig{params.p, level, params.max_grade});
  mod_q_ = std::make_unique<Module>(GVMConfig{params.q, level, params.max_grade});
  mod_r_ = std::make_unique<Module>(GVMConfig{params.r, level, params.max_grade});
  pairing_r_ = std::make_unique<PairingContext>(*mod_r_);
  if (pairing_r_->first_radical_grade() <= params.max_grade)
    jform_ = std::make_unique<JForm>(*pairing_r_);
}

const PairingContext& ItwContext::pairing_q() {
  if (!pairing_q_) pairing_q_ = std::make_unique<PairingContext>(*mod_q_);
  return *pairing_q_;
}

namespace {

struct Equation {
  std::vector<Rat> lhs;
  Rat rhs;
};

// Assembles and solves a shuffled equation list; empty lhs rows assert
// rhs = 0. Returns nullopt on inconsistency.
std::optional<std::vector<Rat>> solve_equations(std::vector<Equation> eqs,
                                                std::size_t unknowns,
                                                std::uint64_t seed) {
  seeded_shuffle(eqs, seed);
  RatMat a(eqs.size(), unknowns);
  std::vector<Rat> b(eqs.size());
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = 0; j < eqs[i].lhs.size(); ++j) a(i, j) = eqs[i].lhs[j];
    b[i] = eqs[i].rhs;
  }
  SolveResult sol = solve(a, b);
  if (!sol.consistent) return std::nullopt;
  if (unknowns > 0 && !sol.unique)
    throw std::logic_error("spanning equations do not determine the component");
  return sol.x;
}

}  // namespace

BuildResult build_components(ItwContext& ctx, const CGHom& f) {
  const ItwParams& prm = ctx.params();
  if (f.p != prm.p || f.q != prm.q || f.r != prm.r)
    throw std::invalid_argument("build_components: homomorphism shape mismatch");

  BuildResult res;
  res.conditions = check_thm63_conditions(prm.p, prm.q, prm.r, prm.level);
  if (!res.conditions.construction_ok && !prm.override_conditions) {
    res.status = BuildStatus::Indeterminate;
    res.message = "construction hypotheses fail: " + res.conditions.note;
    return res;
  }

  const Module& mr = ctx.mod_r();
  const int N = prm.max_grade;
  const int q1 = prm.q + 1;
  const int pairs = (prm.p + 1) * q1;

  ItwTable t;
  t.params = prm;
  t.x_offset = conformal_weight(mr.cfg(), 0) -
               conformal_weight(ctx.mod_p().cfg(), 0) -
               conformal_weight(ctx.mod_q().cfg(), 0);
  const int first_rad = ctx.pairing_r().first_radical_grade();
  t.first_radical_grade = first_rad <= N ? first_rad : -1;
  if (first_rad > N)
    t.warnings.push_back(
        "radical not visible within the truncation; the radical-sector "
        "components vanish trivially");
  t.y.assign(N + 1, std::vector<Elem>(pairs));
  t.yk = t.y;
  t.yj = t.y;

  // Depth 0 is the seed homomorphism embedded in the lowest level.
  for (int i = 0; i <= prm.p; ++i)
    for (int j = 0; j <= prm.q; ++j) {
      Elem e;
      const auto& img = f(i, j);
      for (int k = 0; k <= prm.r; ++k) e.add(TermKey{{}, k}, img[k]);
      t.yk[0][i * q1 + j] = e;
      t.y[0][i * q1 + j] = std::move(e);
    }

  const Gen gens[3] = {Gen::E, Gen::H, Gen::F};
  for (int m = 1; m <= N; ++m) {
    // Pairing-side functional: lambda(z) = <Y_{-m}(u_i) v_j, z> on the block
    // of grade m and weight opposite to u_i (x) v_j. Equations range over the
    // spanning vectors g(-n) w together with radical orthogonality.
    for (int i = 0; i <= prm.p; ++i)
      for (int j = 0; j <= prm.q; ++j) {
        const int wuv = (prm.p - 2 * i) + (prm.q - 2 * j);
        const Module::Block* blk = mr.block(m, -wuv);
        const std::size_t bdim = blk ? blk->elems.size() : 0;

        std::vector<Equation> eqs;
        for (Gen g : gens)
          for (int n = 1; n <= m; ++n) {
            const Module::Block* src = mr.block(m - n, -wuv - gen_hweight(g));
            if (!src) continue;
            for (int idx : src->elems) {
              const TermKey& wkey = mr.basis(m - n)[idx];
              Elem w = Elem::basis(wkey.first, wkey.second);
              Elem spanning = act(mr, g, -n, w).elem;
              Equation eq;
              eq.lhs = bdim ? block_coords(mr, m, -wuv, spanning)
                            : std::vector<Rat>{};
              for (const auto& tm : irrep_action(prm.p, g, i))
                eq.rhs -= tm.c * pair_form(mr, t.y[m - n][tm.k * q1 + j], w);
              eqs.push_back(std::move(eq));
            }
          }
        if (blk)
          for (const auto& rad : ctx.pairing_r().radical_coords(m, -wuv))
            eqs.push_back({rad, Rat(0)});

        auto lambda = solve_equations(std::move(eqs), bdim, prm.order_seed);
        if (!lambda) {
          res.status = BuildStatus::InconsistentRecursion;
          std::ostringstream os;
          os << "inconsistent recursion system at depth " << m << ", component ("
             << i << "," << j << "): the equations force the seed "
             << "homomorphism to vanish";
          res.message = os.str();
          return res;
        }
        if (bdim)
          t.yk[m][i * q1 + j] =
              phi_transport(ctx.pairing_r(), m, -wuv, *lambda);
      }

    // Radical sector: same recursion against the transported form on the
    // radical, corrected by the radical part of g(n) acting on the new
    // pairing-side components. Starts one grade above the radical bottom.
    if (first_rad <= N && m > first_rad) {
      const JForm& jf = *ctx.jform();
      for (int i = 0; i <= prm.p; ++i)
        for (int j = 0; j <= prm.q; ++j) {
          const int wuv = (prm.p - 2 * i) + (prm.q - 2 * j);
          const auto& unknown_rad = ctx.pairing_r().radical_coords(m, wuv);
          const auto& test_rad = ctx.pairing_r().radical_coords(m, -wuv);
          const std::size_t sdim = unknown_rad.size();

          std::vector<Elem> unknown_elems, test_elems;
          for (const auto& c : unknown_rad)
            unknown_elems.push_back(from_block_coords(mr, m, wuv, c));
          for (const auto& c : test_rad)
            test_elems.push_back(from_block_coords(mr, m, -wuv, c));

          RatMat jgram(sdim, test_elems.size());
          for (std::size_t a = 0; a < sdim; ++a)
            for (std::size_t b = 0; b < test_elems.size(); ++b)
              jgram(a, b) = jf.value(unknown_elems[a], test_elems[b]);

          std::vector<Equation> eqs;
          for (Gen g : gens)
            for (int n = 1; n <= m - first_rad; ++n) {
              const auto& zs =
                  ctx.pairing_r().radical_coords(m - n, -wuv - gen_hweight(g));
              const Module::Block* tgt = mr.block(m, -wuv);
              RatMat span(tgt ? tgt->elems.size() : 0, test_rad.size());
              for (std::size_t b = 0; b < test_rad.size(); ++b)
                for (std::size_t t2 = 0; t2 < test_rad[b].size(); ++t2)
                  span(t2, b) = test_rad[b][t2];
              for (const auto& zc : zs) {
                Elem zp = from_block_coords(mr, m - n,
                                            -wuv - gen_hweight(g), zc);
                Elem z = act(mr, g, -n, zp).elem;
                // Express z over the radical basis of (m, -wuv).
                SolveResult in_rad =
                    solve(span, block_coords(mr, m, -wuv, z));
                if (!in_rad.consistent)
                  throw std::logic_error(
                      "radical is not stable under the action");
                Equation eq;
                eq.lhs.assign(sdim, Rat(0));
                for (std::size_t a = 0; a < sdim; ++a)
                  for (std::size_t b = 0; b < test_rad.size(); ++b)
                    eq.lhs[a] += jgram(a, b) * in_rad.x[b];
                Elem knpart =
                    act(mr, g, n, t.yk[m][i * q1 + j]).elem;
                eq.rhs = jf.value(ctx.pairing_r().project_j(knpart), zp);
                for (const auto& tm : irrep_action(prm.p, g, i))
                  eq.rhs -= tm.c * jf.value(t.yj[m - n][tm.k * q1 + j], zp);
                eqs.push_back(std::move(eq));
              }
            }

          auto mu = solve_equations(std::move(eqs), sdim, prm.order_seed);
          if (!mu) {
            res.status = BuildStatus::InconsistentRecursion;
            std::ostringstream os;
            os << "inconsistent recursion system (radical sector) at depth "
               << m << ", component (" << i << "," << j << ")";
            res.message = os.str();
            return res;
          }
          Elem part;
          for (std::size_t a = 0; a < sdim; ++a)
            part += (*mu)[a] * unknown_elems[a];
          t.yj[m][i * q1 + j] = std::move(part);
        }
    }

    for (int ij = 0; ij < pairs; ++ij) t.y[m][ij] = t.yk[m][ij] + t.yj[m][ij];
  }

  res.status = BuildStatus::Ok;
  res.message = "ok";
  res.table = std::move(t);
  return res;
}

VerifyReport verify_component_commutators(const ItwContext& ctx,
                                          const ItwTable& table) {
  const ItwParams& prm = table.params;
  const Module& mr = ctx.mod_r();
  const int N = prm.max_grade;
  const int q1 = prm.q + 1;
  VerifyReport rep;

  // Grading and weight contract of every stored component.
  for (int m = 0; m <= N; ++m)
    for (int i = 0; i <= prm.p; ++i)
      for (int j = 0; j <= prm.q; ++j) {
        const Elem& v = table.at(m, i, j);
        ++rep.checked;
        if (v.is_zero()) continue;
        auto d = grade_of(v);
        auto w = hweight_of(v, prm.r);
        if (!d || *d != m || !w || *w != (prm.p - 2 * i) + (prm.q - 2 * j)) {
          std::ostringstream os;
          os << "grading contract violated at depth " << m << ", component ("
             << i << "," << j << ")";
          rep.failures.push_back(os.str());
        }
      }

  struct Tuple {
    Gen g;
    int n, m, i, j;
  };
  std::vector<Tuple> tuples;
  for (Gen g : {Gen::E, Gen::H, Gen::F})
    for (int n = 0; n <= N; ++n)
      for (int m = 0; m <= N; ++m)
        for (int i = 0; i <= prm.p; ++i)
          for (int j = 0; j <= prm.q; ++j) tuples.push_back({g, n, m, i, j});

  std::vector<std::string> fails(tuples.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tuples.size());
       ++t) {
    const auto [g, n, m, i, j] = tuples[t];
    Elem lhs = act(mr, g, n, table.at(m, i, j)).elem;
    if (n == 0)
      for (const auto& tm : irrep_action(prm.q, g, j))
        lhs -= tm.c * table.y[m][i * q1 + tm.k];
    Elem rhs;
    if (m - n >= 0)
      for (const auto& tm : irrep_action(prm.p, g, i))
        rhs += tm.c * table.y[m - n][tm.k * q1 + j];
    if (!(lhs == rhs)) {
      std::ostringstream os;
      os << "commutator failure: g=" << gen_name(g) << " n=" << n
         << " depth=" << m << " u=" << i << " v=" << j;
      fails[t] = os.str();
    }
  }
  rep.checked += tuples.size();
  for (auto& f : fails)
    if (!f.empty()) rep.failures.push_back(std::move(f));
  return rep;
}

Extension::Extension(const ItwContext& ctx, const ItwTable& table, Order order)
    : ctx_(ctx), table_(table), order_(order) {}

Elem Extension::component(const TermKey& a, const TermKey& b, int out_grade) {
  if (out_grade < 0 || out_grade > ctx_.params().max_grade) return {};
  auto key = std::make_tuple(a, b, out_grade);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Elem val = compute(a, b, out_grade);
  memo_.emplace(std::move(key), val);
  return val;
}

Elem Extension::component(const Elem& a, const Elem& b, int out_grade) {
  Elem out;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      Elem part = component(ka, kb, out_grade);
      part *= ca * cb;
      out += part;
    }
  return out;
}

Elem Extension::compute(const TermKey& a, const TermKey& b, int gr) {
  const int da = depth(a.first);
  const int db = depth(b.first);
  const bool peel_b_first = order_ == Order::BFirst && db > 0;

  if (!peel_b_first && da > 0) {
    // Iterate recursion on the leading generator of a.
    const AffGen head = a.first.front();
    const TermKey atail{Word(a.first.begin() + 1, a.first.end()), a.second};
    const int n0 = depth(head);
    Elem out;
    for (int i = 0; gr - n0 - i >= 0; ++i) {
      Elem inner = component(atail, b, gr - n0 - i);
      if (inner.is_zero()) continue;
      Rat c = make_rat(binom_long(n0 + i - 1, i));
      out += c * act(ctx_.mod_r(), head.g, -(n0 + i), inner).elem;
    }
    const Rat sign = make_rat(n0 % 2 == 0 ? -1 : 1);  // (-1)^{n0+1}
    const Elem be = Elem::basis(b.first, b.second);
    for (int i = 0; i <= db; ++i) {
      Elem moved = act(ctx_.mod_q(), head.g, i, be).elem;
      if (!moved.is_zero()) {
        Elem part;
        for (const auto& [kb, cb] : moved.terms)
          part += cb * component(atail, kb, gr);
        out += (sign * binom_long(n0 + i - 1, i)) * part;
      }
    }
    return out;
  }

  if (db > 0) {
    // Commutator recursion on the leading generator of b.
    const AffGen head = b.first.front();
    const TermKey btail{Word(b.first.begin() + 1, b.first.end()), b.second};
    const int n0 = depth(head);
    Elem out = act(ctx_.mod_r(), head.g, -n0, component(a, btail, gr - n0)).elem;
    const Elem ae = Elem::basis(a.first, a.second);
    for (int i = 0; i <= da; ++i) {
      Elem moved = act(ctx_.mod_p(), head.g, i, ae).elem;
      if (!moved.is_zero()) {
        Elem part;
        for (const auto& [ka, ca] : moved.terms)
          part += ca * component(ka, btail, gr);
        out -= make_rat(binom_long(-n0, i)) * part;
      }
    }
    return out;
  }

  return table_.y[gr][static_cast<std::size_t>(a.second) *
                          (ctx_.params().q + 1) +
                      b.second];
}

VerifyReport verify_jacobi_truncated(const ItwContext& ctx,
                                     const ItwTable& table) {
  const ItwParams& prm = table.params;
  const int N = prm.max_grade;
  VerifyReport rep;

  std::vector<TermKey> as, bs;
  for (int d = 0; d < N; ++d) {
    for (const auto& k : ctx.mod_p().basis(d)) as.push_back(k);
    for (const auto& k : ctx.mod_q().basis(d)) bs.push_back(k);
  }
  std::vector<std::pair<TermKey, TermKey>> args;
  for (const auto& a : as)
    for (const auto& b : bs) args.emplace_back(a, b);

  std::vector<std::vector<std::string>> fails(args.size());
  std::vector<std::size_t> counts(args.size(), 0);

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    Extension ext(ctx, table);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(args.size());
         ++t) {
      const auto& [a, b] = args[t];
      const int da = depth(a.first), db = depth(b.first);
      Elem ae = Elem::basis(a.first, a.second);
      Elem be = Elem::basis(b.first, b.second);

      // Commutator formula: g(n) Y(a,x)b - Y(a,x) g(n)b against
      // sum_i C(n,i) Y(g(i)a, x)b, componentwise.
      for (Gen g : {Gen::E, Gen::H, Gen::F})
        for (int n = -N; n <= N; ++n) {
          if (db - n > N) continue;  // argument exceeds the truncation
          ActResult gb = act(ctx.mod_q(), g, n, be);
          if (gb.truncated) continue;
          for (int dd = 0; dd <= N; ++dd) {
            if (dd - n > N) continue;  // action result exceeds the truncation
            Elem lhs = act(ctx.mod_r(), g, n, ext.component(a, b, dd)).elem;
            lhs -= ext.component(ae, gb.elem, dd - n);
            Elem rhs;
            for (int i = 0; i <= da; ++i) {
              if (binom_long(n, i) == 0) continue;
              Elem ga = act(ctx.mod_p(), g, i, ae).elem;
              if (!ga.is_zero())
                rhs += make_rat(binom_long(n, i)) *
                       ext.component(ga, be, dd - n);
            }
            ++counts[t];
            if (!(lhs == rhs)) {
              std::ostringstream os;
              os << "commutator formula failure: a=" << render(a.first) << "[u"
                 << a.second << "] b=" << render(b.first) << "[u" << b.second
                 << "] g=" << gen_name(g) << " n=" << n << " grade=" << dd;
              fails[t].push_back(os.str());
            }
          }
        }

      // Iterate formula for g(-n)a against the two-sided residue expansion.
      for (Gen g : {Gen::E, Gen::H, Gen::F})
        for (int n = 1; da + n <= N; ++n) {
          Word prod;
          prod.push_back({g, -n});
          prod.insert(prod.end(), a.first.begin(), a.first.end());
          NegCombination lhs_words = straighten(prod);
          for (int dd = 0; dd <= N; ++dd) {
            Elem lhs;
            for (const auto& [w, c] : lhs_words)
              lhs += c * ext.component(TermKey{w, a.second}, b, dd);
            Elem rhs;
            for (int i = 0; dd - n - i >= 0; ++i) {
              Elem inner = ext.component(a, b, dd - n - i);
              if (!inner.is_zero())
                rhs += make_rat(binom_long(n + i - 1, i)) *
                       act(ctx.mod_r(), g, -(n + i), inner).elem;
            }
            const Rat sign = make_rat(n % 2 == 0 ? -1 : 1);
            for (int i = 0; i <= db; ++i) {
              Elem gb2 = act(ctx.mod_q(), g, i, be).elem;
              if (!gb2.is_zero())
                rhs += (sign * binom_long(n + i - 1, i)) *
                       ext.component(ae, gb2, dd);
            }
            ++counts[t];
            if (!(lhs == rhs)) {
              std::ostringstream os;
              os << "iterate formula failure: a=" << render(a.first) << "[u"
                 << a.second << "] b=" << render(b.first) << "[u" << b.second
                 << "] g=" << gen_name(g) << " n=" << n << " grade=" << dd;
              fails[t].push_back(os.str());
            }
          }
        }
    }
  }

  for (std::size_t t = 0; t < args.size(); ++t) {
    rep.checked += counts[t];
    for (auto& f : fails[t]) rep.failures.push_back(std::move(f));
  }
  return rep;
}

DescendResult descend_to_irreducible(ItwContext& ctx, const ItwTable& table) {
  const ItwParams& prm = table.params;
  const int N = prm.max_grade;
  const int q1 = prm.q + 1;
  DescendResult res;

  ConditionReport cond = check_thm63_conditions(prm.p, prm.q, prm.r, prm.level);
  res.conditions_ok = cond.q_representable && cond.hom_pr_qprime == 0;
  if (!res.conditions_ok) {
    res.message = cond.q_representable
                      ? "nonzero homomorphisms obstruct the descent"
                      : "source is not a resolution weight";
    if (!prm.override_conditions) return res;
  } else {
    res.message = "ok";
  }

  const PairingContext& pq = ctx.pairing_q();
  const PairingContext& pr = ctx.pairing_r();
  Extension ext(ctx, table);

  // Every component of Y(u, x) v for v in the radical of the source must
  // land in the radical of the target.
  for (int dq = pq.first_radical_grade(); dq <= N; ++dq) {
    auto rad = pq.radical_basis(dq);
    for (std::size_t rv = 0; rv < rad.size(); ++rv)
      for (int i = 0; i <= prm.p; ++i)
        for (int gr = 0; gr <= N; ++gr) {
          Elem comp = ext.component(Elem::lowest(i), rad[rv], gr);
          ++res.radical_check.checked;
          if (!pr.project_k(comp).is_zero()) {
            std::ostringstream os;
            os << "descent obstruction at grade " << gr << ": image of radical "
               << "vector " << rv << " (source grade " << dq << ", u=" << i
               << ") leaves the target radical";
            res.radical_check.failures.push_back(os.str());
          }
        }
  }

  // Quotient table on K-representatives, with the projected action.
  ItwTable qt = table;
  qt.warnings.push_back("quotient table on K-representatives");
  for (int m = 0; m <= N; ++m)
    for (int ij = 0; ij < (prm.p + 1) * q1; ++ij) {
      qt.y[m][ij] = pr.project_k(table.y[m][ij]);
      qt.yk[m][ij] = qt.y[m][ij];
      qt.yj[m][ij] = Elem{};
    }
  for (Gen g : {Gen::E, Gen::H, Gen::F})
    for (int n = 0; n <= N; ++n)
      for (int m = 0; m <= N; ++m)
        for (int i = 0; i <= prm.p; ++i)
          for (int j = 0; j <= prm.q; ++j) {
            Elem lhs = pr.project_k(act(ctx.mod_r(), g, n, qt.at(m, i, j)).elem);
            if (n == 0)
              for (const auto& tm : irrep_action(prm.q, g, j))
                lhs -= tm.c * qt.y[m][i * q1 + tm.k];
            Elem rhs;
            if (m - n >= 0)
              for (const auto& tm : irrep_action(prm.p, g, i))
                rhs += tm.c * qt.y[m - n][tm.k * q1 + j];
            ++res.quotient_commutators.checked;
            if (!(lhs == rhs)) {
              std::ostringstream os;
              os << "quotient commutator failure: g=" << gen_name(g)
                 << " n=" << n << " depth=" << m << " u=" << i << " v=" << j;
              res.quotient_commutators.failures.push_back(os.str());
            }
          }
  res.quotient = std::move(qt);
  return res;
}

Fusion fusion_gvm(int p, int q, int r, long level) {
  ConditionReport rep = check_thm63_conditions(p, q, r, level);
  if (!rep.construction_ok) return Fusion::Indeterminate;
  return hom_dim(p, q, r) == 1 ? Fusion::One : Fusion::Zero;
}

Fusion fusion_irr(int p, int q, int r, long level) {
  ConditionReport rep = check_thm63_conditions(p, q, r, level);
  if (!rep.construction_ok || !rep.q_representable || rep.hom_pr_qprime != 0)
    return Fusion::Indeterminate;
  return hom_dim(p, q, r) == 1 ? Fusion::One : Fusion::Zero;
}

std::string serialize(const ItwTable& table) {
  std::ostringstream os;
  os << "p=" << table.params.p << " q=" << table.params.q
     << " r=" << table.params.r << " level=" << table.params.level
     << " N=" << table.params.max_grade << " offset=" << to_string(table.x_offset)
     << " first_radical_grade=" << table.first_radical_grade << "\n";
  const int q1 = table.params.q + 1;
  for (int m = 0; m <= table.params.max_grade; ++m)
    for (int i = 0; i <= table.params.p; ++i)
      for (int j = 0; j <= table.params.q; ++j) {
        os << "Y[" << -m << "](" << i << "," << j
           << ") = " << render(table.y[m][i * q1 + j]);
        os << " | K: " << render(table.yk[m][i * q1 + j]);
        os << " | J: " << render(table.yj[m][i * q1 + j]) << "\n";
      }
  return os.str();
}

std::uint64_t table_checksum(const ItwTable& table) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : serialize(table)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace sl2hat
