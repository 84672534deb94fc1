#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl2hat/gvm.hpp"
#include "sl2hat/pairing.hpp"
#include "sl2hat/sl2_core.hpp"
#include "sl2hat/weyl.hpp"

namespace sl2hat {

struct ItwParams {
  int p = 0, q = 0, r = 0;
  long level = 1;
  int max_grade = 2;
  std::uint64_t order_seed = 0;     // permutes the spanning-set enumeration
  bool override_conditions = false;  // attempt the build even if checks fail
};

// Hypothesis report: r' and r'' are the first two radical weights predicted
// by the resolution, and the construction needs the hom spaces into them to
// vanish. The descent data covers the quotient theorem on the q side.
struct ConditionReport {
  bool representable = false;  // r = m(j, n) for some 0 <= n <= level
  int j = -1;
  long n = -1;
  long r_prime = -1, r_second = -1;
  int hom_pq_rprime = 0, hom_pq_rsecond = 0;
  bool construction_ok = false;

  bool q_representable = false;
  long q_prime = -1;
  int hom_pr_qprime = 0;
  bool descent_ok = false;

  std::string note;
};
ConditionReport check_thm63_conditions(int p, int q, int r, long level);

// The component family Y_{-m}: M(p) (x) M(q) -> V^{M(r)}(m) for 0 <= m <= N,
// together with its split into the K-part (transported through the pairing)
// and the J-part (living in the radical). Entry [m][i*(q+1)+j] is
// Y_{-m}(u_i) v_j.
struct ItwTable {
  ItwParams params;
  Rat x_offset;  // h3 - h1 - h2, the non-integer part of the x-exponents
  int first_radical_grade = -1;  // -1 when no radical appears by the truncation
  std::vector<std::vector<Elem>> y, yk, yj;
  std::vector<std::string> warnings;

  const Elem& at(int depth_m, int i, int j) const {
    return y[depth_m][static_cast<std::size_t>(i) * (params.q + 1) + j];
  }
};

enum class BuildStatus { Ok, InconsistentRecursion, Indeterminate };

struct BuildResult {
  BuildStatus status = BuildStatus::Indeterminate;
  std::string message;
  ConditionReport conditions;
  std::optional<ItwTable> table;
  bool ok() const { return status == BuildStatus::Ok; }
};

// Owns the three truncated modules and the pairing machinery on the target.
class ItwContext {
 public:
  explicit ItwContext(const ItwParams& params);

  const ItwParams& params() const { return params_; }
  const Module& mod_p() const { return *mod_p_; }
  const Module& mod_q() const { return *mod_q_; }
  const Module& mod_r() const { return *mod_r_; }
  const PairingContext& pairing_r() const { return *pairing_r_; }
  const PairingContext& pairing_q();  // built on first use (descent)
  const JForm* jform() const { return jform_.get(); }  // null above truncation

 private:
  ItwParams params_;
  std::unique_ptr<Module> mod_p_, mod_q_, mod_r_;
  std::unique_ptr<PairingContext> pairing_r_, pairing_q_;
  std::unique_ptr<JForm> jform_;
};

// Runs the recursive construction seeded by the homomorphism f. The defining
// linear system at each depth (spanning-vector equations plus radical
// orthogonality) must be exactly consistent; an inconsistency is reported,
// not thrown, since it is the designed failure mode of a bad hypothesis.
BuildResult build_components(ItwContext& ctx, const CGHom& f);

struct VerifyReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Exhaustive check of [g(n), Y_m(u)]v = Y_{m+n}(g(0)u)v for 0 <= n <= N
// together with the grade and weight contract of every stored component.
VerifyReport verify_component_commutators(const ItwContext& ctx,
                                          const ItwTable& table);

// Evaluator for components of Y(a, x)b with PBW arguments, built from the
// table by the commutator and iterate recursions. component(a, b, g) is the
// coefficient landing in V^{M(r)}(g); its x-exponent is
// (g - depth a - depth b) + x_offset.
class Extension {
 public:
  enum class Order { AFirst, BFirst };
  Extension(const ItwContext& ctx, const ItwTable& table,
            Order order = Order::AFirst);

  Elem component(const TermKey& a, const TermKey& b, int out_grade);
  Elem component(const Elem& a, const Elem& b, int out_grade);

 private:
  const ItwContext& ctx_;
  const ItwTable& table_;
  Order order_;
  std::map<std::tuple<TermKey, TermKey, int>, Elem> memo_;

  Elem compute(const TermKey& a, const TermKey& b, int out_grade);
};

// Commutator formula for all modes |n| <= N and the iterate formula for
// g(-n) against straightened products, on PBW arguments of grade < N.
VerifyReport verify_jacobi_truncated(const ItwContext& ctx,
                                     const ItwTable& table);

struct DescendResult {
  bool conditions_ok = false;
  std::string message;
  VerifyReport radical_check;         // image of J(q) stays inside J(r)
  VerifyReport quotient_commutators;  // commutator suite on the quotient table
  std::optional<ItwTable> quotient;   // K-representative components
  bool ok() const {
    return conditions_ok && radical_check.ok() && quotient_commutators.ok();
  }
};

DescendResult descend_to_irreducible(ItwContext& ctx, const ItwTable& table);

enum class Fusion { Zero = 0, One = 1, Indeterminate = 2 };

// Closed-form fusion rules among generalized Verma modules (target V^{M(r)})
// and into irreducible quotients (target L(r)); Indeterminate when r (or q)
// is not a resolution weight or a hypothesis fails.
Fusion fusion_gvm(int p, int q, int r, long level);
Fusion fusion_irr(int p, int q, int r, long level);

std::string serialize(const ItwTable& table);
std::uint64_t table_checksum(const ItwTable& table);

}  // namespace sl2hat
