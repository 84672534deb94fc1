#include "sl2hat/cli.hpp"

#include <json.hpp>
#include <ostream>
#include <sstream>

#include "sl2hat/intertwiner.hpp"
#include "sl2hat/pairing.hpp"
#include "sl2hat/weyl.hpp"

namespace sl2hat::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cols = std::vector<std::pair<std::string, Json>>;

class RowWriter {
 public:
  RowWriter(Format fmt, std::ostream& out) : fmt_(fmt), out_(out) {}

  void write(const Cols& cols) {
    switch (fmt_) {
      case Format::Table: {
        bool first = true;
        for (const auto& [k, v] : cols) {
          if (!first) out_ << " ";
          first = false;
          out_ << k << "=" << plain(v);
        }
        out_ << "\n";
        break;
      }
      case Format::Csv: {
        if (!header_done_) {
          bool first = true;
          for (const auto& [k, v] : cols) {
            if (!first) out_ << ",";
            first = false;
            out_ << k;
          }
          out_ << "\n";
          header_done_ = true;
        }
        bool first = true;
        for (const auto& [k, v] : cols) {
          if (!first) out_ << ",";
          first = false;
          out_ << plain(v);
        }
        out_ << "\n";
        break;
      }
      case Format::JsonLines: {
        Json obj;
        for (const auto& [k, v] : cols) obj[k] = v;
        out_ << obj.dump() << "\n";
        break;
      }
    }
  }

 private:
  static std::string plain(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  Format fmt_;
  std::ostream& out_;
  bool header_done_ = false;
};

int usage_error(std::ostream& err, const std::string& msg) {
  err << "error: " << msg << "\n";
  return 3;
}

bool need(std::ostream& err, bool ok, const std::string& what, int& rc) {
  if (!ok) {
    rc = usage_error(err, what);
    return false;
  }
  return true;
}

int run_fusion(const RunConfig& cfg, RowWriter& w, std::ostream& err) {
  int rc = 0;
  if (!need(err, cfg.p >= 0 && cfg.q >= 0 && cfg.r >= 0 && cfg.level >= 0,
            "fusion requires --p --q --r --level (nonnegative)", rc))
    return rc;
  Fusion f = cfg.irreducible ? fusion_irr(cfg.p, cfg.q, cfg.r, cfg.level)
                             : fusion_gvm(cfg.p, cfg.q, cfg.r, cfg.level);
  std::string val = f == Fusion::Indeterminate
                        ? "indeterminate"
                        : std::to_string(static_cast<int>(f));
  w.write({{"p", cfg.p},
           {"q", cfg.q},
           {"r", cfg.r},
           {"level", cfg.level},
           {"target", cfg.irreducible ? "irreducible" : "gvm"},
           {"fusion", val}});
  return f == Fusion::Indeterminate ? 2 : 0;
}

int run_resolve(const RunConfig& cfg, RowWriter& w, std::ostream& err) {
  int rc = 0;
  if (!need(err, cfg.n >= 0 && cfg.level >= 0 && cfg.n <= cfg.level,
            "resolve requires --n --level with 0 <= n <= level", rc))
    return rc;
  for (const auto& term : resolution_weights(cfg.n, cfg.level, cfg.j_max))
    w.write({{"j", term.j}, {"weight", term.weight}, {"shift", term.shift}});
  return 0;
}

int run_radical_or_gram(const RunConfig& cfg, RowWriter& w, std::ostream& err,
                        bool with_entries) {
  int rc = 0;
  if (!need(err, cfg.n >= 0 && cfg.level >= 0 && cfg.grade >= 0,
            "requires --n --level --grade (nonnegative)", rc))
    return rc;
  Module mod(GVMConfig{cfg.n, make_rat(cfg.level), cfg.grade});
  PairingContext ctx(mod);
  for (int d = 0; d <= cfg.grade; ++d) {
    for (const auto& blk : mod.blocks(d)) {
      const RatMat& g = ctx.gram(d, blk.weight);
      std::size_t rank = rank_ff(g);
      Cols cols{{"grade", d},
                {"weight", blk.weight},
                {"dim", blk.elems.size()},
                {"rank", rank},
                {"corank", blk.elems.size() - rank}};
      if (with_entries) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < g.rows(); ++i) {
          Json row = Json::array();
          for (std::size_t j = 0; j < g.cols(); ++j)
            row.push_back(to_string(g(i, j)));
          rows.push_back(row);
        }
        cols.emplace_back("entries", rows.dump());
      }
      w.write(cols);
    }
    Cols total{{"grade", d},
               {"weight", "total"},
               {"dim", mod.dim(d)},
               {"rank", mod.dim(d) - ctx.radical_dim(d)},
               {"corank", ctx.radical_dim(d)}};
    if (with_entries) total.emplace_back("entries", "");
    w.write(total);
  }
  return 0;
}

int run_character(const RunConfig& cfg, RowWriter& w, std::ostream& err) {
  int rc = 0;
  if (!need(err,
            cfg.n >= 0 && cfg.level >= 0 && cfg.n <= cfg.level && cfg.grade >= 0,
            "character requires --n --level --grade with 0 <= n <= level", rc))
    return rc;
  Module mod(GVMConfig{cfg.n, make_rat(cfg.level), cfg.grade});
  PairingContext ctx(mod);
  bool all_match = true;
  for (int d = 0; d <= cfg.grade; ++d) {
    long euler = euler_dims(cfg.n, cfg.level, d);
    long nondeg = mod.dim(d) - ctx.radical_dim(d);
    bool match = euler == nondeg;
    all_match = all_match && match;
    w.write({{"grade", d},
             {"euler_dim", euler},
             {"gram_corank_dim", nondeg},
             {"match", match}});
  }
  return all_match ? 0 : 1;
}

Cols report_row(const std::string& op, const VerifyReport& rep) {
  return {{"operation", op},
          {"checked", rep.checked},
          {"failures", rep.failures.size()}};
}

void emit_failures(RowWriter& w, const std::string& op,
                   const VerifyReport& rep) {
  for (const auto& f : rep.failures)
    w.write({{"operation", op + "_failure"}, {"detail", f}});
}

int run_intertwine(const RunConfig& cfg, RowWriter& w, std::ostream& err) {
  int rc = 0;
  if (!need(err,
            cfg.p >= 0 && cfg.q >= 0 && cfg.r >= 0 && cfg.level >= 0 &&
                cfg.grade >= 0,
            "intertwine requires --p --q --r --level --grade", rc))
    return rc;
  if (!need(err,
            cfg.sub == "build" || cfg.sub == "verify" || cfg.sub == "descend",
            "intertwine subcommand must be build, verify or descend", rc))
    return rc;

  ItwParams params{cfg.p,    cfg.q,    cfg.r,
                   cfg.level, cfg.grade, cfg.seed,
                   cfg.override_conditions};
  std::unique_ptr<ItwContext> ctx;
  try {
    ctx = std::make_unique<ItwContext>(params);
  } catch (const std::domain_error& e) {
    w.write({{"operation", "build"}, {"status", "failed"}, {"message", e.what()}});
    return 2;
  }

  CGHom f = clebsch_gordan_hom(cfg.p, cfg.q, cfg.r);
  BuildResult built = build_components(*ctx, f);
  {
    Cols cols{{"operation", "build"},
              {"status", built.ok() ? "ok" : "failed"},
              {"message", built.message},
              {"seed_hom", f.zero ? "zero" : "clebsch-gordan"}};
    if (built.table) {
      cols.emplace_back("first_radical_grade", built.table->first_radical_grade);
      cols.emplace_back("checksum", table_checksum(*built.table));
    }
    w.write(cols);
    if (built.table)
      for (const auto& warning : built.table->warnings)
        w.write({{"operation", "build_warning"}, {"detail", warning}});
  }
  if (!built.ok()) return 2;
  if (cfg.sub == "build") return 0;

  if (cfg.sub == "verify") {
    VerifyReport comm = verify_component_commutators(*ctx, *built.table);
    Cols c1 = report_row("component_commutators", comm);
    c1.emplace_back("checksum", table_checksum(*built.table));
    w.write(c1);
    emit_failures(w, "component_commutators", comm);
    VerifyReport jac = verify_jacobi_truncated(*ctx, *built.table);
    Cols c2 = report_row("jacobi_truncated", jac);
    c2.emplace_back("checksum", table_checksum(*built.table));
    w.write(c2);
    emit_failures(w, "jacobi_truncated", jac);
    return comm.ok() && jac.ok() ? 0 : 1;
  }

  // descend
  DescendResult des = descend_to_irreducible(*ctx, *built.table);
  if (!des.conditions_ok) {
    w.write({{"operation", "descend"},
             {"status", "hypotheses failed"},
             {"message", des.message}});
    if (!cfg.override_conditions) return 2;
  }
  Cols c1 = report_row("descend_radical_image", des.radical_check);
  w.write(c1);
  emit_failures(w, "descend_radical_image", des.radical_check);
  Cols c2 = report_row("descend_quotient_commutators", des.quotient_commutators);
  if (des.quotient) c2.emplace_back("checksum", table_checksum(*des.quotient));
  w.write(c2);
  emit_failures(w, "descend_quotient_commutators", des.quotient_commutators);
  return des.radical_check.ok() && des.quotient_commutators.ok() ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RowWriter w(cfg.format, out);
  try {
    if (cfg.command == "fusion") return run_fusion(cfg, w, err);
    if (cfg.command == "resolve") return run_resolve(cfg, w, err);
    if (cfg.command == "radical") return run_radical_or_gram(cfg, w, err, false);
    if (cfg.command == "gram") return run_radical_or_gram(cfg, w, err, true);
    if (cfg.command == "character") return run_character(cfg, w, err);
    if (cfg.command == "intertwine") return run_intertwine(cfg, w, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return usage_error(err, "unknown command '" + cfg.command + "'");
}

}  // namespace sl2hat::cli
