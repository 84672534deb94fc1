#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sl2hat::cli {

enum class Format { Table, JsonLines, Csv };

struct RunConfig {
  std::string command;  // fusion | resolve | radical | gram | character | intertwine
  std::string sub;      // intertwine: build | verify | descend
  int p = -1, q = -1, r = -1, n = -1;
  long level = -1;
  int grade = -1;   // truncation / maximum grade
  int j_max = 6;
  Format format = Format::Table;
  std::uint64_t seed = 0;
  bool override_conditions = false;
  bool irreducible = false;  // fusion: target the irreducible quotient
};

// Exit codes: 0 success, 1 verification failure, 2 indeterminate result or
// failed hypotheses, 3 usage error. Output is deterministic for a fixed
// config and seed.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace sl2hat::cli
