#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sl2hat {

// All arithmetic in this library is exact. Rationals are GMP-backed and
// always kept in canonical form (mpq_class canonicalizes on construction
// from integers; we canonicalize explicitly after raw num/den assembly).
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat x(num, den);
  x.canonicalize();
  return x;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline long to_long(const Rat& x) {
  if (!is_integer(x) || !x.get_num().fits_slong_p())
    throw std::domain_error("rational is not a small integer: " + x.get_str());
  return x.get_num().get_si();
}

inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace sl2hat
