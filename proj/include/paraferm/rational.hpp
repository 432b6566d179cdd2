#ifndef PARAFERM_RATIONAL_HPP
#define PARAFERM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace paraferm {

// Exact rational scalar used everywhere; no floating point in the engine.
using Rat = mpq_class;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// binom(s+i-1, i) and friends; arguments stay small in practice but the
// result participates in exact arithmetic, so compute it in mpz.
inline Rat binomial(long top, long bottom) {
  if (bottom < 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top),
               static_cast<unsigned long>(bottom));
  return Rat(r);
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace paraferm

#endif
