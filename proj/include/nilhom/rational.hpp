#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace nilhom {

// Exact rational scalar. mpq_class keeps gcd(|num|,den)=1 and den>0 as long
// as values are built through canonical constructors and arithmetic.
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p". Returns nullopt on malformed input or q == 0.
std::optional<Rat> parse_rat(const std::string& s);

// "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& r);

using Vec = std::vector<Rat>;

bool is_zero(const Vec& v);

}  // namespace nilhom
