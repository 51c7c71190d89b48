#pragma once

// Exact rational scalar. mpq_class keeps lowest terms with positive
// denominator after canonicalize(); all arithmetic preserves that form.
// Beware `auto` with mpq expressions: it captures expression templates
// that dangle, so always assign results to a named Rat.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "cubiclin/errors.hpp"

namespace cubiclin {

using Rat = mpq_class;

// Accepts "123", "-7", "p/q". Anything else (decimals, junk, zero
// denominator) raises ParseError.
Rat parse_rat(const std::string& s);

// Canonical "p" or "p/q" form, round-trips through parse_rat.
std::string rat_str(const Rat& q);

Rat make_rat(long num, long den);

double to_double(const Rat& q);

// q^e for integer e; e < 0 requires q != 0.
Rat pow_int(const Rat& q, long e);

// Exact n-th root for odd n, if the value is a perfect n-th power.
std::optional<Rat> exact_root(const Rat& q, unsigned long n);

inline int sign(const Rat& q) { return sgn(q); }

}  // namespace cubiclin
