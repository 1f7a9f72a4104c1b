#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace coverlab {

// Exact arithmetic types used throughout the library. All measure and
// bound computations are carried out in these; no floating point enters
// any verdict.
using Int = mpz_class;
using Rat = mpq_class;

// Builds num/den in lowest terms with positive denominator. den must be
// nonzero.
Rat make_rat(const Int& num, const Int& den);

// Serializes a rational as "num/den" in lowest terms, den >= 1 always
// printed ("0/1", "-2/3", "1/1").
std::string rat_to_string(const Rat& r);

// Parses "p/q" or a plain integer string "p". Returns nullopt on malformed
// input (empty, stray characters, zero denominator).
std::optional<Rat> rat_from_string(const std::string& s);

// Decimal string of an Int.
std::string int_to_string(const Int& z);

std::optional<Int> int_from_string(const std::string& s);

// num^exp for small exponents, exact.
Int int_pow(const Int& base, unsigned long exp);

}  // namespace coverlab
