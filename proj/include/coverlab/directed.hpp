#pragma once

#include <string>

#include "coverlab/numbers.hpp"

namespace coverlab {

// One-sided rational bounds on base^(-p/q) for an integer base >= 1 and a
// positive rational exponent p/q. Built from exact integer q-th roots, so
// the bound direction is guaranteed, not a rounding-mode promise:
//
//   neg_pow_lower(b,p,q,s)  <=  b^(-p/q)  <=  neg_pow_upper(b,p,q,s)
//
// with relative gap at most ~2^(1-s). All results are exact rationals
// with denominator 2^s.
Rat neg_pow_upper(const Int& base, unsigned long p, unsigned long q,
                  unsigned long s);
Rat neg_pow_lower(const Int& base, unsigned long p, unsigned long q,
                  unsigned long s);

// Decimal string of log10(x) for a positive rational, rounded in the
// requested direction, with `digits` significant digits.
enum class Rounding { down, up };
std::string log10_string(const Rat& x, Rounding dir, int digits = 30);

// log10 of an integer, same contract.
std::string log10_string(const Int& x, Rounding dir, int digits = 30);

// Upper bound on log10(p_1 * ... * p_C), the primorial of the first C
// primes, for astronomically large C where the product itself is out of
// reach. Uses p_k <= p_C < C (ln C + ln ln C) (valid for C >= 6) and
// upward rounding throughout. Result has `digits` significant digits.
std::string primorial_log10_upper(const Int& C, int digits = 30);

}  // namespace coverlab
