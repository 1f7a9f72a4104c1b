#include "coverlab/directed.hpp"

#include <mpfr.h>

#include <memory>
#include <stdexcept>

#include "coverlab/errors.hpp"

namespace coverlab {

namespace {

void check_args(const Int& base, unsigned long q) {
    if (base < 1) throw InvalidParameterError("base must be >= 1");
    if (q == 0) throw InvalidParameterError("exponent denominator is zero");
}

}  // namespace

// Smallest u with (u/2^s)^q >= 1/M, i.e. u^q * M >= 2^(qs).
Rat neg_pow_upper(const Int& base, unsigned long p, unsigned long q,
                  unsigned long s) {
    check_args(base, q);
    if (p == 0 || base == 1) return Rat(1);
    Int M = int_pow(base, p);
    Int w = Int(1) << static_cast<unsigned long>(q * s);
    Int t;
    mpz_cdiv_q(t.get_mpz_t(), w.get_mpz_t(), M.get_mpz_t());
    Int u;
    mpz_root(u.get_mpz_t(), t.get_mpz_t(), q);
    while (int_pow(u, q) * M < w) ++u;
    return make_rat(u, Int(1) << s);
}

// Largest-enough u with (u/2^s)^q <= 1/M: u = floor((2^(qs)/M)^(1/q)).
Rat neg_pow_lower(const Int& base, unsigned long p, unsigned long q,
                  unsigned long s) {
    check_args(base, q);
    if (p == 0 || base == 1) return Rat(1);
    Int M = int_pow(base, p);
    Int w = Int(1) << static_cast<unsigned long>(q * s);
    Int t;
    mpz_fdiv_q(t.get_mpz_t(), w.get_mpz_t(), M.get_mpz_t());
    Int u;
    mpz_root(u.get_mpz_t(), t.get_mpz_t(), q);
    while (int_pow(u, q) * M > w) --u;  // guard against rounding up
    return make_rat(u, Int(1) << s);
}

namespace {

struct MpfrValue {
    mpfr_t v;
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~MpfrValue() { mpfr_clear(v); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
};

std::string format_mpfr(mpfr_t v, mpfr_rnd_t rnd, int digits) {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*R*g", digits, rnd, v);
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

std::string log10_of(const Rat& x, Rounding dir, int digits) {
    if (x <= 0)
        throw InvalidParameterError("log10 requires a positive argument");
    mpfr_rnd_t rnd = (dir == Rounding::up) ? MPFR_RNDU : MPFR_RNDD;
    // Enough precision that both the set and the log keep `digits`
    // significant decimal digits plus slack.
    auto bits = static_cast<mpfr_prec_t>(
        mpz_sizeinbase(x.get_num().get_mpz_t(), 2) +
        mpz_sizeinbase(x.get_den().get_mpz_t(), 2) + 64 + 4 * digits);
    MpfrValue t(bits), r(bits);
    mpfr_set_q(t.v, x.get_mpq_t(), rnd);
    mpfr_log10(r.v, t.v, rnd);
    return format_mpfr(r.v, rnd, digits);
}

}  // namespace

std::string log10_string(const Rat& x, Rounding dir, int digits) {
    return log10_of(x, dir, digits);
}

std::string log10_string(const Int& x, Rounding dir, int digits) {
    return log10_of(Rat(x), dir, digits);
}

std::string primorial_log10_upper(const Int& C, int digits) {
    if (C < 6)
        throw InvalidParameterError(
            "primorial_log10_upper needs C >= 6; use the exact primorial");
    auto bits = static_cast<mpfr_prec_t>(
        mpz_sizeinbase(C.get_mpz_t(), 2) + 64 + 4 * digits);
    MpfrValue c(bits), ln_c(bits), ln_ln_c(bits), p_max(bits), acc(bits);
    mpfr_set_z(c.v, C.get_mpz_t(), MPFR_RNDU);
    mpfr_log(ln_c.v, c.v, MPFR_RNDU);
    mpfr_log(ln_ln_c.v, ln_c.v, MPFR_RNDU);
    mpfr_add(p_max.v, ln_c.v, ln_ln_c.v, MPFR_RNDU);
    mpfr_mul(p_max.v, p_max.v, c.v, MPFR_RNDU);  // bound on the C-th prime
    mpfr_log10(acc.v, p_max.v, MPFR_RNDU);
    mpfr_mul(acc.v, acc.v, c.v, MPFR_RNDU);
    return format_mpfr(acc.v, MPFR_RNDU, digits);
}

}  // namespace coverlab
