#include "coverlab/numbers.hpp"

#include <stdexcept>

namespace coverlab {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool parse_int(const std::string& s, Int& out) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    out = Int(s, 10);
    return true;
}

}  // namespace

std::optional<Rat> rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    Int num, den;
    if (slash == std::string::npos) {
        if (!parse_int(s, num)) return std::nullopt;
        den = 1;
    } else {
        if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
        if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    return make_rat(num, den);
}

std::string int_to_string(const Int& z) { return z.get_str(); }

std::optional<Int> int_from_string(const std::string& s) {
    Int z;
    if (!parse_int(s, z)) return std::nullopt;
    return z;
}

Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace coverlab
