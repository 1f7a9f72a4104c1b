#include "coverlab/crt_bridge.hpp"

#include <algorithm>
#include <cmath>

#include "coverlab/errors.hpp"

namespace coverlab {

ArithmeticProgression make_progression(std::int64_t a, std::int64_t d) {
    if (d < 1)
        throw InvalidInputError("modulus must be >= 1, got " +
                                std::to_string(d));
    std::int64_t r = a % d;
    if (r < 0) r += d;
    return ArithmeticProgression{r, d};
}

std::int64_t nth_prime_upper_bound(int K) {
    if (K < 6) return 15;
    // p_K < K (ln K + ln ln K) for K >= 6 (Rosser), rounded up generously.
    double k = static_cast<double>(K);
    double bound = k * (std::log(k) + std::log(std::log(k)));
    return static_cast<std::int64_t>(bound) + 2;
}

std::vector<std::int64_t> primes_upto_index(int n) {
    if (n < 1) throw InvalidInputError("prime count must be >= 1");
    auto limit = static_cast<std::size_t>(nth_prime_upper_bound(n));
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::int64_t> primes;
    primes.reserve(static_cast<std::size_t>(n));
    for (std::size_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(static_cast<std::int64_t>(p));
        if (static_cast<int>(primes.size()) == n) break;
        for (std::size_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    if (static_cast<int>(primes.size()) < n)
        throw InvalidInputError("sieve bound too small");  // unreachable
    return primes;
}

namespace {

// Factor d over the given primes; fills 1-based fixing positions.
// Returns the unfactored remainder (1 when fully factored).
std::int64_t factor_over(std::int64_t d,
                         const std::vector<std::int64_t>& primes,
                         std::vector<int>& positions) {
    for (std::size_t i = 0; i < primes.size() && d > 1; ++i) {
        auto p = primes[i];
        if (d % p != 0) continue;
        d /= p;
        if (d % p == 0)
            throw SquarefreeViolationError(
                "modulus divisible by " + std::to_string(p) + "^2");
        positions.push_back(static_cast<int>(i + 1));
    }
    return d;
}

}  // namespace

Hyperplane ap_to_hyperplane(const ArithmeticProgression& ap,
                            const std::vector<std::int64_t>& primes) {
    if (ap.d < 1) throw InvalidInputError("modulus must be >= 1");
    std::vector<int> positions;
    std::int64_t rest = factor_over(ap.d, primes, positions);
    if (rest > 1)
        throw SpaceTooSmallError(
            "modulus has a prime factor beyond the supplied primes: " +
            std::to_string(ap.d));
    std::map<int, std::int64_t> fixings;
    for (int pos : positions) {
        auto p = primes[static_cast<std::size_t>(pos - 1)];
        fixings.emplace(pos, ap.a % p);
    }
    return Hyperplane(std::move(fixings));
}

Instance system_to_instance(const APSystem& sys) {
    // Largest prime factor over all moduli decides the dimension.
    std::int64_t largest = 0;
    for (const auto& ap : sys.progressions) {
        if (ap.d < 1) throw InvalidInputError("modulus must be >= 1");
        if (ap.d == 1)
            throw TriviallyCoveringError(
                "modulus 1 covers the integers outright");
        std::int64_t d = ap.d;
        for (std::int64_t p = 2; p * p <= d; ++p) {
            if (d % p != 0) continue;
            d /= p;
            if (d % p == 0)
                throw SquarefreeViolationError("modulus " +
                                               std::to_string(ap.d) +
                                               " divisible by " +
                                               std::to_string(p) + "^2");
            largest = std::max(largest, p);
        }
        if (d > 1) largest = std::max(largest, d);
    }
    if (largest == 0)
        throw InvalidInputError("cannot map an empty system");

    // Sieve primes up to `largest` inclusive.
    std::vector<std::int64_t> primes;
    {
        std::vector<bool> composite(static_cast<std::size_t>(largest) + 1,
                                    false);
        for (std::int64_t p = 2; p <= largest; ++p) {
            if (composite[static_cast<std::size_t>(p)]) continue;
            primes.push_back(p);
            for (std::int64_t m = p * p; m <= largest; m += p)
                composite[static_cast<std::size_t>(m)] = true;
        }
    }

    Instance inst;
    inst.space = ProductSpace(primes);
    inst.hyperplanes.reserve(sys.progressions.size());
    for (const auto& ap : sys.progressions)
        inst.hyperplanes.push_back(ap_to_hyperplane(ap, primes));
    return inst;
}

Int min_modulus_bound(int C, const std::vector<std::int64_t>& primes) {
    if (C < 1) throw InvalidInputError("C must be >= 1");
    if (static_cast<std::size_t>(C) > primes.size())
        throw InvalidInputError("prime list shorter than C");
    Int prod = 1;
    for (int i = 0; i < C; ++i) prod *= primes[static_cast<std::size_t>(i)];
    return prod;
}

GrowthCheck verify_prime_growth(int N, const Rat& eps, int K) {
    if (eps <= 0) throw InvalidParameterError("eps must be positive");
    if (N < 1 || N > K) throw InvalidInputError("need 1 <= N <= K");
    auto primes = primes_upto_index(K);
    // p_k >= (3 + a/b) k  <=>  p_k * b >= (3b + a) k, exactly in integers.
    Int a = eps.get_num();
    Int b = eps.get_den();
    Int factor = 3 * b + a;
    for (int k = N; k <= K; ++k) {
        Int lhs = Int(primes[static_cast<std::size_t>(k - 1)]) * b;
        Int rhs = factor * k;
        if (lhs < rhs) return GrowthCheck{false, k};
    }
    return GrowthCheck{true, std::nullopt};
}

}  // namespace coverlab
