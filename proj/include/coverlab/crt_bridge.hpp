#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coverlab/core_model.hpp"
#include "coverlab/numbers.hpp"

namespace coverlab {

// The arithmetic progression a + d*Z with 0 <= a < d.
struct ArithmeticProgression {
    std::int64_t a = 0;
    std::int64_t d = 1;

    bool operator==(const ArithmeticProgression&) const = default;
};

// Normalizes the residue into [0, d); throws InvalidInputError if d < 1.
ArithmeticProgression make_progression(std::int64_t a, std::int64_t d);

struct APSystem {
    std::vector<ArithmeticProgression> progressions;
};

// First n primes [2, 3, 5, ...] from a deterministic sieve. n >= 1.
std::vector<std::int64_t> primes_upto_index(int n);

// CRT image of a progression inside the space (p_1, ..., p_m) given by
// `primes`: coordinate k is fixed to a mod p_k exactly when p_k | d.
// Throws SquarefreeViolationError when d is not square-free and
// SpaceTooSmallError when d has a prime factor beyond the list.
Hyperplane ap_to_hyperplane(const ArithmeticProgression& ap,
                            const std::vector<std::int64_t>& primes);

// Maps a whole system into the minimal prime product space (n = index of
// the largest prime dividing any modulus). Throws TriviallyCoveringError
// on a modulus-1 progression and SquarefreeViolationError as above.
Instance system_to_instance(const APSystem& sys);

// Primorial p_1 * ... * p_C, the minimum-modulus bound extracted from a
// fixed-coordinate set inside {1, ..., C}. Requires primes.size() >= C.
Int min_modulus_bound(int C, const std::vector<std::int64_t>& primes);

struct GrowthCheck {
    bool ok = false;
    std::optional<int> first_failure;  // smallest violating k when !ok
};

// Checks p_k >= (3 + eps) * k for all N <= k <= K with exact rational
// comparison. eps > 0, N <= K.
GrowthCheck verify_prime_growth(int N, const Rat& eps, int K);

// Upper bound used to size sieves: the K-th prime is below this value.
std::int64_t nth_prime_upper_bound(int K);

}  // namespace coverlab
