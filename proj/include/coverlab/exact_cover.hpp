#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coverlab/core_model.hpp"
#include "coverlab/crt_bridge.hpp"
#include "coverlab/numbers.hpp"

namespace coverlab {

inline constexpr std::int64_t kDefaultCap = 10'000'000;

// Ground-truth verdict from exhaustive enumeration.
struct CoverVerdict {
    bool covered = false;
    std::optional<Point> witness;  // lexicographically smallest uncovered
    Int uncovered_count = 0;
    Int total_count = 0;
};

// Enumerates all of Q (lexicographic mixed-radix order) and marks covered
// points. Throws TooLargeError when |Q| > cap.
CoverVerdict is_covering(const Instance& inst, std::int64_t cap = kDefaultCap);

// uncovered_count / total_count as an exact rational in lowest terms.
Rat uncovered_measure(const Instance& inst, std::int64_t cap = kDefaultCap);

// Covering of Z equals covering of Z/LZ for L = lcm of the moduli. The
// witness is the smallest uncovered residue. Throws TooLargeError when
// L > cap.
struct APCoverVerdict {
    bool covered = false;
    std::optional<std::int64_t> witness;
    Int uncovered_count = 0;
    Int total_count = 0;  // = L
};

APCoverVerdict ap_is_covering(const APSystem& sys,
                              std::int64_t cap = kDefaultCap);

// The bitmap of covered points in enumeration-rank order (exposed so the
// tests can compare distorted mass against the true uncovered set).
std::vector<bool> covered_bitmap(const Instance& inst, std::int64_t cap);

}  // namespace coverlab
