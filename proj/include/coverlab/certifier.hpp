#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coverlab/core_model.hpp"
#include "coverlab/distortion.hpp"
#include "coverlab/numbers.hpp"

namespace coverlab {

enum class BoundMode { exact, pairwise, product };

std::string to_string(BoundMode mode);
std::optional<BoundMode> bound_mode_from_string(const std::string& s);

// Per-round upper bound on the second moment E_{k-1}[alpha_k(x)^2].
struct MomentBound {
    int k = 0;
    BoundMode mode = BoundMode::exact;
    Rat value;
};

// nu(J) = prod_{j in J} 1/((1-delta)|S_j|); nu(empty) = 1.
Rat nu(const std::set<int>& J, const Rat& delta, const ProductSpace& space);

// Pair bound: (1/|S_k|^2) * sum over ordered pairs (A1, A2) of round k of
// nu((F(A1) u F(A2)) n [k-1]). Sound for arbitrary instances.
MomentBound second_moment_pairwise(const Instance& inst, int k,
                                   const Rat& delta);

// Closed form (1/|S_k|^2) * prod_{j<k} (1 + 3/((1-delta)|S_j|)); requires
// a non-parallel instance (throws HypothesisViolationError naming the
// offending pair).
MomentBound second_moment_product(const Instance& inst, int k,
                                  const Rat& delta);

// Exact E_{k-1}[alpha_k^2] from a fresh distortion run through round k-1.
MomentBound second_moment_exact(const Instance& inst, int k, const Rat& delta,
                                std::int64_t cap = kDefaultCap);

enum class Verdict { not_covering, inconclusive };

std::string to_string(Verdict v);

// A machine-checkable non-covering certificate: S < 1 proves the
// hyperplanes do not cover Q.
struct Certificate {
    Rat delta;
    BoundMode mode = BoundMode::exact;
    std::vector<MomentBound> per_round;
    Rat criterion_sum;  // S = (1/(4 delta (1-delta))) * sum_k value_k
    Rat residual;       // 1 - S
    Verdict verdict = Verdict::inconclusive;
    bool nonparallel_checked = false;  // verified to contain no parallel pair
};

Certificate certify(const Instance& inst, const Rat& delta, BoundMode mode,
                    std::int64_t cap = kDefaultCap);

// ---- the constant C of the covering criterion -------------------------

// Input sequence for the constant computation: either the prime sequence
// or an explicit finite list of sizes. The growth hypothesis |S_k| >=
// (3+eps)k for k >= N is audited over the range the sequence makes
// checkable.
struct SequenceSpec {
    enum class Kind { primes, explicit_sizes };
    Kind kind = Kind::primes;
    std::vector<std::int64_t> sizes;  // explicit_sizes only
    int N = 1;
    Rat eps;
};

// Exact value of (1 - eps/6)(3 + eps)(1 - eps/10); the criterion requires
// it to be >= 3. Throws UnsupportedEpsilonError unless 0 < eps <= 1.
Rat scalar_condition_value(const Rat& eps);
bool scalar_condition(const Rat& eps);

// TailBound(C, eps) = C^(-1-eps/10) + (10/eps) C^(-eps/10), a closed-form
// majorant of sum_{k>=C} k^(-1-eps/10) (first term plus integral tail).
// Directed variants bound it from the requested side with denominator
// 2^s rationals.
Rat tail_bound_upper(const Int& C, const Rat& eps, unsigned long s);
Rat tail_bound_lower(const Int& C, const Rat& eps, unsigned long s);

// One probe of the criterion audit: does (4^N / eps) * TailBound(C, eps)
// < 1 hold? Decided with one-sided bounds, escalating precision until
// strict. `lhs_log10` reports the deciding bound in log10 form.
struct CriterionProbe {
    Int C;
    bool pass = false;
    std::string lhs_log10;        // log10 of the deciding one-sided bound
    std::string lhs_rounding;     // "up" (pass proofs) or "down" (fail proofs)
};

CriterionProbe criterion_probe(const Int& C, int N, const Rat& eps);

struct MinCResult {
    Int C;                        // smallest passing C at the granularity
    bool power_of_ten = false;    // C reported as a power of ten
    std::vector<CriterionProbe> probes;
    int growth_checked_upto = 0;  // largest k audited for |S_k| >= (3+eps)k
    Rat delta;                    // eps/6
};

// Smallest C >= N (at power-of-ten granularity beyond 10^6) making the
// criterion hold, by doubling-then-bisect over the exponent. Audits the
// growth hypothesis first (throws HypothesisViolationError naming the
// smallest violating k) and the scalar condition (throws
// UnsupportedEpsilonError). `delta`, when given, must equal eps/6.
MinCResult min_C(const SequenceSpec& spec,
                 const std::optional<Rat>& delta = std::nullopt,
                 int growth_limit = 1'000'000);

}  // namespace coverlab
