#pragma once

#include <cstdint>
#include <vector>

#include "coverlab/core_model.hpp"
#include "coverlab/exact_cover.hpp"
#include "coverlab/numbers.hpp"

namespace coverlab {

// The distorted probability measure P_k on the prefix space Q_k, stored as
// one exact rational weight per k-prefix point in lexicographic rank order
// (zero weights are kept, never pruned). k = 0 is the trivial measure on
// the empty product: a single weight 1.
struct DistortionState {
    int k = 0;
    Rat delta;
    ProductSpace space;
    std::vector<Rat> weights;

    // Exact sum of all weights (1 for any state produced by the engine).
    Rat total_mass() const;
};

DistortionState initial_state(const ProductSpace& space, const Rat& delta);

// Covered fraction of the fibre over the (k-1)-prefix x: the number of
// values y in S_k with (x,y) in B_k, divided by |S_k|.
Rat alpha(const DistortionState& state, const Instance& inst,
          const RoundPartition& rounds, int k, const Point& x);

// One distortion round: consumes the measure at k-1 and produces the
// measure at k. On each fibre, covered points keep the fraction
// max{0, (alpha-delta)/(alpha(1-delta))} of the uniform share and
// uncovered points are scaled by min{1/(1-alpha), 1/(1-delta)}, so fibre
// mass is conserved exactly.
DistortionState step(const DistortionState& state, const Instance& inst,
                     const RoundPartition& rounds, int k,
                     std::int64_t cap = kDefaultCap);

// P_k(B_k) by the closed form (1/(1-delta)) * sum_x max{0, alpha_k(x) -
// delta} * P_{k-1}(x), evaluated from the round-(k-1) state.
Rat covered_mass(const DistortionState& state_before, const Instance& inst,
                 const RoundPartition& rounds, int k);

// Exact P_k-measure of a hyperplane with F(h) inside [k]; throws
// NotMeasurableError otherwise.
Rat measure_of(const DistortionState& state, const Hyperplane& h);

struct DistortionRound {
    int k = 0;
    Rat covered_mass;           // P_k(B_k)
    long exceeded_cap_count = 0;  // fibres where alpha_k(x) > delta
};

struct DistortionTrace {
    Rat delta;
    std::vector<DistortionRound> per_round;  // one entry per k = 1..n
    Rat residual_lower_bound;                // 1 - sum_k P_k(B_k)
};

// Runs all n rounds keeping only a rolling state. residual_lower_bound >
// 0 proves the instance does not cover Q. Throws InvalidParameterError
// unless 0 < delta <= 1/2, TooLargeError when some |Q_k| > cap, and
// TriviallyCoveringError when a hyperplane fixes nothing.
DistortionTrace run(const Instance& inst, const Rat& delta,
                    std::int64_t cap = kDefaultCap);

// As run(), but retains every intermediate measure P_0..P_n.
struct FullTrace {
    DistortionTrace trace;
    std::vector<DistortionState> states;  // states[k] is P_k
};

FullTrace run_full(const Instance& inst, const Rat& delta,
                   std::int64_t cap = kDefaultCap);

// Exact second moment E_{k-1}[alpha_k(x)^2] under the given round-(k-1)
// state (the quantity the certifier criterion sums).
Rat second_moment_under(const DistortionState& state, const Instance& inst,
                        const RoundPartition& rounds, int k);

}  // namespace coverlab
