#include "coverlab/distortion.hpp"

#include <stdexcept>

#include "coverlab/errors.hpp"

namespace coverlab {

namespace {

void check_delta(const Rat& delta) {
    if (delta <= 0 || delta > Rat(1, 2))
        throw InvalidParameterError("delta must lie in (0, 1/2], got " +
                                    rat_to_string(delta));
}

std::size_t checked_prefix_count(const ProductSpace& space, int k,
                                 std::int64_t cap) {
    Int c = space.prefix_count(k);
    if (cap < 1 || c > cap)
        throw TooLargeError("prefix space Q_" + std::to_string(k) + " has " +
                            c.get_str() + " points, cap is " +
                            std::to_string(cap));
    return static_cast<std::size_t>(c.get_ui());
}

// Values y in S_k covered over the prefix x: {v_A : A in round k, x in
// A^{[k-1]}}. Every A in round k fixes coordinate k, so membership of
// (x,y) reduces to a prefix match plus y = v_A.
long covered_fibre_values(const Instance& inst, const RoundPartition& rounds,
                          int k, const Point& x, std::vector<bool>& hit) {
    hit.assign(static_cast<std::size_t>(inst.space.size(k)), false);
    long count = 0;
    for (int idx : rounds.round(k)) {
        const auto& h = inst.hyperplanes[static_cast<std::size_t>(idx)];
        if (!h.contains_prefix(x)) continue;
        auto v = static_cast<std::size_t>(h.fixings().rbegin()->second);
        if (!hit[v]) {
            hit[v] = true;
            ++count;
        }
    }
    return count;
}

}  // namespace

Rat DistortionState::total_mass() const {
    Rat s = 0;
    for (const auto& w : weights) s += w;
    return s;
}

DistortionState initial_state(const ProductSpace& space, const Rat& delta) {
    check_delta(delta);
    DistortionState st;
    st.k = 0;
    st.delta = delta;
    st.space = space;
    st.weights = {Rat(1)};
    return st;
}

Rat alpha(const DistortionState& state, const Instance& inst,
          const RoundPartition& rounds, int k, const Point& x) {
    if (k < 1 || k > inst.space.n())
        throw InvalidInputError("round index out of range");
    if (state.k != k - 1)
        throw InvalidInputError("alpha needs the round-(k-1) state");
    if (static_cast<int>(x.coords.size()) != k - 1)
        throw InvalidInputError("prefix length must be k-1");
    std::vector<bool> hit;
    long covered = covered_fibre_values(inst, rounds, k, x, hit);
    return make_rat(covered, inst.space.size(k));
}

DistortionState step(const DistortionState& state, const Instance& inst,
                     const RoundPartition& rounds, int k, std::int64_t cap) {
    if (k != state.k + 1)
        throw InvalidInputError("step must advance one round at a time");
    auto fibre = static_cast<std::size_t>(inst.space.size(k));
    std::size_t child_count = checked_prefix_count(inst.space, k, cap);

    DistortionState next;
    next.k = k;
    next.delta = state.delta;
    next.space = state.space;
    next.weights.assign(child_count, Rat(0));

    const Rat one(1);
    const Rat cap_factor = one / (one - state.delta);  // 1/(1-delta)
    std::vector<bool> hit;
    for (std::size_t r = 0; r < state.weights.size(); ++r) {
        const Rat& wx = state.weights[r];
        Point x = prefix_unrank(state.space, k - 1, r);
        long covered = covered_fibre_values(inst, rounds, k, x, hit);
        Rat share = wx / static_cast<unsigned long>(fibre);  // uniform split
        std::size_t base = r * fibre;

        if (covered == 0) {
            // Empty fibre intersection: both branches reduce to the
            // uniform split, taken directly to avoid 0/0.
            for (std::size_t y = 0; y < fibre; ++y)
                next.weights[base + y] = share;
            continue;
        }

        Rat a = make_rat(covered, static_cast<std::int64_t>(fibre));
        Rat covered_factor = 0;
        if (a > state.delta)
            covered_factor = (a - state.delta) / (a * (one - state.delta));
        Rat uncovered_factor = 0;
        if (covered < static_cast<long>(fibre)) {
            uncovered_factor = one / (one - a);
            if (uncovered_factor > cap_factor) uncovered_factor = cap_factor;
        }
        for (std::size_t y = 0; y < fibre; ++y)
            next.weights[base + y] =
                (hit[y] ? covered_factor : uncovered_factor) * share;
    }
    return next;
}

Rat covered_mass(const DistortionState& state_before, const Instance& inst,
                 const RoundPartition& rounds, int k) {
    if (state_before.k != k - 1)
        throw InvalidInputError("covered_mass needs the round-(k-1) state");
    Rat sum = 0;
    std::vector<bool> hit;
    for (std::size_t r = 0; r < state_before.weights.size(); ++r) {
        const Rat& wx = state_before.weights[r];
        if (wx == 0) continue;
        Point x = prefix_unrank(state_before.space, k - 1, r);
        long covered = covered_fibre_values(inst, rounds, k, x, hit);
        Rat a = make_rat(covered, inst.space.size(k));
        if (a > state_before.delta) sum += (a - state_before.delta) * wx;
    }
    return sum / (Rat(1) - state_before.delta);
}

Rat measure_of(const DistortionState& state, const Hyperplane& h) {
    auto mk = h.max_fixed();
    if (mk && *mk > state.k)
        throw NotMeasurableError(
            "hyperplane fixes coordinate " + std::to_string(*mk) +
            " but the measure lives on Q_" + std::to_string(state.k));
    Rat sum = 0;
    for (std::size_t r = 0; r < state.weights.size(); ++r) {
        if (state.weights[r] == 0) continue;
        Point x = prefix_unrank(state.space, state.k, r);
        if (h.contains_prefix(x)) sum += state.weights[r];
    }
    return sum;
}

Rat second_moment_under(const DistortionState& state, const Instance& inst,
                        const RoundPartition& rounds, int k) {
    if (state.k != k - 1)
        throw InvalidInputError("second moment needs the round-(k-1) state");
    Rat sum = 0;
    std::vector<bool> hit;
    for (std::size_t r = 0; r < state.weights.size(); ++r) {
        const Rat& wx = state.weights[r];
        if (wx == 0) continue;
        Point x = prefix_unrank(state.space, k - 1, r);
        long covered = covered_fibre_values(inst, rounds, k, x, hit);
        if (covered == 0) continue;
        Rat a = make_rat(covered, inst.space.size(k));
        sum += a * a * wx;
    }
    return sum;
}

namespace {

// Shared by run / run_full; `keep` collects every state when non-null.
DistortionTrace run_impl(const Instance& inst, const Rat& delta,
                         std::int64_t cap,
                         std::vector<DistortionState>* keep) {
    check_delta(delta);
    inst.validate();
    auto rounds = round_partition(inst);
    int n = inst.space.n();
    for (int k = 1; k <= n; ++k) checked_prefix_count(inst.space, k, cap);

    DistortionTrace trace;
    trace.delta = delta;
    DistortionState state = initial_state(inst.space, delta);
    if (keep) keep->push_back(state);

    Rat total_covered = 0;
    const Rat criterion_const = Rat(1) / (4 * delta * (Rat(1) - delta));
    std::vector<bool> hit;
    for (int k = 1; k <= n; ++k) {
        DistortionRound round;
        round.k = k;
        round.covered_mass = covered_mass(state, inst, rounds, k);

        // Count delta-capped fibres and accumulate the exact second
        // moment; the per-round criterion bound is re-verified on every
        // run as an internal soundness check.
        Rat moment = 0;
        for (std::size_t r = 0; r < state.weights.size(); ++r) {
            const Rat& wx = state.weights[r];
            Point x = prefix_unrank(state.space, k - 1, r);
            long covered = covered_fibre_values(inst, rounds, k, x, hit);
            if (covered == 0) continue;
            Rat a = make_rat(covered, inst.space.size(k));
            if (a > delta) ++round.exceeded_cap_count;
            moment += a * a * wx;
        }
        if (round.covered_mass > criterion_const * moment)
            throw std::logic_error(
                "internal invariant violated: P_k(B_k) exceeds the "
                "second-moment bound");

        DistortionState nxt = step(state, inst, rounds, k, cap);

        // Cross-check the closed form against the point-mass sum over B_k.
        Rat direct = 0;
        auto fibre = static_cast<std::size_t>(inst.space.size(k));
        for (std::size_t r = 0; r < state.weights.size(); ++r) {
            Point x = prefix_unrank(state.space, k - 1, r);
            covered_fibre_values(inst, rounds, k, x, hit);
            for (std::size_t y = 0; y < fibre; ++y)
                if (hit[y]) direct += nxt.weights[r * fibre + y];
        }
        if (direct != round.covered_mass)
            throw std::logic_error(
                "internal invariant violated: closed-form P_k(B_k) differs "
                "from the summed mass");

        total_covered += round.covered_mass;
        trace.per_round.push_back(std::move(round));
        state = std::move(nxt);
        if (keep) keep->push_back(state);
    }
    trace.residual_lower_bound = Rat(1) - total_covered;
    return trace;
}

}  // namespace

DistortionTrace run(const Instance& inst, const Rat& delta,
                    std::int64_t cap) {
    return run_impl(inst, delta, cap, nullptr);
}

FullTrace run_full(const Instance& inst, const Rat& delta, std::int64_t cap) {
    FullTrace full;
    full.trace = run_impl(inst, delta, cap, &full.states);
    return full;
}

}  // namespace coverlab
