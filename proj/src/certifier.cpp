#include "coverlab/certifier.hpp"

#include <algorithm>

#include "coverlab/directed.hpp"
#include "coverlab/errors.hpp"

namespace coverlab {

std::string to_string(BoundMode mode) {
    switch (mode) {
        case BoundMode::exact: return "exact";
        case BoundMode::pairwise: return "pairwise";
        case BoundMode::product: return "product";
    }
    return "?";
}

std::optional<BoundMode> bound_mode_from_string(const std::string& s) {
    if (s == "exact") return BoundMode::exact;
    if (s == "pairwise") return BoundMode::pairwise;
    if (s == "product") return BoundMode::product;
    return std::nullopt;
}

std::string to_string(Verdict v) {
    return v == Verdict::not_covering ? "NOT_COVERING" : "INCONCLUSIVE";
}

namespace {

void check_delta(const Rat& delta) {
    if (delta <= 0 || delta > Rat(1, 2))
        throw InvalidParameterError("delta must lie in (0, 1/2], got " +
                                    rat_to_string(delta));
}

}  // namespace

Rat nu(const std::set<int>& J, const Rat& delta, const ProductSpace& space) {
    check_delta(delta);
    Rat prod = 1;
    const Rat one(1);
    for (int j : J) prod /= (one - delta) * space.size(j);
    return prod;
}

MomentBound second_moment_pairwise(const Instance& inst, int k,
                                   const Rat& delta) {
    check_delta(delta);
    auto rounds = round_partition(inst);
    const auto& idx = rounds.round(k);
    Rat sum = 0;
    for (int i1 : idx) {
        auto f1 = inst.hyperplanes[static_cast<std::size_t>(i1)]
                      .project_upto(k - 1)
                      .fixed_set();
        for (int i2 : idx) {
            auto J = f1;
            for (const auto& [j, v] :
                 inst.hyperplanes[static_cast<std::size_t>(i2)].fixings()) {
                if (j > k - 1) break;
                J.insert(j);
            }
            sum += nu(J, delta, inst.space);
        }
    }
    Int sk = inst.space.size(k);
    return MomentBound{k, BoundMode::pairwise, sum / Rat(sk * sk)};
}

MomentBound second_moment_product(const Instance& inst, int k,
                                  const Rat& delta) {
    check_delta(delta);
    if (auto pair = find_parallel_pair(inst))
        throw HypothesisViolationError(
            "hyperplanes " + std::to_string(pair->first) + " and " +
            std::to_string(pair->second) + " are parallel");
    const Rat one(1);
    Rat prod = 1;
    for (int j = 1; j <= k - 1; ++j)
        prod *= one + Rat(3) / ((one - delta) * inst.space.size(j));
    Int sk = inst.space.size(k);
    return MomentBound{k, BoundMode::product, prod / Rat(sk * sk)};
}

MomentBound second_moment_exact(const Instance& inst, int k, const Rat& delta,
                                std::int64_t cap) {
    check_delta(delta);
    auto rounds = round_partition(inst);
    DistortionState state = initial_state(inst.space, delta);
    for (int r = 1; r < k; ++r) state = step(state, inst, rounds, r, cap);
    return MomentBound{k, BoundMode::exact,
                       second_moment_under(state, inst, rounds, k)};
}

Certificate certify(const Instance& inst, const Rat& delta, BoundMode mode,
                    std::int64_t cap) {
    check_delta(delta);
    inst.validate();
    auto rounds = round_partition(inst);

    auto parallel = find_parallel_pair(inst);
    if (mode == BoundMode::product && parallel)
        throw HypothesisViolationError(
            "product mode requires a non-parallel instance; hyperplanes " +
            std::to_string(parallel->first) + " and " +
            std::to_string(parallel->second) + " are parallel");

    Certificate cert;
    cert.delta = delta;
    cert.mode = mode;
    cert.nonparallel_checked = !parallel.has_value();

    int n = inst.space.n();
    if (mode == BoundMode::exact) {
        // One rolling engine pass instead of n independent runs.
        DistortionState state = initial_state(inst.space, delta);
        for (int k = 1; k <= n; ++k) {
            cert.per_round.push_back(
                MomentBound{k, mode,
                            second_moment_under(state, inst, rounds, k)});
            if (k < n) state = step(state, inst, rounds, k, cap);
        }
    } else {
        for (int k = 1; k <= n; ++k)
            cert.per_round.push_back(mode == BoundMode::pairwise
                                         ? second_moment_pairwise(inst, k,
                                                                  delta)
                                         : second_moment_product(inst, k,
                                                                 delta));
    }

    Rat sum = 0;
    for (const auto& mb : cert.per_round) sum += mb.value;
    cert.criterion_sum = sum / (4 * delta * (Rat(1) - delta));
    cert.residual = Rat(1) - cert.criterion_sum;
    cert.verdict = cert.criterion_sum < 1 ? Verdict::not_covering
                                          : Verdict::inconclusive;
    return cert;
}

// ---- constant calculator ----------------------------------------------

Rat scalar_condition_value(const Rat& eps) {
    if (eps <= 0 || eps > 1)
        throw UnsupportedEpsilonError("eps must lie in (0, 1], got " +
                                      rat_to_string(eps));
    const Rat one(1);
    return (one - eps / 6) * (Rat(3) + eps) * (one - eps / 10);
}

bool scalar_condition(const Rat& eps) {
    return scalar_condition_value(eps) >= 3;
}

namespace {

// Exponents of C in TailBound written over a common denominator q = 10*b:
// C^(-1-eps/10) = C^(-p1/q), C^(-eps/10) = C^(-p2/q) for eps = a/b.
struct TailExponents {
    unsigned long p1, p2, q;
};

TailExponents tail_exponents(const Rat& eps) {
    Int a = eps.get_num();
    Int b = eps.get_den();
    if (!a.fits_ulong_p() || !b.fits_ulong_p() || b.get_ui() > 100000)
        throw UnsupportedEpsilonError(
            "eps must be a small rational for the tail audit");
    unsigned long an = a.get_ui();
    unsigned long bn = b.get_ui();
    return TailExponents{10 * bn + an, an, 10 * bn};
}

}  // namespace

Rat tail_bound_upper(const Int& C, const Rat& eps, unsigned long s) {
    auto [p1, p2, q] = tail_exponents(eps);
    return neg_pow_upper(C, p1, q, s) +
           Rat(10) / eps * neg_pow_upper(C, p2, q, s);
}

Rat tail_bound_lower(const Int& C, const Rat& eps, unsigned long s) {
    auto [p1, p2, q] = tail_exponents(eps);
    return neg_pow_lower(C, p1, q, s) +
           Rat(10) / eps * neg_pow_lower(C, p2, q, s);
}

CriterionProbe criterion_probe(const Int& C, int N, const Rat& eps) {
    if (C < 1) throw InvalidParameterError("C must be >= 1");
    if (N < 1) throw InvalidParameterError("N must be >= 1");
    Rat prefactor = Rat(int_pow(Int(2), 2 * static_cast<unsigned long>(N))) /
                    eps;  // 4^N / eps

    // Start with enough precision that 2^s * C^(-exp) has ~64 significant
    // bits, then escalate until the comparison against 1 is strict.
    auto [p1, p2, q] = tail_exponents(eps);
    unsigned long s0 =
        64 + (p1 * mpz_sizeinbase(C.get_mpz_t(), 2)) / q + 1;
    for (unsigned long s = s0; s <= (1ul << 24); s *= 2) {
        Rat upper = prefactor * tail_bound_upper(C, eps, s);
        if (upper < 1)
            return CriterionProbe{C, true,
                                  log10_string(upper, Rounding::up), "up"};
        Rat lower = prefactor * tail_bound_lower(C, eps, s);
        if (lower >= 1)
            return CriterionProbe{C, false,
                                  log10_string(lower, Rounding::down),
                                  "down"};
    }
    throw std::logic_error("criterion comparison did not stabilize");
}

namespace {

void audit_growth(const SequenceSpec& spec, int growth_limit,
                  int& checked_upto) {
    if (spec.N < 1) throw InvalidParameterError("N must be >= 1");
    if (spec.kind == SequenceSpec::Kind::primes) {
        int K = std::max(spec.N, growth_limit);
        auto chk = verify_prime_growth(spec.N, spec.eps, K);
        if (!chk.ok)
            throw HypothesisViolationError(
                "prime growth |S_k| >= (3+eps)k fails at k = " +
                std::to_string(*chk.first_failure));
        checked_upto = K;
    } else {
        // |S_k| >= 2 everywhere, and the growth hypothesis on [N, len].
        Int a = spec.eps.get_num();
        Int b = spec.eps.get_den();
        for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
            auto k = static_cast<int>(i + 1);
            if (spec.sizes[i] < 2)
                throw InvalidInputError("size at k = " + std::to_string(k) +
                                        " is < 2");
            if (k >= spec.N && Int(spec.sizes[i]) * b < (3 * b + a) * k)
                throw HypothesisViolationError(
                    "growth |S_k| >= (3+eps)k fails at k = " +
                    std::to_string(k));
        }
        checked_upto = static_cast<int>(spec.sizes.size());
    }
}

}  // namespace

MinCResult min_C(const SequenceSpec& spec, const std::optional<Rat>& delta,
                 int growth_limit) {
    if (!scalar_condition(spec.eps))
        throw UnsupportedEpsilonError(
            "(1-eps/6)(3+eps)(1-eps/10) >= 3 fails for eps = " +
            rat_to_string(spec.eps));
    Rat chosen_delta = spec.eps / 6;
    if (delta && *delta != chosen_delta)
        throw InvalidParameterError(
            "the constant computation is derived for delta = eps/6 = " +
            rat_to_string(chosen_delta));

    MinCResult result;
    result.delta = chosen_delta;
    audit_growth(spec, growth_limit, result.growth_checked_upto);

    auto probe = [&](const Int& C) {
        result.probes.push_back(criterion_probe(C, spec.N, spec.eps));
        return result.probes.back().pass;
    };

    // Doubling over the exponent m of C = 10^m, then bisection between the
    // last failing and first passing exponent. C = 1 always fails (the
    // tail bound is >= 1 there), anchoring the bisection.
    unsigned long m = 1;
    while (!probe(int_pow(Int(10), m))) {
        if (m > (1ul << 20))
            throw std::logic_error("criterion never became satisfiable");
        m *= 2;
    }
    unsigned long lo = m == 1 ? 0 : m / 2;  // failing (or C=1 trivially)
    unsigned long hi = m;                   // passing
    while (hi - lo > 1) {
        unsigned long mid = lo + (hi - lo) / 2;
        if (probe(int_pow(Int(10), mid)))
            hi = mid;
        else
            lo = mid;
    }
    // Record the failing neighbour probe when the loop skipped it.
    bool have_fail_neighbour = false;
    for (const auto& p : result.probes)
        if (!p.pass && p.C == int_pow(Int(10), lo)) have_fail_neighbour = true;
    if (!have_fail_neighbour) probe(int_pow(Int(10), lo));

    result.C = int_pow(Int(10), hi);
    result.power_of_ten = true;
    if (result.C < spec.N) {
        result.C = spec.N;  // the growth hypothesis only applies from N on
        result.power_of_ten = false;
    }
    return result;
}

}  // namespace coverlab
