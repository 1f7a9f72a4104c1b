// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "coverlab/certifier.hpp"
#include "coverlab/cli.hpp"
#include "coverlab/directed.hpp"
#include "coverlab/distortion.hpp"
#include "coverlab/exact_cover.hpp"
#include "coverlab/json_io.hpp"
#include "support.hpp"

using namespace coverlab;
using coverlab::testing::InstanceGen;
using nlohmann::json;

namespace {

struct Criterion {
    int number;
    std::string title;
    double time_limit_s;  // 0 = unlimited
    std::function<bool(std::string&)> body;
};

bool check(bool ok, std::string& detail, const std::string& msg) {
    if (!ok && detail.empty()) detail = msg;
    return ok;
}

// ---- 1: prime-sequence constant reproduction --------------------------

bool remark_reproduction(std::string& detail) {
    bool ok = true;

    // 4^31 * (10^-220 + 10 * 10^-20) < 1, as one exact integer comparison:
    // 2^62 * (1 + 10^201) < 10^220.
    Int lhs = int_pow(Int(2), 62) * (1 + int_pow(Int(10), 201));
    ok &= check(lhs < int_pow(Int(10), 220), detail,
                "exact audit inequality fails at C = 10^200");

    auto probe = criterion_probe(int_pow(Int(10), 200), 31, Rat(1));
    ok &= check(probe.pass, detail,
                "directed-rounding audit fails at C = 10^200");

    SequenceSpec spec;
    spec.kind = SequenceSpec::Kind::primes;
    spec.N = 31;
    spec.eps = Rat(1);
    auto result = min_C(spec);
    ok &= check(result.delta == Rat(1, 6), detail, "delta is not eps/6");
    ok &= check(result.C <= int_pow(Int(10), 200), detail,
                "returned C exceeds 10^200");

    std::ostringstream out, err;
    int code = cli_main({"bound", "--sequence", "primes", "--eps", "1",
                         "--N", "31"},
                        out, err);
    ok &= check(code == 0, detail, "bound command failed: " + err.str());
    auto doc = json::parse(out.str());
    ok &= check(doc["C"] == "1e197", detail,
                "bound command returned " + doc["C"].dump());
    return ok;
}

// ---- 2: prime growth hypothesis --------------------------------------

bool prime_growth(std::string& detail) {
    auto primes = primes_upto_index(31);
    bool ok = check(primes.back() == 127, detail, "p_31 != 127");
    auto chk = verify_prime_growth(31, Rat(1), 1'000'000);
    ok &= check(chk.ok, detail,
                chk.ok ? ""
                       : "p_k >= 4k fails at k = " +
                             std::to_string(*chk.first_failure));
    return ok;
}

// ---- 3: scalar condition ----------------------------------------------

bool scalar_exact(std::string& detail) {
    return check(scalar_condition_value(Rat(1)) == 3, detail,
                 "(1-1/6)(3+1)(1-1/10) != 3");
}

// ---- 4: worked micro-instance -----------------------------------------

bool worked_micro_instance(std::string& detail) {
    auto inst = coverlab::testing::square_noncover();
    const Rat quarter(1, 4);
    bool ok = true;

    auto full = run_full(inst, quarter);
    ok &= check(full.states[1].weights ==
                    std::vector<Rat>{Rat(1, 3), Rat(2, 3)},
                detail, "P_1 != (1/3, 2/3)");
    ok &= check(full.trace.per_round[1].covered_mass == Rat(1, 3), detail,
                "P_2(B_2) != 1/3");
    ok &= check(full.trace.residual_lower_bound == Rat(1, 3), detail,
                "residual lower bound != 1/3");
    ok &= check(full.states[2].weights[3] == Rat(4, 9), detail,
                "final mass at (1,1) != 4/9");
    ok &= check(full.states[2].weights[3] >= Rat(1, 3), detail,
                "final mass at (1,1) below the residual bound");

    auto cert = certify(inst, quarter, BoundMode::exact);
    ok &= check(cert.criterion_sum == Rat(2, 3), detail, "S != 2/3");
    ok &= check(cert.verdict == Verdict::not_covering, detail,
                "verdict is not NOT_COVERING");

    auto oracle = is_covering(inst);
    ok &= check(!oracle.covered && oracle.witness == Point{{1, 1}}, detail,
                "enumeration witness is not (1,1)");
    return ok;
}

// ---- 5: invariant suite on randomized instances -----------------------

bool invariant_suite(std::string& detail) {
    InstanceGen gen(600'613);
    int done = 0;
    long violations = 0;
    while (done < 200) {
        auto inst = gen.next();
        bool trivial = false;
        for (const auto& h : inst.hyperplanes)
            if (h.fixings().empty()) trivial = true;
        if (trivial) continue;
        ++done;

        Rat delta = gen.random_delta();
        auto rounds = round_partition(inst);
        auto full = run_full(inst, delta);
        const Rat cap_factor = Rat(1) / (Rat(1) - delta);
        const Rat criterion_const = Rat(1) / (4 * delta * (Rat(1) - delta));

        for (int k = 0; k <= inst.space.n(); ++k)
            if (full.states[static_cast<std::size_t>(k)].total_mass() != 1)
                ++violations;

        for (int k = 1; k <= inst.space.n(); ++k) {
            const auto& prev = full.states[static_cast<std::size_t>(k - 1)];
            const auto& cur = full.states[static_cast<std::size_t>(k)];
            auto fibre = static_cast<std::size_t>(inst.space.size(k));

            for (std::size_t r = 0; r < prev.weights.size(); ++r) {
                Rat bound = prev.weights[r] * cap_factor /
                            static_cast<unsigned long>(fibre);
                for (std::size_t y = 0; y < fibre; ++y)
                    if (cur.weights[r * fibre + y] > bound) ++violations;
            }

            for (const auto& h : inst.hyperplanes) {
                auto mk = h.max_fixed();
                if (*mk <= k - 1 &&
                    measure_of(cur, h) != measure_of(prev, h))
                    ++violations;
                if (*mk <= k &&
                    measure_of(cur, h) > nu(h.fixed_set(), delta, inst.space))
                    ++violations;
            }

            if (full.trace.per_round[static_cast<std::size_t>(k - 1)]
                    .covered_mass >
                criterion_const * second_moment_under(prev, inst, rounds, k))
                ++violations;
        }
    }
    return check(violations == 0, detail,
                 std::to_string(violations) + " invariant violations");
}

// ---- 6: mode ordering and certificate soundness ------------------------

bool mode_ordering_soundness(std::string& detail) {
    InstanceGen gen(271'828);
    int done = 0;
    long violations = 0;
    while (done < 200) {
        auto inst = gen.next(/*nonparallel=*/true);
        bool trivial = false;
        for (const auto& h : inst.hyperplanes)
            if (h.fixings().empty()) trivial = true;
        if (trivial) continue;
        ++done;

        Rat delta = gen.random_delta();
        auto exact = certify(inst, delta, BoundMode::exact);
        auto pairwise = certify(inst, delta, BoundMode::pairwise);
        auto product = certify(inst, delta, BoundMode::product);
        for (std::size_t k = 0; k < exact.per_round.size(); ++k) {
            if (exact.per_round[k].value > pairwise.per_round[k].value)
                ++violations;
            if (pairwise.per_round[k].value > product.per_round[k].value)
                ++violations;
        }

        auto covered = covered_bitmap(inst, kDefaultCap);
        bool any_uncovered =
            std::find(covered.begin(), covered.end(), false) != covered.end();
        auto full = run_full(inst, delta);
        Rat uncovered_mass = 0;
        for (std::size_t r = 0; r < covered.size(); ++r)
            if (!covered[r]) uncovered_mass += full.states.back().weights[r];

        for (const auto* cert : {&exact, &pairwise, &product}) {
            if (cert->verdict != Verdict::not_covering) continue;
            if (!any_uncovered) ++violations;
            if (uncovered_mass < cert->residual) ++violations;
        }
    }
    return check(violations == 0, detail,
                 std::to_string(violations) + " ordering/soundness failures");
}

// ---- 7: CRT bridge equivalence ----------------------------------------

bool crt_equivalence(std::string& detail) {
    InstanceGen gen(161'803);
    long violations = 0;
    std::vector<std::int64_t> budget{2, 3, 5, 7, 11, 13, 17};
    for (int t = 0; t < 60; ++t) {
        auto sys = gen.random_squarefree_system(budget, 8);
        // every modulus divides 510510, so the lcm stays under 10^6
        std::int64_t L = 1;
        for (const auto& ap : sys.progressions) L = std::lcm(L, ap.d);
        if (L > 1'000'000) return check(false, detail, "lcm out of range");
        auto ap_verdict = ap_is_covering(sys);
        auto inst = system_to_instance(sys);
        auto inst_verdict = is_covering(inst);
        if (ap_verdict.covered != inst_verdict.covered) {
            ++violations;
            continue;
        }
        if (ap_verdict.covered) continue;

        // residue witness maps to an uncovered point
        Point image;
        for (auto p : inst.space.sizes())
            image.coords.push_back(*ap_verdict.witness % p);
        for (const auto& h : inst.hyperplanes)
            if (h.contains(inst.space, image)) ++violations;

        // point witness lifts (CRT) to an uncovered residue
        std::int64_t z = 0, modulus = 1;
        for (int j = 1; j <= inst.space.n(); ++j) {
            std::int64_t p = inst.space.size(j);
            std::int64_t target = inst_verdict.witness->coords[
                static_cast<std::size_t>(j - 1)];
            while (z % p != target) z += modulus;
            modulus *= p;
        }
        for (const auto& ap : sys.progressions)
            if (z % ap.d == ap.a) ++violations;
    }
    return check(violations == 0, detail,
                 std::to_string(violations) + " CRT correspondence failures");
}

// ---- 8: documented reference values ------------------------------------

bool reference_values(std::string& detail) {
    std::ostringstream out, err;
    int code = cli_main({"bound", "--sequence", "primes", "--eps", "1",
                         "--N", "31", "--growth-limit", "31"},
                        out, err);
    if (!check(code == 0, detail, "bound command failed")) return false;
    auto doc = json::parse(out.str());
    const auto& meta = doc["metadata"];
    bool ok = true;
    ok &= check(meta["distinct_moduli_min_modulus"] == "1e16", detail,
                "missing the 10^16 reference value");
    ok &= check(meta["distinct_moduli_min_modulus_improved"] == "<1e6",
                detail, "missing the <10^6 reference value");
    ok &= check(meta["squarefree_min_modulus_scale"] == "exp(1e200)", detail,
                "missing the exp(10^200) scale value");
    ok &= check(meta.contains("min_modulus_log10_upper"), detail,
                "missing the primorial log bound");
    return ok;
}

// ---- 9: tail bound rigor ------------------------------------------------

bool tail_bound_rigor(std::string& detail) {
    constexpr long kLimit = 1'000'000;
    bool ok = true;
    for (const Rat& eps : {Rat(1, 2), Rat(1)}) {
        unsigned long b = eps.get_den().get_ui();
        unsigned long a = eps.get_num().get_ui();
        unsigned long q = 10 * b;
        unsigned long p = 10 * b + a;  // exponent of k^-(1+eps/10)
        const unsigned long s = 48;

        // One upper-bounded sweep k = 1000..10, accumulating partial sums
        // so each C in {10, 100, 1000} reuses the tail above it.
        Rat sum = 0;
        long next_checkpoint = 1000;
        std::vector<std::pair<long, Rat>> partial;  // (C, sum from C)
        for (long k = kLimit; k >= 10; --k) {
            sum += neg_pow_upper(Int(k), p, q, s);
            if (k == next_checkpoint) {
                partial.emplace_back(k, sum);
                next_checkpoint /= 10;
            }
        }
        for (const auto& [C, upper_sum] : partial) {
            Rat lower_tail = tail_bound_lower(Int(C), eps, 128);
            ok &= check(lower_tail >= upper_sum, detail,
                        "TailBound(" + std::to_string(C) + ", " +
                            rat_to_string(eps) + ") below the exact sum");
        }
    }
    return ok;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "prime-sequence audit passes at C = 10^200 and bound "
            "returns C <= 10^200",
         5.0, remark_reproduction},
        {2, "prime growth p_k >= 4k on [31, 10^6] and p_31 = 127", 10.0,
         prime_growth},
        {3, "scalar condition equals 3 exactly at eps = 1", 0.0,
         scalar_exact},
        {4, "worked (2,2) micro-instance, all values exact", 0.0,
         worked_micro_instance},
        {5, "invariant suite over 200 randomized instances", 60.0,
         invariant_suite},
        {6, "mode ordering and certificate soundness", 0.0,
         mode_ordering_soundness},
        {7, "CRT bridge equivalence with witness correspondence", 0.0,
         crt_equivalence},
        {8, "documented reference constants in bound metadata", 0.0,
         reference_values},
        {9, "tail bound dominates exact partial sums", 60.0,
         tail_bound_rigor},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        if (c.time_limit_s > 0 && secs > c.time_limit_s) {
            ok = false;
            if (detail.empty())
                detail = "exceeded " + std::to_string(c.time_limit_s) +
                         " s time limit";
        }
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << "  criterion " << c.number << ": "
             << c.title << "  [" << std::fixed;
        line.precision(2);
        line << secs << " s]";
        if (!ok) line << "  -- " << detail;
        std::cout << line.str() << "\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
