#pragma once

#include <random>
#include <set>
#include <vector>

#include "coverlab/core_model.hpp"
#include "coverlab/crt_bridge.hpp"
#include "coverlab/numbers.hpp"

namespace coverlab::testing {

// Deterministic generator of small random instances within the bounds of
// the randomized-suite criteria: n <= 6, sizes <= 8, <= 12 hyperplanes,
// every hyperplane fixing at least one coordinate.
struct InstanceGen {
    std::mt19937 rng;

    explicit InstanceGen(unsigned seed) : rng(seed) {}

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    Instance next(bool nonparallel = false) {
        int n = uniform(1, 6);
        std::vector<std::int64_t> sizes;
        for (int j = 0; j < n; ++j) sizes.push_back(uniform(2, 8));
        Instance inst;
        inst.space = ProductSpace(sizes);

        int m = uniform(0, 12);
        std::set<std::set<int>> seen;
        for (int i = 0; i < m; ++i) {
            std::set<int> F;
            for (int attempt = 0; attempt < 50; ++attempt) {
                F.clear();
                for (int j = 1; j <= n; ++j)
                    if (uniform(0, 1)) F.insert(j);
                if (F.empty()) F.insert(uniform(1, n));
                if (!nonparallel || !seen.count(F)) break;
            }
            if (nonparallel && seen.count(F)) continue;  // budget exhausted
            seen.insert(F);
            std::map<int, std::int64_t> fixings;
            for (int j : F)
                fixings[j] = uniform(0, static_cast<int>(
                                            inst.space.size(j) - 1));
            inst.hyperplanes.emplace_back(std::move(fixings));
        }
        return inst;
    }

    Rat random_delta() {
        switch (uniform(0, 2)) {
            case 0: return Rat(1, 10);
            case 1: return Rat(1, 4);
            default: return Rat(1, 2);
        }
    }

    // Random square-free system over a small prime budget, lcm bounded by
    // the primorial of the budget.
    APSystem random_squarefree_system(const std::vector<std::int64_t>& budget,
                                      int max_progressions) {
        APSystem sys;
        int m = uniform(1, max_progressions);
        for (int i = 0; i < m; ++i) {
            std::int64_t d = 1;
            for (auto p : budget)
                if (uniform(0, 1)) d *= p;
            if (d == 1) d = budget[static_cast<std::size_t>(
                uniform(0, static_cast<int>(budget.size()) - 1))];
            sys.progressions.push_back(
                make_progression(uniform(0, static_cast<int>(d - 1)), d));
        }
        return sys;
    }
};

inline Hyperplane hp(std::map<int, std::int64_t> fixings) {
    return Hyperplane(std::move(fixings));
}

inline Instance make_instance(std::vector<std::int64_t> sizes,
                              std::vector<Hyperplane> hs) {
    Instance inst{ProductSpace(std::move(sizes)), std::move(hs)};
    inst.validate();
    return inst;
}

// The worked micro-instance used across suites: sizes (2,2) with the two
// axis hyperplanes {1->0} and {2->0}.
inline Instance square_noncover() {
    return make_instance({2, 2}, {hp({{1, 0}}), hp({{2, 0}})});
}

inline Instance square_cover() {
    return make_instance({2, 2},
                         {hp({{1, 0}}), hp({{2, 0}}), hp({{1, 1}, {2, 1}})});
}

}  // namespace coverlab::testing
