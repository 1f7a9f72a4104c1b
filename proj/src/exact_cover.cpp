#include "coverlab/exact_cover.hpp"

#include <numeric>

#include "coverlab/errors.hpp"

namespace coverlab {

namespace {

std::size_t checked_point_count(const ProductSpace& space, std::int64_t cap) {
    Int total = space.point_count();
    if (cap < 1 || total > cap)
        throw TooLargeError("space has " + total.get_str() +
                            " points, cap is " + std::to_string(cap));
    return static_cast<std::size_t>(total.get_ui());
}

// Marks every point of `h` in the rank-indexed bitmap.
void mark_hyperplane(const ProductSpace& space, const Hyperplane& h,
                     std::vector<bool>& covered) {
    int n = space.n();
    // strides[j-1] = number of points per unit step of coordinate j
    std::vector<std::size_t> strides(static_cast<std::size_t>(n), 1);
    for (int j = n - 1; j >= 1; --j)
        strides[static_cast<std::size_t>(j - 1)] =
            strides[static_cast<std::size_t>(j)] *
            static_cast<std::size_t>(space.size(j + 1));

    std::vector<int> free_coords;
    std::size_t base = 0;
    for (int j = 1; j <= n; ++j) {
        auto it = h.fixings().find(j);
        if (it == h.fixings().end())
            free_coords.push_back(j);
        else
            base += static_cast<std::size_t>(it->second) *
                    strides[static_cast<std::size_t>(j - 1)];
    }

    // Odometer over the free coordinates.
    std::vector<std::int64_t> value(free_coords.size(), 0);
    while (true) {
        std::size_t rank = base;
        for (std::size_t i = 0; i < free_coords.size(); ++i)
            rank += static_cast<std::size_t>(value[i]) *
                    strides[static_cast<std::size_t>(free_coords[i] - 1)];
        covered[rank] = true;
        std::size_t pos = free_coords.size();
        while (pos > 0) {
            --pos;
            if (++value[pos] < space.size(free_coords[pos])) break;
            value[pos] = 0;
            if (pos == 0) return;
        }
        if (free_coords.empty()) return;
    }
}

}  // namespace

std::vector<bool> covered_bitmap(const Instance& inst, std::int64_t cap) {
    inst.validate();
    std::size_t total = checked_point_count(inst.space, cap);
    std::vector<bool> covered(total, false);
    for (const auto& h : inst.hyperplanes) {
        if (h.fixings().empty()) {
            // A = Q covers everything outright.
            covered.assign(total, true);
            return covered;
        }
        mark_hyperplane(inst.space, h, covered);
    }
    return covered;
}

CoverVerdict is_covering(const Instance& inst, std::int64_t cap) {
    auto covered = covered_bitmap(inst, cap);
    CoverVerdict v;
    v.total_count = inst.space.point_count();
    std::size_t uncovered = 0;
    std::size_t first_uncovered = covered.size();
    for (std::size_t r = 0; r < covered.size(); ++r) {
        if (!covered[r]) {
            if (first_uncovered == covered.size()) first_uncovered = r;
            ++uncovered;
        }
    }
    v.uncovered_count = static_cast<unsigned long>(uncovered);
    v.covered = (uncovered == 0);
    if (!v.covered)
        v.witness =
            prefix_unrank(inst.space, inst.space.n(), first_uncovered);
    return v;
}

Rat uncovered_measure(const Instance& inst, std::int64_t cap) {
    auto v = is_covering(inst, cap);
    return make_rat(v.uncovered_count, v.total_count);
}

APCoverVerdict ap_is_covering(const APSystem& sys, std::int64_t cap) {
    Int L = 1;
    for (const auto& ap : sys.progressions) {
        if (ap.d < 1) throw InvalidInputError("modulus must be >= 1");
        Int d = ap.d;
        L = L / gcd(L, d) * d;
        if (cap >= 1 && L > cap)
            throw TooLargeError("lcm of moduli exceeds cap " +
                                std::to_string(cap));
    }
    if (cap < 1) throw TooLargeError("cap must be >= 1");
    auto len = static_cast<std::size_t>(L.get_ui());

    std::vector<bool> covered(len, false);
    for (const auto& ap : sys.progressions) {
        auto d = static_cast<std::size_t>(ap.d);
        for (std::size_t r = static_cast<std::size_t>(ap.a); r < len; r += d)
            covered[r] = true;
    }

    APCoverVerdict v;
    v.total_count = L;
    std::size_t uncovered = 0;
    std::size_t first = len;
    for (std::size_t r = 0; r < len; ++r) {
        if (!covered[r]) {
            if (first == len) first = r;
            ++uncovered;
        }
    }
    v.uncovered_count = static_cast<unsigned long>(uncovered);
    v.covered = (uncovered == 0);
    if (!v.covered) v.witness = static_cast<std::int64_t>(first);
    return v;
}

}  // namespace coverlab
