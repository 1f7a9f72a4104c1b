#include "coverlab/core_model.hpp"

#include "coverlab/errors.hpp"

namespace coverlab {

ProductSpace::ProductSpace(std::vector<std::int64_t> sizes)
    : sizes_(std::move(sizes)) {
    if (sizes_.empty())
        throw InvalidInputError("product space needs at least one coordinate");
    for (std::size_t i = 0; i < sizes_.size(); ++i)
        if (sizes_[i] < 2)
            throw InvalidInputError("coordinate " + std::to_string(i + 1) +
                                    " has size < 2");
}

std::int64_t ProductSpace::size(int j) const {
    if (j < 1 || j > n())
        throw InvalidInputError("coordinate index out of range: " +
                                std::to_string(j));
    return sizes_[static_cast<std::size_t>(j - 1)];
}

Int ProductSpace::prefix_count(int k) const {
    if (k < 0 || k > n())
        throw InvalidInputError("prefix length out of range: " +
                                std::to_string(k));
    Int c = 1;
    for (int j = 1; j <= k; ++j) c *= size(j);
    return c;
}

std::size_t prefix_rank(const ProductSpace& space, const Point& prefix) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < prefix.coords.size(); ++i)
        r = r * static_cast<std::size_t>(space.sizes()[i]) +
            static_cast<std::size_t>(prefix.coords[i]);
    return r;
}

Point prefix_unrank(const ProductSpace& space, int k, std::size_t rank) {
    Point p;
    p.coords.assign(static_cast<std::size_t>(k), 0);
    for (int j = k; j >= 1; --j) {
        auto s = static_cast<std::size_t>(space.size(j));
        p.coords[static_cast<std::size_t>(j - 1)] =
            static_cast<std::int64_t>(rank % s);
        rank /= s;
    }
    return p;
}

std::set<int> Hyperplane::fixed_set() const {
    std::set<int> f;
    for (const auto& [j, v] : fixings_) f.insert(j);
    return f;
}

std::optional<int> Hyperplane::max_fixed() const {
    if (fixings_.empty()) return std::nullopt;
    return fixings_.rbegin()->first;
}

bool Hyperplane::contains(const ProductSpace& space, const Point& p) const {
    validate(space);
    if (static_cast<int>(p.coords.size()) != space.n())
        throw InvalidInputError("point dimension does not match space");
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        auto v = p.coords[i];
        if (v < 0 || v >= space.sizes()[i])
            throw InvalidInputError("point coordinate out of range");
    }
    for (const auto& [j, v] : fixings_)
        if (p.coords[static_cast<std::size_t>(j - 1)] != v) return false;
    return true;
}

bool Hyperplane::contains_prefix(const Point& prefix) const {
    int k = static_cast<int>(prefix.coords.size());
    for (const auto& [j, v] : fixings_) {
        if (j > k) break;
        if (prefix.coords[static_cast<std::size_t>(j - 1)] != v) return false;
    }
    return true;
}

Hyperplane Hyperplane::project(const std::set<int>& U) const {
    std::map<int, std::int64_t> kept;
    for (const auto& [j, v] : fixings_)
        if (U.count(j)) kept.emplace(j, v);
    return Hyperplane(std::move(kept));
}

Hyperplane Hyperplane::project_upto(int k) const {
    std::map<int, std::int64_t> kept;
    for (const auto& [j, v] : fixings_) {
        if (j > k) break;
        kept.emplace(j, v);
    }
    return Hyperplane(std::move(kept));
}

void Hyperplane::validate(const ProductSpace& space) const {
    for (const auto& [j, v] : fixings_) {
        if (j < 1 || j > space.n())
            throw InvalidInputError("fixed coordinate index " +
                                    std::to_string(j) + " out of range");
        if (v < 0 || v >= space.size(j))
            throw InvalidInputError("fixed value " + std::to_string(v) +
                                    " out of range for coordinate " +
                                    std::to_string(j));
    }
}

void Instance::validate() const {
    for (const auto& h : hyperplanes) h.validate(space);
}

std::optional<std::pair<int, int>> find_parallel_pair(const Instance& inst) {
    const auto& hs = inst.hyperplanes;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            // parallel = identical fixed-coordinate sets
            const auto& a = hs[i].fixings();
            const auto& b = hs[j].fixings();
            if (a.size() != b.size()) continue;
            bool same = true;
            auto ita = a.begin();
            auto itb = b.begin();
            for (; ita != a.end(); ++ita, ++itb)
                if (ita->first != itb->first) {
                    same = false;
                    break;
                }
            if (same)
                return std::make_pair(static_cast<int>(i + 1),
                                      static_cast<int>(j + 1));
        }
    }
    return std::nullopt;
}

RoundPartition round_partition(const Instance& inst) {
    RoundPartition rp;
    rp.by_round.assign(static_cast<std::size_t>(inst.space.n()) + 1, {});
    for (std::size_t i = 0; i < inst.hyperplanes.size(); ++i) {
        auto mk = inst.hyperplanes[i].max_fixed();
        if (!mk)
            throw TriviallyCoveringError(
                "hyperplane " + std::to_string(i + 1) +
                " fixes no coordinate and covers the whole space");
        rp.by_round[static_cast<std::size_t>(*mk)].push_back(
            static_cast<int>(i));
    }
    return rp;
}

}  // namespace coverlab
