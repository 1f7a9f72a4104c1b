#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "coverlab/numbers.hpp"

namespace coverlab {

// The ambient product Q = S_1 x ... x S_n, given by the coordinate sizes.
// Coordinate j (1-based) ranges over {0, ..., sizes[j-1]-1}.
class ProductSpace {
  public:
    ProductSpace() = default;
    explicit ProductSpace(std::vector<std::int64_t> sizes);

    int n() const { return static_cast<int>(sizes_.size()); }
    std::int64_t size(int j) const;  // |S_j|, j in [1, n]
    const std::vector<std::int64_t>& sizes() const { return sizes_; }

    // |S_1 x ... x S_k| as an exact integer; k = n() gives |Q|.
    Int prefix_count(int k) const;
    Int point_count() const { return prefix_count(n()); }

    bool operator==(const ProductSpace&) const = default;

  private:
    std::vector<std::int64_t> sizes_;
};

// A point of Q (or a k-prefix point of Q_k when coords is shorter than n).
struct Point {
    std::vector<std::int64_t> coords;

    bool operator==(const Point&) const = default;
};

// Lexicographic (mixed-radix, coordinate 1 most significant) rank of a
// k-prefix point. The caller guarantees the prefix count fits size_t.
std::size_t prefix_rank(const ProductSpace& space, const Point& prefix);
Point prefix_unrank(const ProductSpace& space, int k, std::size_t rank);

// A hyperplane: a product subset of Q fixing some coordinates to single
// values. fixings maps 1-based coordinate index -> fixed value; its key
// set is the fixed-coordinate set F(A). Empty fixings means A = Q.
class Hyperplane {
  public:
    Hyperplane() = default;
    explicit Hyperplane(std::map<int, std::int64_t> fixings)
        : fixings_(std::move(fixings)) {}

    const std::map<int, std::int64_t>& fixings() const { return fixings_; }

    std::set<int> fixed_set() const;

    // max(F(A)); nullopt when F(A) is empty.
    std::optional<int> max_fixed() const;

    // Membership of a point (throws InvalidInputError on dimension or
    // range mismatch against `space`).
    bool contains(const ProductSpace& space, const Point& p) const;

    // Membership test against a k-prefix point, considering only fixings
    // with coordinate <= k. No validation.
    bool contains_prefix(const Point& prefix) const;

    // Restriction A^U: keep only fixings whose coordinate lies in U.
    Hyperplane project(const std::set<int>& U) const;
    // A^{[k]}: keep fixings with coordinate <= k.
    Hyperplane project_upto(int k) const;

    // Validates indices/values against a space; throws InvalidInputError.
    void validate(const ProductSpace& space) const;

    bool operator==(const Hyperplane&) const = default;

  private:
    std::map<int, std::int64_t> fixings_;
};

struct Instance {
    ProductSpace space;
    std::vector<Hyperplane> hyperplanes;

    // Throws InvalidInputError if any hyperplane is invalid in the space.
    void validate() const;
};

// First pair (i, j), i < j (1-based), with F(A_i) = F(A_j); nullopt when
// the map A -> F(A) is injective on the list.
std::optional<std::pair<int, int>> find_parallel_pair(const Instance& inst);

// Round decomposition: by_round[k] lists the (0-based) indices of the
// hyperplanes revealed in round k, i.e. those with max(F(A)) = k. The
// union B_k of round k is represented lazily by this index list.
struct RoundPartition {
    std::vector<std::vector<int>> by_round;  // index 0 unused

    const std::vector<int>& round(int k) const { return by_round[k]; }
};

// Throws TriviallyCoveringError if some hyperplane has F(A) empty.
RoundPartition round_partition(const Instance& inst);

}  // namespace coverlab
