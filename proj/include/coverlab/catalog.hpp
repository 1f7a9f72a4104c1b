#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coverlab/core_model.hpp"
#include "coverlab/crt_bridge.hpp"
#include "coverlab/exact_cover.hpp"

namespace coverlab {

enum class Expected { covered, not_covered, unknown };

std::string to_string(Expected e);

struct CatalogEntry {
    std::string name;
    std::string kind;  // "ap-system" | "hyperplane-instance"
    std::variant<APSystem, Instance> payload;
    Expected expected = Expected::unknown;
    std::string provenance;
};

// A directory of example systems/instances: <name>.json payload files plus
// index.json carrying kind/expected/provenance. Entries whose expectation
// is not "unknown" are re-verified by enumeration while loading.
class Catalog {
  public:
    // Throws InvalidInputError on a malformed directory or when a
    // verified expectation does not hold.
    static Catalog open(const std::string& dir,
                        std::int64_t cap = kDefaultCap);

    // Alphabetical by name.
    std::vector<std::string> names() const;
    const std::vector<CatalogEntry>& entries() const { return entries_; }

    // Throws UnknownNameError for names not in the index.
    const CatalogEntry& get(const std::string& name) const;

  private:
    std::vector<CatalogEntry> entries_;  // sorted by name
};

// Exhaustive backtracking search for a covering system whose moduli are
// pairwise distinct square-free divisors (> 1) of the primorial of
// `prime_budget`. Returns a verified system if one exists, nullopt when
// the search space is exhausted. Throws TooLargeError when the primorial
// exceeds cap.
std::optional<APSystem> search_squarefree_cover(
    const std::vector<std::int64_t>& prime_budget,
    std::int64_t cap = kDefaultCap);

}  // namespace coverlab
