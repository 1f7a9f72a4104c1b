#include "coverlab/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

#include "coverlab/errors.hpp"
#include "coverlab/json_io.hpp"

namespace coverlab {

std::string to_string(Expected e) {
    switch (e) {
        case Expected::covered: return "covered";
        case Expected::not_covered: return "not-covered";
        case Expected::unknown: return "unknown";
    }
    return "?";
}

namespace {

Expected expected_from_string(const std::string& s) {
    if (s == "covered") return Expected::covered;
    if (s == "not-covered") return Expected::not_covered;
    if (s == "unknown") return Expected::unknown;
    throw InvalidInputError("bad expected flag: " + s);
}

void verify_entry(const CatalogEntry& e, std::int64_t cap) {
    if (e.expected == Expected::unknown) return;
    bool covered;
    if (const auto* sys = std::get_if<APSystem>(&e.payload))
        covered = ap_is_covering(*sys, cap).covered;
    else
        covered = is_covering(std::get<Instance>(e.payload), cap).covered;
    bool want = e.expected == Expected::covered;
    if (covered != want)
        throw InvalidInputError("catalog entry \"" + e.name +
                                "\" fails its expected verdict");
}

}  // namespace

Catalog Catalog::open(const std::string& dir, std::int64_t cap) {
    namespace fs = std::filesystem;
    auto index_path = fs::path(dir) / "index.json";
    auto index = parse_json_file(index_path.string());
    if (!index.contains("entries") || !index["entries"].is_array())
        throw InvalidInputError("index.json must carry an \"entries\" array");

    Catalog cat;
    for (const auto& ej : index["entries"]) {
        CatalogEntry e;
        e.name = ej.at("name").get<std::string>();
        e.kind = ej.at("kind").get<std::string>();
        e.expected = expected_from_string(ej.at("expected").get<std::string>());
        e.provenance = ej.value("provenance", "");
        auto payload = parse_json_file(
            (fs::path(dir) / (e.name + ".json")).string());
        if (e.kind == "ap-system")
            e.payload = apsystem_from_json(payload);
        else if (e.kind == "hyperplane-instance") {
            auto inst = instance_from_json(payload);
            inst.validate();
            e.payload = std::move(inst);
        } else
            throw InvalidInputError("bad kind for entry \"" + e.name + "\"");
        verify_entry(e, cap);
        cat.entries_.push_back(std::move(e));
    }
    std::sort(cat.entries_.begin(), cat.entries_.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  return a.name < b.name;
              });
    for (std::size_t i = 1; i < cat.entries_.size(); ++i)
        if (cat.entries_[i].name == cat.entries_[i - 1].name)
            throw InvalidInputError("duplicate catalog name: " +
                                    cat.entries_[i].name);
    return cat;
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

const CatalogEntry& Catalog::get(const std::string& name) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), name,
        [](const CatalogEntry& e, const std::string& n) { return e.name < n; });
    if (it == entries_.end() || it->name != name)
        throw UnknownNameError("no catalog entry named \"" + name + "\"");
    return *it;
}

namespace {

struct CoverSearch {
    std::int64_t L = 1;  // primorial of the budget
    std::vector<std::int64_t> moduli;       // candidate moduli, descending
    std::vector<bool> used;
    std::vector<std::int64_t> chosen_a;     // residue per used modulus
    std::vector<int> cover_count;           // how many progressions cover r
    std::int64_t uncovered = 0;

    bool solve();
    void apply(std::size_t i, std::int64_t a, int dir);
    std::optional<std::int64_t> first_uncovered() const;
};

std::optional<std::int64_t> CoverSearch::first_uncovered() const {
    for (std::int64_t r = 0; r < L; ++r)
        if (cover_count[static_cast<std::size_t>(r)] == 0) return r;
    return std::nullopt;
}

void CoverSearch::apply(std::size_t i, std::int64_t a, int dir) {
    auto d = moduli[i];
    for (std::int64_t r = a; r < L; r += d) {
        auto& c = cover_count[static_cast<std::size_t>(r)];
        if (dir > 0) {
            if (c++ == 0) --uncovered;
        } else {
            if (--c == 0) ++uncovered;
        }
    }
}

bool CoverSearch::solve() {
    auto z = first_uncovered();
    if (!z) return true;

    // Measure prune: the unused moduli cannot contribute more residues
    // than the sum of their densities.
    std::int64_t capacity = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (!used[i]) capacity += L / moduli[i];
    if (capacity < uncovered) return false;

    // The smallest uncovered residue must be covered by some unused
    // modulus, which forces that modulus's residue class.
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        auto a = *z % moduli[i];
        chosen_a[i] = a;
        apply(i, a, +1);
        if (solve()) return true;
        apply(i, a, -1);
        used[i] = false;
        chosen_a[i] = -1;
    }
    return false;
}

}  // namespace

std::optional<APSystem> search_squarefree_cover(
    const std::vector<std::int64_t>& prime_budget, std::int64_t cap) {
    if (prime_budget.empty())
        throw InvalidInputError("empty prime budget");
    std::int64_t L = 1;
    for (std::size_t i = 0; i < prime_budget.size(); ++i) {
        auto p = prime_budget[i];
        if (p < 2) throw InvalidInputError("budget entries must be >= 2");
        for (std::int64_t q = 2; q * q <= p; ++q)
            if (p % q == 0)
                throw InvalidInputError("budget entry " + std::to_string(p) +
                                        " is not prime");
        for (std::size_t j = 0; j < i; ++j)
            if (prime_budget[j] == p)
                throw InvalidInputError("duplicate prime in budget");
        if (L > cap / p)
            throw TooLargeError("primorial of the budget exceeds cap");
        L *= p;
    }

    // All square-free moduli > 1 available here = divisors of L except 1,
    // ascending, so the forced-choice branching tries dense classes first.
    std::vector<std::int64_t> moduli;
    for (std::int64_t d = 2; d <= L; ++d)
        if (L % d == 0) moduli.push_back(d);

    CoverSearch search;
    search.L = L;
    search.moduli = moduli;
    search.used.assign(moduli.size(), false);
    search.chosen_a.assign(moduli.size(), -1);
    search.cover_count.assign(static_cast<std::size_t>(L), 0);
    search.uncovered = L;

    if (!search.solve()) return std::nullopt;

    APSystem sys;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (search.used[i])
            sys.progressions.push_back(
                make_progression(search.chosen_a[i], moduli[i]));
    // The found system must verify; anything else is a search bug.
    auto verdict = ap_is_covering(sys, cap);
    if (!verdict.covered)
        throw std::logic_error("search produced a non-covering system");
    return sys;
}

}  // namespace coverlab
