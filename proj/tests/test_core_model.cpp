#include <doctest.h>

#include "coverlab/core_model.hpp"
#include "coverlab/errors.hpp"
#include "support.hpp"

using namespace coverlab;
using coverlab::testing::hp;
using coverlab::testing::make_instance;

TEST_CASE("hyperplane membership") {
    ProductSpace s22({2, 2});
    CHECK(hp({{1, 0}}).contains(s22, Point{{0, 1}}));

    ProductSpace s23({2, 3});
    CHECK_FALSE(hp({{1, 0}, {2, 1}}).contains(s23, Point{{0, 0}}));

    CHECK(hp({}).contains(s22, Point{{1, 1}}));  // A = Q

    CHECK_THROWS_AS(hp({{1, 0}}).contains(s22, Point{{0}}),
                    InvalidInputError);
    CHECK_THROWS_AS(hp({{1, 0}}).contains(s22, Point{{0, 5}}),
                    InvalidInputError);
}

TEST_CASE("max fixed coordinate") {
    CHECK(hp({{1, 0}, {3, 2}}).max_fixed() == 3);
    CHECK(hp({}).max_fixed() == std::nullopt);
    CHECK(hp({{2, 1}}).max_fixed() == 2);
}

TEST_CASE("projection") {
    auto h = hp({{1, 0}, {2, 1}});
    CHECK(h.project({1}) == hp({{1, 0}}));
    CHECK(h.project({1, 2, 3}) == h);
    CHECK(hp({{2, 1}}).project({1}) == hp({}));
}

TEST_CASE("projection composes as intersection of coordinate sets") {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        std::map<int, std::int64_t> f;
        std::set<int> U1, U2;
        for (int j = 1; j <= 8; ++j) {
            if (rng() % 2) f[j] = static_cast<std::int64_t>(rng() % 3);
            if (rng() % 2) U1.insert(j);
            if (rng() % 2) U2.insert(j);
        }
        std::set<int> both;
        for (int j : U1)
            if (U2.count(j)) both.insert(j);
        Hyperplane h(f);
        CHECK(h.project(both) == h.project(U1).project(U2));
    }
}

TEST_CASE("projection only loosens membership") {
    ProductSpace s({3, 3, 3});
    auto h = hp({{1, 1}, {3, 2}});
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        Point p{{static_cast<std::int64_t>(rng() % 3),
                 static_cast<std::int64_t>(rng() % 3),
                 static_cast<std::int64_t>(rng() % 3)}};
        std::set<int> U;
        for (int j = 1; j <= 3; ++j)
            if (rng() % 2) U.insert(j);
        if (h.contains(s, p)) CHECK(h.project(U).contains(s, p));
    }
}

TEST_CASE("parallel pair detection") {
    auto none = make_instance({2, 2},
                              {hp({{1, 0}}), hp({{2, 0}}),
                               hp({{1, 1}, {2, 1}})});
    CHECK(find_parallel_pair(none) == std::nullopt);

    auto same_f = make_instance({2, 2}, {hp({{1, 0}}), hp({{1, 1}})});
    CHECK(find_parallel_pair(same_f) == std::pair{1, 2});

    auto dup = make_instance({2, 2}, {hp({{1, 0}}), hp({{1, 0}})});
    CHECK(find_parallel_pair(dup) == std::pair{1, 2});
}

TEST_CASE("parallel detection matches F-set injectivity on random data") {
    coverlab::testing::InstanceGen gen(101);
    for (int t = 0; t < 100; ++t) {
        auto inst = gen.next();
        std::set<std::set<int>> fsets;
        bool injective = true;
        for (const auto& h : inst.hyperplanes)
            if (!fsets.insert(h.fixed_set()).second) injective = false;
        CHECK(find_parallel_pair(inst).has_value() == !injective);
    }
}

TEST_CASE("round partition groups by max fixed coordinate") {
    auto inst = make_instance(
        {2, 2}, {hp({{1, 0}}), hp({{2, 0}}), hp({{1, 1}, {2, 1}})});
    auto rp = round_partition(inst);
    CHECK(rp.round(1) == std::vector{0});
    CHECK(rp.round(2) == std::vector{1, 2});

    auto single = make_instance({2, 2, 2}, {hp({{3, 1}})});
    auto rp3 = round_partition(single);
    CHECK(rp3.round(1).empty());
    CHECK(rp3.round(2).empty());
    CHECK(rp3.round(3) == std::vector{0});

    auto empty = make_instance({2, 2}, {});
    auto rpe = round_partition(empty);
    CHECK(rpe.round(1).empty());
    CHECK(rpe.round(2).empty());
}

TEST_CASE("round partition rejects the all-of-Q hyperplane") {
    auto inst = make_instance({2, 2}, {hp({})});
    CHECK_THROWS_AS(round_partition(inst), TriviallyCoveringError);
}

TEST_CASE("round partition is a partition of the hyperplane list") {
    coverlab::testing::InstanceGen gen(55);
    for (int t = 0; t < 100; ++t) {
        auto inst = gen.next();
        auto rp = round_partition(inst);
        std::vector<bool> seen(inst.hyperplanes.size(), false);
        for (int k = 1; k <= inst.space.n(); ++k)
            for (int idx : rp.round(k)) {
                CHECK(inst.hyperplanes[static_cast<std::size_t>(idx)]
                          .max_fixed() == k);
                CHECK_FALSE(seen[static_cast<std::size_t>(idx)]);
                seen[static_cast<std::size_t>(idx)] = true;
            }
        for (bool s : seen) CHECK(s);
    }
}

TEST_CASE("prefix rank round-trips") {
    ProductSpace s({2, 3, 5});
    for (std::size_t r = 0; r < 30; ++r) {
        auto p = prefix_unrank(s, 3, r);
        CHECK(prefix_rank(s, p) == r);
    }
    CHECK(prefix_unrank(s, 3, 0).coords == std::vector<std::int64_t>{0, 0, 0});
    CHECK(prefix_unrank(s, 3, 29).coords ==
          std::vector<std::int64_t>{1, 2, 4});
}

TEST_CASE("space validation") {
    CHECK_THROWS_AS(ProductSpace({2, 1}), InvalidInputError);
    CHECK_THROWS_AS(ProductSpace(std::vector<std::int64_t>{}),
                    InvalidInputError);
    ProductSpace s({2, 3});
    CHECK(s.point_count() == 6);
    CHECK(s.prefix_count(0) == 1);
    CHECK_THROWS_AS(hp({{3, 0}}).validate(s), InvalidInputError);
    CHECK_THROWS_AS(hp({{2, 3}}).validate(s), InvalidInputError);
}
