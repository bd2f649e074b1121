#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "bulsol/partition.hpp"
#include "bulsol/rng.hpp"

using namespace bulsol;

TEST_SUITE_BEGIN("partition");

TEST_CASE("partition validates shape") {
    CHECK_THROWS_AS(Partition({3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({-1}), std::invalid_argument);
    const Partition p({4, 3, 1});
    CHECK(p.total() == 8);
    CHECK(p.count() == 3);
    CHECK(p.part(1) == 4);
    CHECK(p.part(4) == 0);
    CHECK(p.to_string() == "4+3+1");
    CHECK(Partition().to_string() == "0");
}

TEST_CASE("composition keeps interior zeros, never trailing ones") {
    const WeakComposition a({3, 0, 2, 4, 1, 0, 0});
    CHECK(a.parts() == std::vector<std::int64_t>{3, 0, 2, 4, 1});
    CHECK(a.total() == 10);
    CHECK(a.count() == 5);
    CHECK_THROWS_AS(WeakComposition({1, -2}), std::invalid_argument);
    CHECK(WeakComposition({0, 0}).empty());
}

TEST_CASE("boundary values from a worked composition") {
    const WeakComposition a({3, 0, 2, 4, 1});
    CHECK(boundary(a, 0.5) == 3);
    CHECK(boundary(a, 3.0) == 4);
    CHECK(boundary(a, 1.0) == 0);  // interior empty bowl
    CHECK(boundary(a, 4.999) == 1);
    CHECK(boundary(a, 5.0) == 0);

    const Partition p({5});
    CHECK(boundary(p, 7.0) == 0);
    CHECK(boundary(p, 0.0) == 5);
    CHECK_THROWS_AS(boundary(p, -0.1), std::domain_error);
}

TEST_CASE("boundary is weakly decreasing for partitions") {
    const Partition p({9, 9, 4, 2, 1, 1});
    double prev = 1e300;
    for (double x = 0.0; x < 8.0; x += 0.25) {
        const double v = static_cast<double>(boundary(p, x));
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("ord sorts parts and preserves the multiset") {
    CHECK(ord(WeakComposition({3, 0, 2, 4, 1})).parts() ==
          std::vector<std::int64_t>{4, 3, 2, 1});
    CHECK(ord(WeakComposition({5})).parts() == std::vector<std::int64_t>{5});
    CHECK(ord(WeakComposition({1, 1, 1})).parts() == std::vector<std::int64_t>{1, 1, 1});

    RngStream rng(314);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> parts;
        const int len = 1 + static_cast<int>(rng.next_u64() % 12);
        for (int i = 0; i < len; ++i)
            parts.push_back(static_cast<std::int64_t>(rng.next_u64() % 7));
        const WeakComposition alpha(parts);
        const Partition sorted = ord(alpha);

        CHECK(sorted.total() == alpha.total());
        std::multiset<std::int64_t> before, after;
        for (const auto v : alpha.parts())
            if (v > 0) before.insert(v);
        for (const auto v : sorted.parts()) after.insert(v);
        CHECK(before == after);
        CHECK(sorted.count() ==
              static_cast<std::size_t>(std::count_if(alpha.parts().begin(),
                                                     alpha.parts().end(),
                                                     [](std::int64_t v) { return v > 0; })));
    }
}

TEST_SUITE_END();
