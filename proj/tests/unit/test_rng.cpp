#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "mobiflow/rng.hpp"

using namespace mobiflow;

TEST_CASE("mix and derive_seed are deterministic and well spread") {
    CHECK(rng::mix(42) == rng::mix(42));
    CHECK(rng::derive_seed(42, 3) == rng::derive_seed(42, 3));

    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(rng::derive_seed(7, i));
    CHECK(seen.size() == 1000);
    CHECK(seen.count(7) == 0); // derived seeds do not echo the base

    CHECK(rng::derive_seed(1, 0) != rng::derive_seed(2, 0));
}

TEST_CASE("engine streams are reproducible per seed") {
    rng::Engine a(123);
    rng::Engine b(123);
    rng::Engine c(124);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && va == b.next_u64();
        any_diff = any_diff || va != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform draws stay in range") {
    rng::Engine engine(9);
    std::set<std::uint64_t> values;
    for (int i = 0; i < 10000; ++i) {
        const double u = engine.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = engine.uniform(-2.0, 5.0);
        CHECK(v >= -2.0);
        CHECK(v < 5.0);
        values.insert(engine.below(10));
    }
    CHECK(*std::max_element(values.begin(), values.end()) <= 9);
    CHECK(values.size() == 10); // all residues reached
    CHECK(engine.below(1) == 0);
    CHECK(engine.below(0) == 0);
}

TEST_CASE("gaussian matches its first two moments") {
    rng::Engine engine(2718);
    const int n = 20000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = engine.gaussian(0.0, 1.0);
        CHECK(std::isfinite(z));
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    const double stddev = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(stddev - 1.0) < 0.02);

    rng::Engine shifted(2718);
    const double z0 = rng::Engine(2718).gaussian(0.0, 1.0);
    CHECK(shifted.gaussian(10.0, 2.0) == doctest::Approx(10.0 + 2.0 * z0).epsilon(1e-12));
}

TEST_CASE("shuffle is a seeded permutation") {
    std::vector<int> items(20);
    for (int i = 0; i < 20; ++i) items[i] = i;
    std::vector<int> first = items;
    std::vector<int> second = items;

    rng::Engine(77).shuffle(first);
    rng::Engine(77).shuffle(second);
    CHECK(first == second); // same seed, same order

    std::vector<int> sorted = first;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == items); // still a permutation
    CHECK(first != items);  // fixed seed known to move something

    std::vector<int> other = items;
    rng::Engine(78).shuffle(other);
    CHECK(other != first);
}
