#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cachediff/errors.hpp"
#include "cachediff/oracle.hpp"

using namespace cachediff;
using namespace cachediff::oracle;

TEST_CASE("full_shuffle_sample") {
    SeededSource rng(1);
    std::vector<std::string> one{"A"};
    CHECK(full_shuffle_sample(std::span<std::string>(one), 1, rng) ==
          std::vector<std::string>{"A"});

    // (3,1): A D C B, then (2,0): C D A B -> tail [A, B]
    std::vector<std::string> items{"A", "B", "C", "D"};
    ScriptedSource script({1, 0});
    CHECK(full_shuffle_sample(std::span<std::string>(items), 2, script) ==
          std::vector<std::string>{"A", "B"});
    CHECK(items == std::vector<std::string>{"C", "D", "A", "B"});
    ScriptedSource same({1, 0});
    CHECK(full_index_sample(4, 2, same) == std::vector<Index>{0, 1});

    std::vector<int> all{0, 1, 2, 3, 4, 5};
    auto picked = full_shuffle_sample(std::span<int>(all), 6, rng);
    std::sort(picked.begin(), picked.end());
    CHECK(picked == std::vector<int>{0, 1, 2, 3, 4, 5});

    CHECK_THROWS_AS(full_shuffle_sample(std::span<int>(all), 7, rng), InvalidArgument);
}

TEST_CASE("full_index_sample") {
    SeededSource rng(1);
    CHECK(full_index_sample(1, 1, rng) == std::vector<Index>{0});

    ScriptedSource three({3});
    const auto r = full_index_sample_traced(8, 1, three);
    CHECK(r.slice == std::vector<Index>{3});
    CHECK(r.index[7] == 3);
    CHECK(r.index[3] == 7);

    CHECK_THROWS_AS(full_index_sample(3, 4, rng), InvalidArgument);
    CHECK_THROWS_AS(full_index_sample(Index{1} << 32, 1, rng), CapacityError);
    CHECK_THROWS_AS(full_index_sample(1000, 1, rng, 999), CapacityError);
    CHECK(full_index_sample(1000, 1, rng, 1000).size() == 1);
}

TEST_CASE("property: index array stays a permutation, algorithms agree") {
    SeededSource meta(404);
    for (Index n = 0; n <= 12; ++n)
        for (Index k = 0; k <= n; ++k)
            for (int stream = 0; stream < 20; ++stream) {
                std::vector<Index> script;
                for (Index t = 0; t < k; ++t) script.push_back(meta.draw(0, n - 1 - t));
                ScriptedSource a(script), b(script), c(script);

                const auto r = full_index_sample_traced(n, k, a);
                std::vector<Index> sorted = r.index;
                std::sort(sorted.begin(), sorted.end());
                std::vector<Index> iota(n);
                std::iota(iota.begin(), iota.end(), Index{0});
                CHECK(sorted == iota);

                auto items = iota;
                CHECK(full_shuffle_sample(std::span<Index>(items), k, b) == r.slice);

                auto sparse = sample_indices(n, k, c);
                std::reverse(sparse.begin(), sparse.end());
                CHECK(sparse == r.slice);
            }
}

TEST_CASE("decision sequences are enumerated in mixed radix") {
    std::vector<std::vector<Index>> seen;
    for_each_decision_sequence(3, 2, [&](const std::vector<Index>& s) { seen.push_back(s); });
    CHECK(seen == std::vector<std::vector<Index>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}});

    int calls = 0;
    for_each_decision_sequence(4, 0, [&](const std::vector<Index>& s) {
        CHECK(s.empty());
        ++calls;
    });
    CHECK(calls == 1);

    CHECK(falling_factorial(5, 2) == 20);
    CHECK(falling_factorial(8, 8) == 40320);
    CHECK(falling_factorial(7, 0) == 1);
    CHECK(falling_factorial(~Index{0}, 3) == ~std::uint64_t{0});
    CHECK_THROWS_AS(for_each_decision_sequence(12, 12, [](const auto&) {}), CapacityError);
}

TEST_CASE("enumerate_all_outcomes") {
    SUBCASE("n=2 k=1") {
        const auto t = enumerate_all_outcomes(2, 1);
        CHECK(t.total_sequences == 2);
        CHECK(t.counts == std::map<std::vector<Index>, std::uint64_t>{{{0}, 1}, {{1}, 1}});
    }
    SUBCASE("n=5 k=2") {
        const auto t = enumerate_all_outcomes(5, 2);
        CHECK(t.total_sequences == 20);
        CHECK(t.counts.size() == 10);
        for (const auto& [subset, c] : t.counts) CHECK(c == 2);
        for (auto c : t.index_counts) CHECK(c == 8);
    }
    SUBCASE("n=3 k=3 ordered") {
        const auto t = enumerate_all_outcomes(3, 3, OutcomeKey::selection_order);
        CHECK(t.counts.size() == 6);
        for (const auto& [perm, c] : t.counts) CHECK(c == 1);
    }
    SUBCASE("tally agrees with a recount through the full index array") {
        for (Index n = 1; n <= 6; ++n)
            for (Index k = 0; k <= n; ++k) {
                std::map<std::vector<Index>, std::uint64_t> recount;
                for_each_decision_sequence(n, k, [&](const std::vector<Index>& s) {
                    ScriptedSource rng(s);
                    auto slice = full_index_sample(n, k, rng);
                    std::sort(slice.begin(), slice.end());
                    ++recount[slice];
                });
                const auto t = enumerate_all_outcomes(n, k);
                CHECK(t.counts == recount);
                CHECK(t.total_sequences == falling_factorial(n, k));
            }
    }
    CHECK_THROWS_AS(enumerate_all_outcomes(20, 10), CapacityError);
    CHECK_THROWS_AS(enumerate_all_outcomes(3, 4), InvalidArgument);
}

TEST_CASE("reservoir_sample") {
    SeededSource rng(9);
    const std::vector<int> exact{4, 8, 15};
    CHECK(reservoir_sample(exact, 3, rng) == exact);
    CHECK(reservoir_sample(std::vector<int>{}, 0, rng).empty());
    CHECK_THROWS_AS(reservoir_sample(exact, 4, rng), InvalidArgument);

    // n=5, k=2: each item kept with probability 0.4, within 6 sigma.
    constexpr int kTrials = 100'000;
    const std::vector<int> stream{0, 1, 2, 3, 4};
    std::vector<int> counts(5, 0);
    for (int t = 0; t < kTrials; ++t) {
        SeededSource trial(1000 + static_cast<std::uint64_t>(t));
        const auto res = reservoir_sample(stream, 2, trial);
        REQUIRE(res.size() == 2);
        CHECK(res[0] != res[1]);
        for (int v : res) ++counts[v];
    }
    const double sigma = std::sqrt(0.4 * 0.6 / kTrials);
    for (int c : counts) CHECK(std::abs(c / double(kTrials) - 0.4) <= 6 * sigma);
}
