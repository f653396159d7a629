#include <doctest.h>

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "cachediff/bench.hpp"
#include "cachediff/errors.hpp"

using namespace cachediff;
using namespace cachediff::bench;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("method names round-trip") {
    for (Method m : {Method::cachediff_faithful, Method::cachediff_pruned, Method::full_index,
                     Method::full_shuffle, Method::reservoir})
        CHECK(parse_method(method_name(m)) == m);
    CHECK_THROWS_AS(parse_method("vitter_d"), InvalidArgument);
}

TEST_CASE("time_method peak storage") {
    const auto sparse = time_method(Method::cachediff_pruned, Index{1} << 40, 10'000, 3, 1);
    CHECK(sparse.peak_entries <= 10'000);
    CHECK(sparse.repetitions == 3);
    CHECK_FALSE(sparse.skipped);

    const auto faithful = time_method(Method::cachediff_faithful, Index{1} << 40, 10'000, 3, 1);
    CHECK(faithful.peak_entries <= 20'000);
    CHECK(faithful.peak_entries > 10'000);

    CHECK(time_method(Method::full_index, 1'000'000, 10, 1, 1).peak_entries == 1'000'000);
    CHECK(time_method(Method::full_shuffle, 1000, 10, 1, 1).peak_entries == 1000);
    CHECK(time_method(Method::reservoir, 1000, 10, 1, 1).peak_entries == 10);

    CHECK_THROWS_AS(time_method(Method::full_index, 100, 101, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(time_method(Method::full_index, Index{1} << 40, 1, 1, 1), CapacityError);
    CHECK_THROWS_AS(time_method(Method::reservoir, Index{1} << 40, 1, 1, 1), CapacityError);
    CHECK_THROWS_AS(time_method(Method::cachediff_pruned, 10, 1, 0, 1), InvalidArgument);
}

TEST_CASE("sweep") {
    const std::array<Method, 1> one{Method::cachediff_pruned};
    const std::array<Index, 1> n{1000};
    const std::array<Index, 1> k{10};
    const auto cell = sweep(one, n, k, 3, 5);
    REQUIRE(cell.size() == 1);
    const auto direct = time_method(Method::cachediff_pruned, 1000, 10, 3, 5);
    CHECK(cell[0].method == direct.method);
    CHECK(cell[0].n == direct.n);
    CHECK(cell[0].k == direct.k);
    CHECK(cell[0].peak_entries == direct.peak_entries);

    const std::array<Method, 2> two{Method::cachediff_faithful, Method::full_index};
    const std::array<Index, 2> ns{50, Index{1} << 40};
    const std::array<Index, 2> ks{10, 100};
    const auto grid = sweep(two, ns, ks, 1, 5);
    REQUIRE(grid.size() == 8);
    // order: method, then n, then k
    CHECK_FALSE(grid[0].skipped);             // faithful 50 10
    CHECK(grid[1].skipped);                   // faithful 50 100: k > n
    CHECK_FALSE(grid[2].skipped);             // faithful 2^40 10
    CHECK_FALSE(grid[3].skipped);
    CHECK_FALSE(grid[4].skipped);             // full_index 50 10
    CHECK(grid[5].skipped);                   // k > n
    CHECK(grid[6].skipped);                   // over the materialization cap
    CHECK(grid[7].skipped);
}

TEST_CASE("emit_report") {
    BenchRecord r{Method::cachediff_pruned, 1000, 10, 7, std::chrono::nanoseconds(1234), 10, {}};
    const std::vector<BenchRecord> one{r};
    CHECK(emit_report(one, ReportFormat::csv) ==
          "method,n,k,repetitions,median_elapsed_ns,peak_entries\n"
          "cachediff_pruned,1000,10,7,1234,10\n");

    BenchRecord skipped{Method::full_index, 5, 6, 7, {}, 0, std::string("k exceeds n")};
    const std::vector<BenchRecord> mixed{r, skipped};
    const auto csv = split_lines(emit_report(mixed, ReportFormat::csv));
    REQUIRE(csv.size() == 3);
    CHECK(csv[2] == "full_index,5,6,7,skip,skip");

    const auto human = split_lines(emit_report(mixed, ReportFormat::human));
    REQUIRE(human.size() == 3);
    CHECK(human[0].size() == human[1].size());
    CHECK(human[1].rfind("cachediff_pruned", 0) == 0);

    CHECK_THROWS_AS(emit_report(std::vector<BenchRecord>{}, ReportFormat::csv), InvalidArgument);
}

TEST_CASE("time grows at most linearly in k") {
    const std::array<Method, 1> m{Method::cachediff_pruned};
    const std::array<Index, 1> n{Index{1} << 50};
    const std::array<Index, 3> ks{10, 100, 1000};
    const auto cells = sweep(m, n, ks, 15, 42);
    for (std::size_t c = 1; c < cells.size(); ++c) {
        const double ratio = static_cast<double>(cells[c].median_elapsed.count()) /
                             static_cast<double>(cells[c - 1].median_elapsed.count());
        MESSAGE("k=" << cells[c].k << " ratio " << ratio);
        CHECK(ratio <= 20.0);
    }
}

TEST_CASE("full-array baseline grows with n") {
    const auto small = time_method(Method::full_index, 1'000'000, 10, 7, 1);
    const auto large = time_method(Method::full_index, 10'000'000, 10, 7, 1);
    const double ratio = static_cast<double>(large.median_elapsed.count()) /
                         static_cast<double>(small.median_elapsed.count());
    MESSAGE("full_index 10x n ratio " << ratio);
    CHECK(ratio >= 5.0);
}
