#pragma once

#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cachediff/errors.hpp"
#include "cachediff/random_source.hpp"
#include "cachediff/sampler.hpp"

// Reference samplers that materialize the whole population, plus exhaustive
// enumeration of every random decision sequence for tiny (n, k).
namespace cachediff::oracle {

/// Largest n full_index_sample will allocate by default.
inline constexpr Index kDefaultMaterializationCap = Index{1} << 31;

/// Largest number of decision sequences the enumerator will walk.
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

/// Partial Fisher–Yates over the caller's array: k descending swaps, then the
/// tail slice items[n-k .. n-1] in ascending position order. Mutates `items`.
template <typename T>
std::vector<T> full_shuffle_sample(std::span<T> items, std::uint64_t k, RandomSource& rng) {
    const std::uint64_t n = items.size();
    if (k > n)
        throw InvalidArgument("full_shuffle_sample: k=" + std::to_string(k) +
                              " exceeds n=" + std::to_string(n));
    for (std::uint64_t step = 0; step < k; ++step) {
        const std::uint64_t i = n - 1 - step;
        const std::uint64_t j = rng.draw(0, i);
        using std::swap;
        swap(items[i], items[j]);
    }
    return std::vector<T>(items.begin() + static_cast<std::ptrdiff_t>(n - k), items.end());
}

struct IndexSampleResult {
    std::vector<Index> slice;  // index[n-k .. n-1], ascending position
    std::vector<Index> index;  // full array after the swaps
};

/// Same procedure over an explicit index array 0..n-1. Throws CapacityError
/// when n exceeds `cap`.
IndexSampleResult full_index_sample_traced(Index n, Index k, RandomSource& rng,
                                           Index cap = kDefaultMaterializationCap);

std::vector<Index> full_index_sample(Index n, Index k, RandomSource& rng,
                                     Index cap = kDefaultMaterializationCap);

/// n * (n-1) * ... * (n-k+1), saturating at UINT64_MAX.
std::uint64_t falling_factorial(Index n, Index k);

/// Calls `visit` with every decision sequence (j_1 in [0, n-1], j_2 in
/// [0, n-2], ...) of length k, in lexicographic order. Throws CapacityError
/// when the count exceeds `guard`.
void for_each_decision_sequence(Index n, Index k,
                                const std::function<void(const std::vector<Index>&)>& visit,
                                std::uint64_t guard = kEnumerationGuard);

/// How a sample is keyed in an OutcomeTally.
enum class OutcomeKey {
    sorted,          // unordered k-subset
    selection_order  // sample exactly as emitted
};

struct OutcomeTally {
    Index n = 0;
    Index k = 0;
    std::uint64_t total_sequences = 0;
    std::map<std::vector<Index>, std::uint64_t> counts;
    /// Number of sequences whose sample contains index i.
    std::vector<std::uint64_t> index_counts;
};

/// Runs sample_indices once per decision sequence and tallies the outcomes.
/// Exact, not sampled.
OutcomeTally enumerate_all_outcomes(Index n, Index k,
                                    OutcomeKey key = OutcomeKey::sorted,
                                    std::uint64_t guard = kEnumerationGuard);

/// Algorithm R. Fills the reservoir with the first k items, then item t
/// (1-based, t > k) replaces a uniform slot with probability k/t. Throws
/// InvalidArgument if the range holds fewer than k items.
template <typename InputIt, typename Sentinel>
auto reservoir_sample(InputIt first, Sentinel last, std::uint64_t k, RandomSource& rng)
    -> std::vector<typename std::iterator_traits<InputIt>::value_type> {
    std::vector<typename std::iterator_traits<InputIt>::value_type> reservoir;
    reservoir.reserve(static_cast<std::size_t>(k));
    std::uint64_t seen = 0;
    for (; first != last; ++first) {
        ++seen;
        if (seen <= k) {
            reservoir.push_back(*first);
            continue;
        }
        const std::uint64_t slot = rng.draw(0, seen - 1);
        if (slot < k) reservoir[static_cast<std::size_t>(slot)] = *first;
    }
    if (seen < k)
        throw InvalidArgument("reservoir_sample: stream ended after " +
                              std::to_string(seen) + " items, need " + std::to_string(k));
    return reservoir;
}

template <typename Range>
auto reservoir_sample(Range&& stream, std::uint64_t k, RandomSource& rng) {
    return reservoir_sample(std::begin(stream), std::end(stream), k, rng);
}

} // namespace cachediff::oracle
