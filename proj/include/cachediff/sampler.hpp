#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cachediff/random_source.hpp"

namespace cachediff {

using Index = std::uint64_t;

/// Which map writes a swap step performs.
///
/// faithful: stores both exchanged entries (key i and key j).
/// pruned:   stores only key j. Key i is never read again because the loop
///           variable descends, so outputs are identical and the map holds
///           at most one entry per draw instead of two.
enum class SwapMode { faithful, pruned };

/// Sparse view of a virtual permutation array of length n. Only entries whose
/// value may differ from their position are stored; an absent key i reads as i.
class SparseIndexMap {
public:
    SparseIndexMap() = default;
    explicit SparseIndexMap(std::size_t expected_entries) {
        entries_.reserve(expected_entries);
    }

    Index resolve(Index i) const {
        auto it = entries_.find(i);
        return it == entries_.end() ? i : it->second;
    }

    void set(Index key, Index value) { entries_[key] = value; }

    bool contains(Index key) const { return entries_.count(key) != 0; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    const std::unordered_map<Index, Index>& entries() const noexcept {
        return entries_;
    }

private:
    std::unordered_map<Index, Index> entries_;
};

/// Value of the virtual array at position i.
inline Index resolve(const SparseIndexMap& map, Index i) { return map.resolve(i); }

/// Exchanges virtual positions i and j (j <= i) and returns the value now
/// at the selected slot, i.e. the value that was at position j.
Index swap_step(SparseIndexMap& map, Index i, Index j, SwapMode mode);

/// Incremental sampler: each next() performs one descending Fisher–Yates step
/// over the virtual index array [0, n) and emits one index. Not thread-safe;
/// may be moved between threads between calls.
class Sampler {
public:
    /// Throws InvalidArgument if k > n. The random source must outlive the
    /// sampler.
    Sampler(Index n, Index k, RandomSource& rng, SwapMode mode = SwapMode::faithful);

    /// Next selected index, or nullopt once k indices have been emitted.
    std::optional<Index> next();

    Index population() const noexcept { return n_; }
    Index sample_size() const noexcept { return k_; }
    Index emitted() const noexcept { return emitted_; }
    SwapMode mode() const noexcept { return mode_; }
    const SparseIndexMap& map() const noexcept { return map_; }

private:
    Index n_;
    Index k_;
    Index emitted_ = 0;
    RandomSource* rng_;
    SwapMode mode_;
    SparseIndexMap map_;
};

/// Result of a one-shot run; `selected` is in selection order (loop variable
/// i = n-1 first), which is the reverse of the tail slice a full-array
/// Fisher–Yates would return.
struct SampleRun {
    std::vector<Index> selected;
    std::size_t map_entries = 0;
};

/// Selects k distinct indices uniformly from [0, n) in O(k) expected time
/// and space. Throws InvalidArgument if k > n; rng errors propagate.
std::vector<Index> sample_indices(Index n, Index k, RandomSource& rng,
                                  SwapMode mode = SwapMode::faithful);

/// Same as sample_indices but also reports the final map size.
SampleRun sample_indices_traced(Index n, Index k, RandomSource& rng,
                                SwapMode mode = SwapMode::faithful);

} // namespace cachediff
