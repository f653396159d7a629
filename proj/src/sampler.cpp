#include "cachediff/sampler.hpp"

#include <algorithm>
#include <string>

#include "cachediff/errors.hpp"

namespace cachediff {

namespace {

void check_sizes(Index n, Index k) {
    if (k > n)
        throw InvalidArgument("sample size k=" + std::to_string(k) +
                              " exceeds population n=" + std::to_string(n));
}

// Cap the up-front reservation; k is trusted only up to what fits comfortably.
std::size_t reservation(Index k, SwapMode mode) {
    constexpr Index kMaxReserve = Index{1} << 24;
    const Index per_draw = mode == SwapMode::faithful ? 2 : 1;
    return static_cast<std::size_t>(std::min(k, kMaxReserve) * per_draw);
}

} // namespace

Index swap_step(SparseIndexMap& map, Index i, Index j, SwapMode mode) {
    const Index index_j = map.resolve(j);
    const Index index_i = map.resolve(i);
    if (mode == SwapMode::faithful) map.set(i, index_j);
    map.set(j, index_i);
    return index_j;
}

Sampler::Sampler(Index n, Index k, RandomSource& rng, SwapMode mode)
    : n_(n), k_(k), rng_(&rng), mode_(mode) {
    check_sizes(n, k);
}

std::optional<Index> Sampler::next() {
    if (emitted_ == k_) return std::nullopt;
    if (emitted_ == 0) map_ = SparseIndexMap(reservation(k_, mode_));
    const Index i = n_ - 1 - emitted_;
    const Index j = rng_->draw(0, i);
    const Index out = swap_step(map_, i, j, mode_);
    ++emitted_;
    return out;
}

SampleRun sample_indices_traced(Index n, Index k, RandomSource& rng, SwapMode mode) {
    Sampler sampler(n, k, rng, mode);
    SampleRun run;
    run.selected.reserve(static_cast<std::size_t>(k));
    while (auto v = sampler.next()) run.selected.push_back(*v);
    run.map_entries = sampler.map().size();
    return run;
}

std::vector<Index> sample_indices(Index n, Index k, RandomSource& rng, SwapMode mode) {
    return sample_indices_traced(n, k, rng, mode).selected;
}

} // namespace cachediff
