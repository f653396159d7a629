#pragma once

#include <cstdint>
#include <vector>

#include "cachediff/sampler.hpp"

namespace cachediff::stats {

/// Per-index selection counts over repeated independent trials.
struct TrialTally {
    Index n = 0;
    Index k = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const;
};

struct UniformityVerdict {
    bool pass = false;
    Index worst_index = 0;
    double worst_deviation_sigmas = 0.0;
    double chi_square = 0.0;
    std::uint64_t degrees_of_freedom = 0;
    double expected_probability = 0.0;
    double min_frequency = 0.0;
    double max_frequency = 0.0;
    /// Observed selection frequency of every index.
    std::vector<double> frequencies;
    /// Exact checks only: every k-subset occurred equally often.
    bool subsets_uniform = true;
};

/// Largest n run_trials will allocate a count array for.
inline constexpr Index kMaxTallyPopulation = Index{1} << 28;

/// Runs `trials` sample_indices calls, trial t seeded with base_seed + t.
/// Trials are split across `workers` threads; the tally is identical for any
/// worker count.
TrialTally run_trials(Index n, Index k, std::uint64_t trials, std::uint64_t base_seed,
                      SwapMode mode = SwapMode::faithful, unsigned workers = 1);

/// Marginal frequency gate: passes iff every |counts[i]/T - k/n| is within
/// sigma_bound binomial standard deviations. Chi-square is diagnostic only.
UniformityVerdict uniformity_check(const TrialTally& tally, double sigma_bound);

/// Exhaustive verdict from the decision-sequence enumerator: passes iff every
/// index occurs in exactly k/n of all sequences and every k-subset has the
/// same count.
UniformityVerdict exact_check(Index n, Index k);

} // namespace cachediff::stats
