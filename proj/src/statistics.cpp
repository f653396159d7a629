#include "cachediff/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "cachediff/errors.hpp"
#include "cachediff/oracle.hpp"

namespace cachediff::stats {

std::uint64_t TrialTally::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

void run_range(Index n, Index k, std::uint64_t first, std::uint64_t last,
               std::uint64_t base_seed, SwapMode mode, std::vector<std::uint64_t>& counts) {
    for (std::uint64_t t = first; t < last; ++t) {
        SeededSource rng(base_seed + t);
        Sampler sampler(n, k, rng, mode);
        while (auto v = sampler.next()) ++counts[*v];
    }
}

} // namespace

TrialTally run_trials(Index n, Index k, std::uint64_t trials, std::uint64_t base_seed,
                      SwapMode mode, unsigned workers) {
    if (k > n)
        throw InvalidArgument("run_trials: k=" + std::to_string(k) +
                              " exceeds n=" + std::to_string(n));
    if (trials == 0) throw InvalidArgument("run_trials: trial count must be positive");
    if (n > kMaxTallyPopulation)
        throw CapacityError("run_trials: n=" + std::to_string(n) +
                            " too large for a per-index tally");

    TrialTally tally{n, k, trials, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0)};
    workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, trials)));
    if (workers == 1) {
        run_range(n, k, 0, trials, base_seed, mode, tally.counts);
        return tally;
    }

    std::vector<std::vector<std::uint64_t>> partial(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t first = std::min(trials, chunk * w);
        const std::uint64_t last = std::min(trials, first + chunk);
        partial[w].assign(static_cast<std::size_t>(n), 0);
        threads.emplace_back(run_range, n, k, first, last, base_seed, mode,
                             std::ref(partial[w]));
    }
    for (auto& t : threads) t.join();
    for (const auto& p : partial)
        for (std::size_t i = 0; i < p.size(); ++i) tally.counts[i] += p[i];
    return tally;
}

UniformityVerdict uniformity_check(const TrialTally& tally, double sigma_bound) {
    if (tally.trials == 0) throw InvalidArgument("uniformity_check: tally has zero trials");
    if (!(sigma_bound > 0.0)) throw InvalidArgument("uniformity_check: sigma bound must be positive");
    if (tally.n == 0 || tally.counts.size() != tally.n)
        throw InvalidArgument("uniformity_check: tally has no indices");

    const double T = static_cast<double>(tally.trials);
    const double p = static_cast<double>(tally.k) / static_cast<double>(tally.n);
    const double var = p * (1.0 - p);
    const double sigma = std::sqrt(var / T);

    UniformityVerdict v;
    v.expected_probability = p;
    v.degrees_of_freedom = tally.n - 1;
    v.min_frequency = 1.0;
    v.max_frequency = 0.0;
    double worst_abs = -1.0;
    for (std::size_t i = 0; i < tally.counts.size(); ++i) {
        const double c = static_cast<double>(tally.counts[i]);
        const double freq = c / T;
        v.frequencies.push_back(freq);
        v.min_frequency = std::min(v.min_frequency, freq);
        v.max_frequency = std::max(v.max_frequency, freq);
        const double dev = std::abs(freq - p);
        if (dev > worst_abs) {
            worst_abs = dev;
            v.worst_index = i;
        }
        if (var > 0.0) v.chi_square += (c - T * p) * (c - T * p) / (T * var);
    }
    // p = 0 or 1 leaves no randomness: any deviation at all is infinitely many sigmas.
    if (sigma > 0.0)
        v.worst_deviation_sigmas = worst_abs / sigma;
    else
        v.worst_deviation_sigmas = worst_abs == 0.0 ? 0.0 : INFINITY;
    v.pass = v.worst_deviation_sigmas <= sigma_bound;
    return v;
}

UniformityVerdict exact_check(Index n, Index k) {
    const oracle::OutcomeTally tally = oracle::enumerate_all_outcomes(n, k);

    UniformityVerdict v;
    v.degrees_of_freedom = n == 0 ? 0 : n - 1;
    v.expected_probability = n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);

    // Index i is in exactly k/n of all sequences  <=>  n * count_i == k * total.
    bool marginal_exact = true;
    v.min_frequency = n == 0 ? 0.0 : 1.0;
    for (Index i = 0; i < n; ++i) {
        const std::uint64_t c = tally.index_counts[i];
        const double freq = static_cast<double>(c) / static_cast<double>(tally.total_sequences);
        v.frequencies.push_back(freq);
        v.min_frequency = std::min(v.min_frequency, freq);
        v.max_frequency = std::max(v.max_frequency, freq);
        // total_sequences is bounded by the enumeration guard, so no overflow.
        if (c * n != k * tally.total_sequences) {
            marginal_exact = false;
            v.worst_index = i;
        }
    }

    // Every one of the C(n, k) subsets must appear, each with the same count.
    std::uint64_t expected_subsets = 1;
    for (Index t = 0; t < k; ++t) expected_subsets = expected_subsets * (n - t) / (t + 1);
    bool subsets_equal = tally.counts.size() == expected_subsets;
    if (subsets_equal && !tally.counts.empty()) {
        const std::uint64_t first = tally.counts.begin()->second;
        subsets_equal = std::all_of(tally.counts.begin(), tally.counts.end(),
                                    [first](const auto& kv) { return kv.second == first; });
    }

    v.subsets_uniform = subsets_equal;
    v.worst_deviation_sigmas = marginal_exact ? 0.0 : INFINITY;
    v.pass = marginal_exact && subsets_equal;
    return v;
}

} // namespace cachediff::stats
