#include "cachediff/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cachediff::oracle {

IndexSampleResult full_index_sample_traced(Index n, Index k, RandomSource& rng, Index cap) {
    if (k > n)
        throw InvalidArgument("full_index_sample: k=" + std::to_string(k) +
                              " exceeds n=" + std::to_string(n));
    if (n > cap)
        throw CapacityError("full_index_sample: n=" + std::to_string(n) +
                            " exceeds materialization cap " + std::to_string(cap));
    IndexSampleResult r;
    r.index.resize(static_cast<std::size_t>(n));
    std::iota(r.index.begin(), r.index.end(), Index{0});
    for (Index step = 0; step < k; ++step) {
        const Index i = n - 1 - step;
        const Index j = rng.draw(0, i);
        std::swap(r.index[i], r.index[j]);
    }
    r.slice.assign(r.index.end() - static_cast<std::ptrdiff_t>(k), r.index.end());
    return r;
}

std::vector<Index> full_index_sample(Index n, Index k, RandomSource& rng, Index cap) {
    return full_index_sample_traced(n, k, rng, cap).slice;
}

std::uint64_t falling_factorial(Index n, Index k) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t product = 1;
    for (Index t = 0; t < k; ++t) {
        const std::uint64_t factor = n - t;
        if (factor != 0 && product > kMax / factor) return kMax;
        product *= factor;
    }
    return product;
}

void for_each_decision_sequence(Index n, Index k,
                                const std::function<void(const std::vector<Index>&)>& visit,
                                std::uint64_t guard) {
    if (k > n)
        throw InvalidArgument("enumeration: k=" + std::to_string(k) +
                              " exceeds n=" + std::to_string(n));
    const std::uint64_t total = falling_factorial(n, k);
    if (total > guard)
        throw CapacityError("enumeration: " + std::to_string(total) +
                            " decision sequences exceed guard " + std::to_string(guard));

    // Mixed-radix counter; digit t ranges over [0, n-1-t].
    std::vector<Index> seq(static_cast<std::size_t>(k), 0);
    for (;;) {
        visit(seq);
        std::size_t pos = seq.size();
        while (pos > 0) {
            --pos;
            if (seq[pos] < n - 1 - pos) {
                ++seq[pos];
                break;
            }
            seq[pos] = 0;
            if (pos == 0) return;
        }
        if (seq.empty()) return;
    }
}

OutcomeTally enumerate_all_outcomes(Index n, Index k, OutcomeKey key, std::uint64_t guard) {
    OutcomeTally tally;
    tally.n = n;
    tally.k = k;
    tally.index_counts.assign(static_cast<std::size_t>(n), 0);
    for_each_decision_sequence(
        n, k,
        [&](const std::vector<Index>& seq) {
            ScriptedSource rng(seq);
            std::vector<Index> sample = sample_indices(n, k, rng);
            for (Index v : sample) ++tally.index_counts[v];
            if (key == OutcomeKey::sorted) std::sort(sample.begin(), sample.end());
            ++tally.counts[std::move(sample)];
            ++tally.total_sequences;
        },
        guard);
    return tally;
}

} // namespace cachediff::oracle
