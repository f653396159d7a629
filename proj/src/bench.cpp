#include "cachediff/bench.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <numeric>
#include <ranges>
#include <sstream>

#include "cachediff/errors.hpp"
#include "cachediff/oracle.hpp"

namespace cachediff::bench {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodNames{{
    {Method::cachediff_faithful, "cachediff_faithful"},
    {Method::cachediff_pruned, "cachediff_pruned"},
    {Method::full_index, "full_index"},
    {Method::full_shuffle, "full_shuffle"},
    {Method::reservoir, "reservoir"},
}};

// Keeps results observable so the optimizer cannot drop a timed run.
volatile std::uint64_t g_sink = 0;

std::uint64_t run_once(Method method, Index n, Index k, std::uint64_t seed) {
    SeededSource rng(seed);
    switch (method) {
    case Method::cachediff_faithful:
    case Method::cachediff_pruned: {
        const auto mode =
            method == Method::cachediff_faithful ? SwapMode::faithful : SwapMode::pruned;
        const SampleRun run = sample_indices_traced(n, k, rng, mode);
        g_sink = g_sink + (run.selected.empty() ? 0 : run.selected.front());
        return run.map_entries;
    }
    case Method::full_index: {
        const auto slice = oracle::full_index_sample(n, k, rng, ~Index{0});
        g_sink = g_sink + (slice.empty() ? 0 : slice.front());
        return n;
    }
    case Method::full_shuffle: {
        std::vector<Index> items(static_cast<std::size_t>(n));
        std::iota(items.begin(), items.end(), Index{0});
        const auto slice = oracle::full_shuffle_sample(std::span<Index>(items), k, rng);
        g_sink = g_sink + (slice.empty() ? 0 : slice.front());
        return n;
    }
    case Method::reservoir: {
        const auto stream = std::views::iota(Index{0}, n);
        const auto res = oracle::reservoir_sample(stream.begin(), stream.end(), k, rng);
        g_sink = g_sink + (res.empty() ? 0 : res.front());
        return k;
    }
    }
    return 0;
}

void check_feasible(Method method, Index n, Index k, const BenchLimits& limits) {
    if (k > n)
        throw InvalidArgument("k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    const bool materializes = method == Method::full_index || method == Method::full_shuffle;
    if (materializes && n > limits.materialization_cap)
        throw CapacityError("n=" + std::to_string(n) + " exceeds materialization cap " +
                            std::to_string(limits.materialization_cap));
    if (method == Method::reservoir && n > limits.stream_cap)
        throw CapacityError("n=" + std::to_string(n) + " exceeds stream cap " +
                            std::to_string(limits.stream_cap));
}

} // namespace

std::string_view method_name(Method m) {
    for (const auto& [method, name] : kMethodNames)
        if (method == m) return name;
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (const auto& [method, text] : kMethodNames)
        if (text == name) return method;
    throw InvalidArgument("unknown bench method '" + std::string(name) + "'");
}

BenchRecord time_method(Method method, Index n, Index k, std::uint64_t repetitions,
                        std::uint64_t seed, const BenchLimits& limits) {
    if (repetitions == 0) throw InvalidArgument("repetitions must be at least 1");
    check_feasible(method, n, k, limits);

    BenchRecord rec{method, n, k, repetitions, {}, 0, std::nullopt};
    std::vector<std::chrono::nanoseconds> times;
    times.reserve(static_cast<std::size_t>(repetitions));
    for (std::uint64_t r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t peak = run_once(method, n, k, seed + r);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start));
        rec.peak_entries = std::max(rec.peak_entries, peak);
    }
    const auto mid = times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2);
    std::nth_element(times.begin(), mid, times.end());
    rec.median_elapsed = *mid;
    return rec;
}

std::vector<BenchRecord> sweep(std::span<const Method> methods, std::span<const Index> n_values,
                               std::span<const Index> k_values, std::uint64_t repetitions,
                               std::uint64_t seed, const BenchLimits& limits) {
    std::vector<BenchRecord> out;
    out.reserve(methods.size() * n_values.size() * k_values.size());
    for (Method m : methods)
        for (Index n : n_values)
            for (Index k : k_values) {
                try {
                    out.push_back(time_method(m, n, k, repetitions, seed, limits));
                } catch (const Error& e) {
                    out.push_back(BenchRecord{m, n, k, repetitions, {}, 0, e.what()});
                }
            }
    return out;
}

std::string emit_report(std::span<const BenchRecord> records, ReportFormat format) {
    if (records.empty()) throw InvalidArgument("emit_report: no records");

    std::vector<std::array<std::string, 6>> rows;
    rows.push_back({"method", "n", "k", "repetitions", "median_elapsed_ns", "peak_entries"});
    for (const auto& r : records) {
        rows.push_back({std::string(method_name(r.method)), std::to_string(r.n),
                        std::to_string(r.k), std::to_string(r.repetitions),
                        r.skipped ? "skip" : std::to_string(r.median_elapsed.count()),
                        r.skipped ? "skip" : std::to_string(r.peak_entries)});
    }

    std::ostringstream os;
    if (format == ReportFormat::csv) {
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
            os << '\n';
        }
        return os.str();
    }

    std::array<std::size_t, 6> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << "  ";
            // Method name left-aligned, numbers right-aligned.
            os << (c == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[c]))
               << row[c];
        }
        os << '\n';
    }
    return os.str();
}

} // namespace cachediff::bench
