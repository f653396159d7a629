#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cachediff/sampler.hpp"

namespace cachediff::bench {

enum class Method { cachediff_faithful, cachediff_pruned, full_index, full_shuffle, reservoir };

std::string_view method_name(Method m);
/// Throws InvalidArgument for unknown names.
Method parse_method(std::string_view name);

struct BenchRecord {
    Method method = Method::cachediff_pruned;
    Index n = 0;
    Index k = 0;
    std::uint64_t repetitions = 0;
    std::chrono::nanoseconds median_elapsed{0};
    /// Map entries for the sparse sampler, array length for the full-array
    /// methods, reservoir size for the streaming baseline.
    std::uint64_t peak_entries = 0;
    /// Set when the cell was not run (k > n, cap exceeded, ...).
    std::optional<std::string> skipped;
};

struct BenchLimits {
    /// Full-array methods refuse larger n.
    Index materialization_cap = Index{1} << 31;
    /// The reservoir baseline walks all n items; refuse larger n.
    Index stream_cap = Index{1} << 31;
};

/// Runs `method` `repetitions` times (repetition r seeded with seed + r) and
/// records the median wall-clock time. Throws InvalidArgument/CapacityError.
BenchRecord time_method(Method method, Index n, Index k, std::uint64_t repetitions,
                        std::uint64_t seed, const BenchLimits& limits = {});

/// Cartesian product of methods x n_values x k_values, in that nesting order.
/// Infeasible cells come back with `skipped` set instead of throwing.
std::vector<BenchRecord> sweep(std::span<const Method> methods, std::span<const Index> n_values,
                               std::span<const Index> k_values, std::uint64_t repetitions,
                               std::uint64_t seed, const BenchLimits& limits = {});

enum class ReportFormat { csv, human };

/// CSV: header `method,n,k,repetitions,median_elapsed_ns,peak_entries`, then
/// one row per record; skipped rows carry `skip` in the elapsed column.
std::string emit_report(std::span<const BenchRecord> records, ReportFormat format);

} // namespace cachediff::bench
