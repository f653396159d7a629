#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cachediff/sampler.hpp"

namespace cachediff::extract {

/// Number of newline-delimited records; a final unterminated line counts.
/// Throws IoError if the file cannot be read.
Index count_lines(const std::filesystem::path& path);

/// Sorted, strictly increasing line positions chosen from a file.
struct LineSelection {
    std::filesystem::path path;
    Index total_lines = 0;
    std::vector<Index> chosen;
};

/// Picks k line positions uniformly (pass one counts the lines).
LineSelection select_lines(const std::filesystem::path& path, Index k, std::uint64_t seed,
                           SwapMode mode = SwapMode::pruned);

/// Streams the file once and returns the lines at `selection.chosen`, in file
/// order, without their terminating newline. Throws RaceError if the file's
/// line count no longer matches.
std::vector<std::string> extract_lines(const LineSelection& selection);

/// select_lines followed by extract_lines. Memory is O(k) beyond one line.
std::vector<std::string> sample_lines(const std::filesystem::path& path, Index k,
                                      std::uint64_t seed, SwapMode mode = SwapMode::pruned);

struct CodeBatch {
    Index space_size = 0;
    std::string alphabet;
    std::size_t width = 0;
    std::vector<std::string> codes;  // selection order
};

/// Validates an alphabet: at least two characters, no repeats.
void check_alphabet(std::string_view alphabet);

/// Big-endian positional encoding of v in base |alphabet|, zero-padded to
/// `width` digits. Throws InvalidArgument if v does not fit.
std::string encode_integer(std::uint64_t v, std::string_view alphabet, std::size_t width);

/// Inverse of encode_integer. Throws InvalidArgument on foreign characters or
/// overflow.
std::uint64_t decode_code(std::string_view code, std::string_view alphabet);

/// k distinct codes drawn from the integer space [0, n). Throws
/// CapacityError if |alphabet|^width < n, InvalidArgument if k > n.
CodeBatch generate_codes(Index n, Index k, std::uint64_t seed, std::string_view alphabet,
                         std::size_t width, SwapMode mode = SwapMode::pruned);

} // namespace cachediff::extract
