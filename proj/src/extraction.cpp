#include "cachediff/extraction.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <optional>

#include "cachediff/errors.hpp"

namespace cachediff::extract {

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

} // namespace

Index count_lines(const std::filesystem::path& path) {
    std::ifstream in = open_or_throw(path);
    std::array<char, 1 << 16> buf;
    Index newlines = 0;
    char last = '\n';
    while (in) {
        in.read(buf.data(), buf.size());
        const std::streamsize got = in.gcount();
        if (got <= 0) break;
        newlines += static_cast<Index>(std::count(buf.data(), buf.data() + got, '\n'));
        last = buf[static_cast<std::size_t>(got - 1)];
    }
    if (in.bad()) throw IoError("read error on " + path.string());
    return last == '\n' ? newlines : newlines + 1;
}

LineSelection select_lines(const std::filesystem::path& path, Index k, std::uint64_t seed,
                           SwapMode mode) {
    LineSelection sel;
    sel.path = path;
    sel.total_lines = count_lines(path);
    SeededSource rng(seed);
    sel.chosen = sample_indices(sel.total_lines, k, rng, mode);
    std::sort(sel.chosen.begin(), sel.chosen.end());
    return sel;
}

std::vector<std::string> extract_lines(const LineSelection& selection) {
    std::ifstream in = open_or_throw(selection.path);
    std::vector<std::string> out;
    out.reserve(selection.chosen.size());
    auto next = selection.chosen.begin();
    std::string line;
    Index pos = 0;
    while (std::getline(in, line)) {
        if (next != selection.chosen.end() && *next == pos) {
            out.push_back(line);
            ++next;
        }
        ++pos;
    }
    if (in.bad()) throw IoError("read error on " + selection.path.string());
    if (pos != selection.total_lines)
        throw RaceError(selection.path.string() + " changed between passes: counted " +
                        std::to_string(selection.total_lines) + " lines, then " +
                        std::to_string(pos));
    return out;
}

std::vector<std::string> sample_lines(const std::filesystem::path& path, Index k,
                                      std::uint64_t seed, SwapMode mode) {
    return extract_lines(select_lines(path, k, seed, mode));
}

void check_alphabet(std::string_view alphabet) {
    if (alphabet.size() < 2) throw InvalidArgument("alphabet needs at least two characters");
    std::array<bool, 256> seen{};
    for (unsigned char c : alphabet) {
        if (seen[c]) throw InvalidArgument(std::string("alphabet repeats character '") +
                                           static_cast<char>(c) + "'");
        seen[c] = true;
    }
}

namespace {

// |alphabet|^width, or nullopt if it exceeds 64 bits.
std::optional<std::uint64_t> code_space(std::size_t base, std::size_t width) {
    std::uint64_t space = 1;
    for (std::size_t d = 0; d < width; ++d) {
        if (space > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
        space *= base;
    }
    return space;
}

bool fits(std::uint64_t count, std::size_t base, std::size_t width) {
    const auto space = code_space(base, width);
    return !space || count <= *space;
}

} // namespace

std::string encode_integer(std::uint64_t v, std::string_view alphabet, std::size_t width) {
    check_alphabet(alphabet);
    const auto space = code_space(alphabet.size(), width);
    if (space && v >= *space)
        throw InvalidArgument("value " + std::to_string(v) + " does not fit in " +
                              std::to_string(width) + " digits of base " +
                              std::to_string(alphabet.size()));
    std::string out(width, alphabet[0]);
    const std::uint64_t base = alphabet.size();
    for (std::size_t d = width; d > 0 && v != 0; --d) {
        out[d - 1] = alphabet[static_cast<std::size_t>(v % base)];
        v /= base;
    }
    return out;
}

std::uint64_t decode_code(std::string_view code, std::string_view alphabet) {
    check_alphabet(alphabet);
    std::array<int, 256> digit;
    digit.fill(-1);
    for (std::size_t d = 0; d < alphabet.size(); ++d)
        digit[static_cast<unsigned char>(alphabet[d])] = static_cast<int>(d);

    const std::uint64_t base = alphabet.size();
    std::uint64_t v = 0;
    for (unsigned char c : code) {
        if (digit[c] < 0)
            throw InvalidArgument(std::string("character '") + static_cast<char>(c) +
                                  "' is not in the alphabet");
        if (v > (std::numeric_limits<std::uint64_t>::max() - digit[c]) / base)
            throw InvalidArgument("code " + std::string(code) + " overflows 64 bits");
        v = v * base + static_cast<std::uint64_t>(digit[c]);
    }
    return v;
}

CodeBatch generate_codes(Index n, Index k, std::uint64_t seed, std::string_view alphabet,
                         std::size_t width, SwapMode mode) {
    check_alphabet(alphabet);
    if (width == 0) throw InvalidArgument("code width must be positive");
    if (!fits(n, alphabet.size(), width))
        throw CapacityError(std::to_string(alphabet.size()) + "^" + std::to_string(width) +
                            " codes cannot cover a space of " + std::to_string(n));
    if (k > n)
        throw InvalidArgument("batch size k=" + std::to_string(k) +
                              " exceeds code space n=" + std::to_string(n));

    CodeBatch batch{n, std::string(alphabet), width, {}};
    SeededSource rng(seed);
    Sampler sampler(n, k, rng, mode);
    batch.codes.reserve(static_cast<std::size_t>(k));
    while (auto v = sampler.next()) batch.codes.push_back(encode_integer(*v, alphabet, width));
    return batch;
}

} // namespace cachediff::extract
