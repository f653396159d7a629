#include "cachediff/random_source.hpp"

#include <string>

#include "cachediff/errors.hpp"

namespace cachediff {

std::uint64_t RandomSource::draw(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw InvalidArgument("draw: lo > hi");
    return lo + bounded_by_rejection(hi - lo, [this] { return next_word(); });
}

std::uint64_t ScriptedSource::draw(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw InvalidArgument("draw: lo > hi");
    if (pos_ >= script_.size())
        throw RngError("scripted random source exhausted after " +
                       std::to_string(script_.size()) + " draws");
    const std::uint64_t v = script_[pos_];
    if (v < lo || v > hi)
        throw RngError("scripted value " + std::to_string(v) + " at position " +
                       std::to_string(pos_) + " outside [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
    ++pos_;
    return v;
}

std::uint64_t ScriptedSource::next_word() {
    throw RngError("scripted random source has no raw word stream");
}

} // namespace cachediff
