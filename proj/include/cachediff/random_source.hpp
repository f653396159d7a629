#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cachediff {

/// Source of exactly-uniform bounded integers.
///
/// Implementations override next_word() (for generator-backed sources) or
/// draw() directly (for replayed scripts). draw(lo, hi) returns a value in
/// the inclusive range [lo, hi]; generator-backed sources reject over a
/// power-of-two envelope so there is no modulo bias.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    virtual std::uint64_t draw(std::uint64_t lo, std::uint64_t hi);

protected:
    /// Raw 64-bit word. The default draw() is built on top of this.
    virtual std::uint64_t next_word() = 0;
};

/// SplitMix64 recurrence: state += 0x9E3779B97F4A7C15 followed by two
/// xor-shift-multiply mixing rounds.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

private:
    std::uint64_t state_;
};

/// Deterministic source: identical seed, identical stream.
class SeededSource final : public RandomSource {
public:
    explicit SeededSource(std::uint64_t seed) noexcept : gen_(seed) {}

protected:
    std::uint64_t next_word() override { return gen_(); }

private:
    SplitMix64 gen_;
};

/// Replays a fixed sequence of draw results. Each draw(lo, hi) consumes one
/// value; running out, or a value outside [lo, hi], throws RngError.
class ScriptedSource final : public RandomSource {
public:
    explicit ScriptedSource(std::vector<std::uint64_t> script)
        : script_(std::move(script)) {}

    std::uint64_t draw(std::uint64_t lo, std::uint64_t hi) override;

    std::size_t consumed() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return script_.size() - pos_; }

protected:
    std::uint64_t next_word() override;

private:
    std::vector<std::uint64_t> script_;
    std::size_t pos_ = 0;
};

/// Unbiased value in [0, range] from a raw word generator. Exposed so the
/// rejection layer can be tested against arbitrary word streams.
template <typename WordFn>
std::uint64_t bounded_by_rejection(std::uint64_t range, WordFn&& next_word) {
    if (range == ~std::uint64_t{0}) return next_word();
    if (range == 0) return 0;
    // Smallest all-ones mask covering range.
    std::uint64_t mask = range;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t x = next_word() & mask;
        if (x <= range) return x;
    }
}

} // namespace cachediff
