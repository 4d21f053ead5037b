#pragma once

#include <cstdint>
#include <vector>

#include "sfo/graph.hpp"

namespace sfo {

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Counter-mode PRF word keyed by (seed, a, b). Every random bit in this
// repository comes from here, so runs replay bit-identically across
// platforms.
constexpr std::uint64_t prf_word(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL);
    h = mix64(h ^ ((a + 1) * 0xA24BAED4963EE407ULL));
    h = mix64(h ^ ((b + 1) * 0x9552FBE4F2D1F041ULL));
    return h;
}

// Sub-seed for an independent randomness consumer.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t counter) {
    return prf_word(seed, tag, counter);
}

namespace seed_tag {
inline constexpr std::uint64_t kPopProfile = 0x706f702d70726f66ULL;
inline constexpr std::uint64_t kFprasTrial = 0x66707261732d7472ULL;
inline constexpr std::uint64_t kFprasRun = 0x66707261732d736dULL;
inline constexpr std::uint64_t kFastEdge = 0x666173742d656467ULL;
inline constexpr std::uint64_t kFastFill = 0x666173742d66696cULL;
inline constexpr std::uint64_t kSuite = 0x73756974652d2d2dULL;
inline constexpr std::uint64_t kGenerator = 0x67656e2d67726170ULL;
}  // namespace seed_tag

// Lazy infinite stream of fair orientation bits per edge, keyed by
// (seed, edge, index). Counters only advance; reset() is O(1) via epoch
// stamping so a table object can be reused across many runs.
class ResamplingTable {
public:
    ResamplingTable(std::uint64_t seed, int edge_count)
        : seed_(seed), word_(static_cast<std::size_t>(edge_count), 0) {}

    void reset(std::uint64_t seed) {
        seed_ = seed;
        consumed_ = 0;
        ++epoch_;
        if (epoch_ >= (std::uint64_t{1} << 32)) {  // stamp space exhausted; hard reset
            std::fill(word_.begin(), word_.end(), 0);
            epoch_ = 1;
        }
    }

    std::uint64_t seed() const { return seed_; }
    int edge_count() const { return static_cast<int>(word_.size()); }
    std::uint64_t bits_consumed() const { return consumed_; }

    std::uint32_t next_index(EdgeId e) const {
        std::uint64_t w = word_[static_cast<std::size_t>(e)];
        return (w >> 32) == epoch_ ? static_cast<std::uint32_t>(w) : 0;
    }

    // Fair bit; 1 means "head = endpoint b" of the edge.
    int draw(EdgeId e) {
        std::uint64_t w = word_[static_cast<std::size_t>(e)];
        std::uint32_t next = (w >> 32) == epoch_ ? static_cast<std::uint32_t>(w) : 0;
        word_[static_cast<std::size_t>(e)] = (epoch_ << 32) | (next + 1);
        ++consumed_;
        return bit_at(seed_, e, next);
    }

    static int bit_at(std::uint64_t seed, EdgeId e, std::uint32_t index) {
        return static_cast<int>(prf_word(seed, static_cast<std::uint64_t>(e), index) >> 63);
    }

private:
    std::uint64_t seed_;
    std::uint64_t epoch_ = 1;
    std::uint64_t consumed_ = 0;
    // Per edge: (epoch stamp << 32) | next index.
    std::vector<std::uint64_t> word_;
};

// Counter-based uniform stream for non-table randomness (graph generation,
// random test instances). Same PRF, distinct purpose seeds.
class PrfStream {
public:
    explicit PrfStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_word() { return prf_word(seed_, 0x9E6B9E6B9E6B9E6BULL, counter_++); }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t w;
        do {
            w = next_word();
        } while (w >= limit);
        return w % bound;
    }

    double unit() { return static_cast<double>(next_word() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace sfo
