#pragma once

// Philox4x32-10 counter-based generator. A stream is keyed by
// (master_seed, stream_index); the counter is the draw index, so any draw of
// any stream can be reproduced without replaying the others.

#include <array>
#include <cstdint>

namespace starcons {

namespace philox {

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline constexpr Block round(const Block& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
}

/// Ten rounds of Philox4x32.
inline constexpr Block philox4x32_10(Block ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        ctr = round(ctr, key);
    }
    return ctr;
}

} // namespace philox

class CounterRng {
public:
    CounterRng(std::uint64_t master_seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
          stream_(stream) {}

    /// Next 64 random bits.
    std::uint64_t next_u64() noexcept {
        if (used_ == 2) {
            block_ = philox::philox4x32_10({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                                            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                           key_);
            ++counter_;
            used_ = 0;
        }
        const std::uint64_t v = (static_cast<std::uint64_t>(block_[2 * used_]) << 32) | block_[2 * used_ + 1];
        ++used_;
        return v;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Number of 64-bit draws consumed so far.
    std::uint64_t draws() const noexcept { return 2 * counter_ - (2 - used_); }

private:
    philox::Key key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    philox::Block block_{};
    int used_ = 2;
};

} // namespace starcons
