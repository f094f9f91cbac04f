#pragma once

#include <array>
#include <cstdint>

namespace gcdh {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream addressed by (seed, index).
///
/// Two streams with the same (seed, index) produce identical sequences no
/// matter which thread owns them or in what order they are created. Each
/// stream can draw up to 2^64 blocks of four 32-bit words.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal via Box-Muller; pairs are cached.
    double gaussian();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t index_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

} // namespace gcdh
