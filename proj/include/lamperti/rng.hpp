#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace lamperti {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter apply(Counter c, Key k) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k[0] += 0x9E3779B9u;
                k[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t(0xD2511F53u) * c[0];
            const std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * c[2];
            c = {std::uint32_t(p1 >> 32) ^ c[1] ^ k[0], std::uint32_t(p1),
                 std::uint32_t(p0 >> 32) ^ c[3] ^ k[1], std::uint32_t(p0)};
        }
        return c;
    }
};

enum class Variable : std::uint32_t { arrival = 0, time = 1, direction = 2, extra = 3 };

// Uniforms on (0,1) addressed by (seed, stream, variable, index); the value at a
// given address never depends on what else was drawn.
class UniformStream {
public:
    UniformStream(std::uint64_t seed, std::uint32_t stream, Variable v)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream), var_(std::uint32_t(v)) {}

    double at(std::uint64_t i) {
        const std::uint64_t block = i >> 1;
        if (block != cached_block_) {
            const auto out = Philox4x32::apply(
                {std::uint32_t(block), std::uint32_t(block >> 32), stream_, var_}, key_);
            cache_[0] = to_unit(out[0], out[1]);
            cache_[1] = to_unit(out[2], out[3]);
            cached_block_ = block;
        }
        return cache_[i & 1];
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        // 52 bits, so that the largest value 1 - 2^-53 is exactly representable.
        const std::uint64_t m = (std::uint64_t(hi) << 20) ^ (lo >> 12);
        return (double(m) + 0.5) * 0x1.0p-52;
    }

private:
    Philox4x32::Key key_;
    std::uint32_t stream_, var_;
    std::uint64_t cached_block_ = ~std::uint64_t(0);
    double cache_[2] = {0.0, 0.0};
};

} // namespace lamperti
