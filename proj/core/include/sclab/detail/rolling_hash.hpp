#pragma once

#include <cstdint>
#include <vector>

namespace sclab::detail {

// Polynomial rolling hash over letter codes. Matches found through it are
// always confirmed letter-by-letter before use, so hash collisions cost time
// but never correctness.
struct RollingHash {
    static constexpr std::uint64_t kMul = 0x9e3779b97f4a7c15ULL;

    // prefix[i] = hash of first i letters; pow[i] = kMul^i.
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> pow;

    template <typename Seq>
    explicit RollingHash(const Seq& letters) {
        const std::size_t n = letters.size();
        prefix.resize(n + 1, 0);
        pow.resize(n + 1, 1);
        for (std::size_t i = 0; i < n; ++i) {
            prefix[i + 1] = prefix[i] * kMul + static_cast<std::uint64_t>(
                                                   static_cast<std::int64_t>(letters[i])) +
                            0x123456789abcdefULL;
            pow[i + 1] = pow[i] * kMul;
        }
    }

    std::uint64_t slice(std::size_t start, std::size_t len) const {
        return prefix[start + len] - prefix[start] * pow[len];
    }
};

}  // namespace sclab::detail
