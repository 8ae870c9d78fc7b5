#pragma once

// Phase quorum sizes. Replication phases terminate on ceil((3n+1)/4) acks,
// coded writes on ceil((3n+k)/4), coded reads and repairs gather
// ceil((n+k)/2) lists; first phases always await a majority of n.

#include <cstdint>

namespace radon {

struct QuorumsL {
    std::uint32_t majority{1};
    std::uint32_t put_quorum{1};
};

inline QuorumsL quorum_sizes_l(std::uint32_t n) { return {n / 2 + 1, (3 * n + 1 + 3) / 4}; }

struct QuorumsC {
    std::uint32_t majority{1};
    std::uint32_t put_quorum{1};
    std::uint32_t list_quorum{1};
};

inline QuorumsC quorum_sizes_c(std::uint32_t n, std::uint32_t k) {
    return {n / 2 + 1, (3 * n + k + 3) / 4, (n + k + 1) / 2};
}

}  // namespace radon
