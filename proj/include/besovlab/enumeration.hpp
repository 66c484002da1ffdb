#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "besovlab/types.hpp"

namespace besovlab {

/// Number of genders at scale j: 2^d for j = 0, 2^d - 1 otherwise.
inline std::uint64_t gender_count(int d, int j) {
    const std::uint64_t full = 1ull << d;
    return j == 0 ? full : full - 1;
}

/// Deterministic truncated enumeration of the wavelet index set:
/// lexicographic on (j, |m|_oo, m lexicographic, G lexicographic) over
/// j <= J, |m|_oo <= M. The underlying sums are unconditional, so any
/// fixed order is valid; this one is reproducible and makes the partial
/// sum projections nested.
struct IndexEnumeration {
    int d = 1;
    int max_scale = 0;        // J
    std::int32_t max_shift = 0;  // M

    void validate() const {
        require(d >= 1 && d <= kMaxDim, "IndexEnumeration: d out of range");
        require(max_scale >= 0 && max_shift >= 0, "IndexEnumeration: J, M must be >= 0");
    }

    /// Cardinality sum_{j<=J} |G^j| (2M+1)^d.
    [[nodiscard]] std::uint64_t size() const {
        std::uint64_t cube = 1;
        for (int i = 0; i < d; ++i) cube *= 2ull * static_cast<std::uint64_t>(max_shift) + 1ull;
        std::uint64_t total = 0;
        for (int j = 0; j <= max_scale; ++j) total += gender_count(d, j) * cube;
        return total;
    }

    /// Visit indices in enumeration order; stop early when visit returns false.
    void for_each(const std::function<bool(const WaveletIndex&)>& visit) const;

    [[nodiscard]] std::vector<WaveletIndex> generate() const;
};

/// Visit all lattice points with |m|_oo == r (d <= kMaxDim) in
/// lexicographic order.
void for_each_on_ring(int d, std::int32_t r,
                      const std::function<void(const std::array<std::int32_t, kMaxDim>&)>& visit);

}  // namespace besovlab
