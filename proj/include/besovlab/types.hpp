#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "besovlab/numerics.hpp"

namespace besovlab {

inline constexpr int kMaxDim = 8;

/// Parameters (p, s, w) of a weighted Besov space over R^d.
struct BesovParams {
    double p = 2.0;  // integrability exponent, > 1
    double s = 0.0;  // smoothness
    double w = 0.0;  // weight decay
    int d = 1;       // ambient dimension, >= 1

    void validate() const {
        require(p > 1.0, "BesovParams: p must be > 1");
        require(d >= 1 && d <= kMaxDim, "BesovParams: d out of range");
        require(std::isfinite(s) && std::isfinite(w), "BesovParams: s, w must be finite");
    }
};

/// Conjugate space parameters (p', -s, -w, d). Involution.
inline BesovParams dual_params(const BesovParams& params) {
    params.validate();
    return {params.p / (params.p - 1.0), -params.s, -params.w, params.d};
}

/// Wavelet index (j, G, m). The gender G is stored as a bitmask whose
/// most significant used bit corresponds to the first coordinate, so
/// numeric order on the mask equals lexicographic order on the tuple.
struct WaveletIndex {
    int j = 0;
    std::uint32_t gender = 0;
    std::array<std::int32_t, kMaxDim> m{};
    int d = 1;

    [[nodiscard]] std::int64_t m_norm_sq() const {
        std::int64_t r = 0;
        for (int i = 0; i < d; ++i) r += static_cast<std::int64_t>(m[i]) * m[i];
        return r;
    }
    [[nodiscard]] std::int32_t m_sup_norm() const {
        std::int32_t r = 0;
        for (int i = 0; i < d; ++i) r = std::max(r, std::abs(m[i]));
        return r;
    }
    /// j = 0 admits every gender; j >= 1 requires at least one 1-bit.
    [[nodiscard]] bool valid() const {
        return j >= 0 && d >= 1 && d <= kMaxDim && gender < (1u << d) &&
               (j == 0 || gender != 0);
    }
};

/// Sparse coefficient field lambda over a finite set of wavelet indices;
/// absent indices are zero.
struct CoefficientField {
    std::vector<WaveletIndex> indices;
    std::vector<double> values;

    void add(const WaveletIndex& idx, double value) {
        indices.push_back(idx);
        values.push_back(value);
    }
    [[nodiscard]] std::size_t size() const { return values.size(); }
};

}  // namespace besovlab
