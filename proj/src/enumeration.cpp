#include "besovlab/enumeration.hpp"

namespace besovlab {

namespace {

// Lexicographic walk of the lattice ring |m|_oo == r; cost proportional
// to the ring size.
void ring_rec(int d, int pos, std::int32_t r, bool has_extreme,
              std::array<std::int32_t, kMaxDim>& m,
              const std::function<void(const std::array<std::int32_t, kMaxDim>&)>& visit) {
    if (pos == d) {
        visit(m);
        return;
    }
    if (!has_extreme && pos == d - 1) {
        m[pos] = -r;
        ring_rec(d, pos + 1, r, true, m, visit);
        if (r > 0) {
            m[pos] = r;
            ring_rec(d, pos + 1, r, true, m, visit);
        }
        return;
    }
    for (std::int32_t v = -r; v <= r; ++v) {
        m[pos] = v;
        ring_rec(d, pos + 1, r, has_extreme || std::abs(v) == r, m, visit);
    }
}

}  // namespace

void for_each_on_ring(int d, std::int32_t r,
                      const std::function<void(const std::array<std::int32_t, kMaxDim>&)>& visit) {
    std::array<std::int32_t, kMaxDim> m{};
    if (r == 0) {
        visit(m);
        return;
    }
    ring_rec(d, 0, r, false, m, visit);
}

void IndexEnumeration::for_each(const std::function<bool(const WaveletIndex&)>& visit) const {
    validate();
    const std::uint32_t full = 1u << d;
    bool stop = false;
    for (int j = 0; j <= max_scale && !stop; ++j) {
        const std::uint32_t g_begin = (j == 0) ? 0u : 1u;
        for (std::int32_t r = 0; r <= max_shift && !stop; ++r) {
            for_each_on_ring(d, r, [&](const std::array<std::int32_t, kMaxDim>& m) {
                if (stop) return;
                for (std::uint32_t g = g_begin; g < full; ++g) {
                    WaveletIndex idx;
                    idx.j = j;
                    idx.gender = g;
                    idx.m = m;
                    idx.d = d;
                    if (!visit(idx)) {
                        stop = true;
                        return;
                    }
                }
            });
        }
    }
}

std::vector<WaveletIndex> IndexEnumeration::generate() const {
    std::vector<WaveletIndex> out;
    out.reserve(size());
    for_each([&](const WaveletIndex& idx) {
        out.push_back(idx);
        return true;
    });
    return out;
}

}  // namespace besovlab
