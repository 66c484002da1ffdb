#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "besovlab/types.hpp"

namespace besovlab {

/// Signed Chebyshev margin to the boundary of a south-west quadrant
/// region (-inf, a) x (-inf, b): positive inside, zero on the boundary.
inline double quadrant_margin(double s, double w, double a, double b) {
    return std::min(a - s, b - w);
}

struct RegionVerdict {
    bool in_E_p = false;       // L^2 containment region
    bool in_R_p = false;       // 0-Radonifying region
    bool in_R_p_p = false;     // p-Radonifying region
    bool in_gaussian_region = false;  // Brownian regularisation region

    double margin_E_p = 0.0;   // signed Chebyshev distances in (s, w)
    double margin_R_p = 0.0;
    double margin_R_p_p = 0.0;

    bool boundary_E_p = false;
    bool boundary_R_p = false;
    bool boundary_R_p_p = false;

    /// Closed-boundary discrepancy between the containment region formula
    /// and the embedding criterion (only possible for p > 2 on the
    /// s-boundary); surfaced, never silently resolved.
    bool embedding_boundary_discrepancy = false;
};

/// Membership of (s, w) in E_p, R_p, R_p^(p) and the Gaussian region,
/// with boundary semantics exactly as printed (E_p closed at 0 only for
/// p = 2, closed in w for p > 2; R regions open).
RegionVerdict classify_point(const BesovParams& params);

/// Continuous embedding of one weighted Besov space into another.
bool besov_embeds(const BesovParams& a, const BesovParams& b);

/// Boundary ordinates of the region formulas as functions of x = 1/p,
/// for the Triebel diagrams; s/w value, not rescaled.
double ep_s_boundary(double one_over_p, int d);
double ep_w_boundary(double one_over_p, int d);
double rp_s_boundary(double one_over_p, int d);
double rp_w_boundary(double one_over_p, int d);
double rpp_s_boundary(double one_over_p, int d);
double rpp_w_boundary(double one_over_p, int d);

enum class TriebelPlane { S, W };

struct TriebelCell {
    double one_over_p = 0.0;
    double ordinate = 0.0;  // s or w depending on the plane
    bool in_E_p = false;
    bool in_R_p = false;
    bool in_R_p_p = false;
    bool boundary = false;  // within half a grid step of a region boundary
};

struct TriebelGrid {
    TriebelPlane plane = TriebelPlane::S;
    int d = 1;
    std::size_t nx = 0;  // resolution along 1/p
    std::size_t ny = 0;  // resolution along the ordinate
    std::vector<TriebelCell> cells;  // row-major, ordinate rows
};

/// Row-major grid of per-plane region membership over
/// 1/p in (1/p_max, 1/p_min) and ordinate in [lo, hi].
TriebelGrid triebel_grid(TriebelPlane plane, double p_min, double p_max, double lo,
                         double hi, int d, std::size_t resolution);

/// CSV with header one_over_p,s_or_w,in_Ep,in_Rp,in_Rpp,boundary.
void write_triebel_csv(const TriebelGrid& grid, std::ostream& out);

/// Two-panel SVG of the s- and w-plane diagrams with the three shaded
/// regions and their boundary polylines.
std::string triebel_svg(double p_min, double p_max, int d, std::size_t resolution);

}  // namespace besovlab
