#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "besovlab/enumeration.hpp"
#include "besovlab/types.hpp"

namespace besovlab {

/// Scale exponent s - d/p + d/2 that multiplies j in the weight.
inline double scale_exponent(const BesovParams& params) {
    return params.s - params.d / params.p + params.d / 2.0;
}

/// log2 of the weight constant at (j, m).
inline double log2_weight(const BesovParams& params, int j, std::int64_t m_norm_sq) {
    const double ring = std::log1p(std::ldexp(static_cast<double>(m_norm_sq), -2 * j));
    return j * scale_exponent(params) + 0.5 * params.w * ring / std::numbers::ln2;
}

/// Weight constant 2^{j(s-d/p+d/2)} (1 + 2^{-2j}|m|^2)^{w/2}.
double weight(const BesovParams& params, const WaveletIndex& idx);

/// Besov sequence norm (sum over included indices of (w_m^j |lambda|)^p)^{1/p}.
/// When first_n is given, only indices among the first n of the enumeration
/// induced by `trunc` contribute, i.e. the norm of the projection P_n.
double seq_norm(const BesovParams& params, const CoefficientField& coeffs,
                std::optional<std::uint64_t> first_n = std::nullopt,
                std::optional<IndexEnumeration> trunc = std::nullopt);

enum class SumVerdict { Converges, Diverges };

inline const char* to_string(SumVerdict v) {
    return v == SumVerdict::Converges ? "Converges" : "Diverges";
}

/// Analytic summability threshold for the weights: (w_m^j) lies in
/// l^k iff k > max{-d/w, 2dp/(2d - dp - 2ps)}, valid for s < d/p - d/2
/// and w < 0. Returns +inf in the degenerate cases (w >= 0 or
/// s >= d/p - d/2), where no power is summable.
double weight_summability_threshold(const BesovParams& params);

struct WeightPowerSumReport {
    std::vector<double> level_partial_sums;  // cumulative over j = 0..J at truncation M
    SumVerdict verdict = SumVerdict::Diverges;          // numeric trend verdict
    SumVerdict analytic_verdict = SumVerdict::Diverges;
    double analytic_threshold = kInf;  // max{-d/w, 2dp/(2d-dp-2ps)}, +inf if degenerate
    double m_exponent_estimate = 0.0;  // fitted ring exponent, converges iff < -d
    double j_exponent_estimate = 0.0;  // fitted log2 level ratio, converges iff < 0
};

/// Partial sums and a convergence verdict for sum of w_m^j ^ k over the
/// truncated index set. The numeric verdict is estimated from the decay of
/// ring sums (m direction) and level sums (j direction) of the computed
/// partial data; the analytic verdict comes from the threshold formula.
WeightPowerSumReport weight_power_sum(const BesovParams& params, double k,
                                      const IndexEnumeration& trunc);

// --- lattice power-sum evaluators (shared by the analytic certificates) ---

/// sum over m in Z^d, |m|_oo <= M of (1 + 2^{-2j}|m|^2)^{kappa/2}, exact
/// ring-by-ring summation.
double lattice_sum_truncated(int d, int j, double kappa, std::int32_t M);

/// Ring sum at |m|_oo = r.
double lattice_ring_sum(int d, int j, double kappa, std::int32_t r);

/// Integral of (1+|u|^2)^{kappa/2} over R^d; finite iff kappa < -d.
double lattice_integral_constant(double kappa, int d);

/// Integral of (1+|u|^2)^{kappa/2} over the box |u|_oo <= y (d <= 3).
double lattice_integral_box(double kappa, int d, double y);

struct LatticeSumValue {
    double value = 0.0;
    double rel_error = 0.0;  // bound on the relative error of `value`
};

/// Full sum over m in Z^d of (1 + 2^{-2j}|m|^2)^{kappa/2}. Requires
/// kappa < -d. Direct summation at small scales, Poisson-summation
/// asymptotics 2^{jd} * I(kappa, d) once the summand is wide.
LatticeSumValue lattice_sum_full(int d, int j, double kappa);

/// Cumulative sum over rings r = 0..R of the j-level summand, with R far
/// beyond enumerable range: Euler-Maclaurin integral form once direct
/// summation becomes infeasible (d <= 3).
LatticeSumValue lattice_sum_rings_to(int d, int j, double kappa, double R);

/// Per-level weighted sums L_j(k) = |G^j| 2^{j k (s-d/p+d/2)} S_j(k w) with
/// S evaluated over the full lattice; usable far beyond enumerable
/// truncations. Requires k*w < -d.
LatticeSumValue level_weight_power_sum(const BesovParams& params, double k, int j);

}  // namespace besovlab
