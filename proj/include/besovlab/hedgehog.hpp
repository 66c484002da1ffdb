#pragma once

#include <optional>
#include <string>
#include <vector>

#include "besovlab/besov_core.hpp"
#include "besovlab/levy_measure.hpp"
#include "besovlab/regions.hpp"

namespace besovlab {

/// Hedgehog process specification: an iid family of one-dimensional
/// symmetric Levy processes driven by `rho`, attached to an orthonormal
/// basis with coefficients (a_k). Two modes:
///   - Wavelet: e_k are the wavelet basis vectors, a is indexed by the
///     enumeration and ||a_k e_k|| = |a_k| w_k;
///   - Abstract: the Besov norm sequence ||a_k e_k|| is given directly
///     (power decay or an explicit list).
struct HedgehogSpec {
    enum class Mode { Wavelet, Abstract };
    Mode mode = Mode::Abstract;
    LevyMeasure1D rho = LevyMeasure1D::stable(1.2);

    // Abstract mode: norm family.
    std::optional<double> norm_power_gamma;  // ||a_k e_k|| = k^{-gamma}
    std::vector<double> explicit_norms;

    // Coefficient family (a_k). When absent, a mirrors the norm family.
    std::optional<double> a_power_gamma;  // a_k = k^{-gamma_a}
    std::vector<double> explicit_a;

    // Wavelet mode: coefficients over the enumeration.
    IndexEnumeration trunc{1, 10, 1024};
    double uniform_a = 1.0;               // a == uniform_a when no list given
    std::vector<double> wavelet_a;        // explicit a per enumerated index
    std::optional<double> b_power_gamma;  // a = k^{-gamma_b} / w_k
    std::optional<BesovParams> wavelet_params;  // space behind the b rule

    // Counterexample constructions carry a certified lower bound on q_min.
    std::optional<double> certified_qmin_lower;

    void validate() const;
};

enum class Admissibility { Admissible, NotAdmissible, Inconclusive };

struct AdmissibilityReport {
    Admissibility verdict = Admissibility::Inconclusive;
    std::string criterion;     // which catalog criterion decided
    double ell_exponent = 0.0; // the l-space exponent tested, 0 = sup bound
    std::vector<double> probe_partial_sums;  // numeric fallback trends
    bool probe_trend_bounded = false;
};

/// Checks the coefficient condition guaranteeing the hedgehog sum
/// converges, via the per-catalog equivalent criterion with a numeric
/// probe fallback.
AdmissibilityReport admissibility(const HedgehogSpec& spec);

struct QMinEstimate {
    double value = kInf;
    bool analytic = true;
    double uncertainty = 0.0;
};

/// Critical summability exponent of the Besov norms ||a_k e_k||.
QMinEstimate q_min(const HedgehogSpec& spec, const BesovParams& params);

enum class HedgehogOutcome { Induced, NotInduced, Inconclusive };
enum class HedgehogBranch { Clause1i, Clause1ii, Clause2, None };

inline const char* to_string(HedgehogOutcome o) {
    switch (o) {
        case HedgehogOutcome::Induced: return "Induced";
        case HedgehogOutcome::NotInduced: return "NotInduced";
        default: return "Inconclusive";
    }
}
inline const char* to_string(HedgehogBranch b) {
    switch (b) {
        case HedgehogBranch::Clause1i: return "(1)(i)";
        case HedgehogBranch::Clause1ii: return "(1)(ii)";
        case HedgehogBranch::Clause2: return "(2)";
        default: return "none";
    }
}

struct HedgehogVerdict {
    HedgehogOutcome outcome = HedgehogOutcome::Inconclusive;
    HedgehogBranch branch = HedgehogBranch::None;
    double q_min = kInf;
    double tau_upper = kInf;  // at order min(p, 2)
    double tau_lower = kInf;  // at order max(p, 2)
    RegionVerdict region;
};

/// Three-way regularisation verdict: induced when (s,w) lies in R_p or
/// q_min < tau_upper^(min(p,2)); not induced when outside R_p and
/// q_min > tau_lower^(max(p,2)); the band in between is Inconclusive.
HedgehogVerdict hedgehog_verdict(const HedgehogSpec& spec, const BesovParams& params);

enum class TrendFlag { Converges, Diverges, Undetermined };

inline const char* to_string(TrendFlag t) {
    switch (t) {
        case TrendFlag::Converges: return "Converges";
        case TrendFlag::Diverges: return "Diverges";
        default: return "Undetermined";
    }
}

struct ConditionReport {
    std::string name;
    std::vector<double> partial_values;  // cumulative at geometric checkpoints
    TrendFlag trend = TrendFlag::Undetermined;
};

/// Truncated evaluation of the Levy-measure conditions for the hedgehog
/// in wavelet-basis mode (the pairings collapse to diagonal terms).
/// For p >= 2: the capped p-th moment sum and the inner (.)^{p/2} sum;
/// for p in (1, 2): the quadratic cap sum and the cosine-exponential
/// tau-integral sum.
std::vector<ConditionReport> levy_measure_conditions(const HedgehogSpec& spec,
                                                     const BesovParams& params,
                                                     const IndexEnumeration& trunc);

/// Abel-Dini style counterexample coefficients on the wavelet index set:
/// a member of l^{2a/(2-a)} whose norm sequence fails q-summability for
/// an exponent strictly above alpha. Block-aggregated so the certificates
/// reach far beyond enumerable truncations.
struct Counterexample {
    double alpha = 0.0;
    double q_prime = 0.0;       // certified divergence exponent, > alpha
    double q_crit = 0.0;        // largest failing exponent
    double sigma = 0.0;         // Abel-Dini damping power
    double ell_r = 0.0;         // 2 alpha / (2 - alpha)
    double k_div = 0.0;         // weight power of the divergent base series
    double a_omega_exponent = 0.0;  // a_k = w_k^{this} * T_b^{-sigma/q'}
    std::string route;          // "ring" (level 0) or "level"

    // Certificates.
    double alpha_weighted_partial = 0.0;   // partial sums of (|a| w)^alpha
    double qprime_weighted_partial = 0.0;  // partial sums of (|a| w)^q'
    double ell_r_partial = 0.0;            // partial sums of |a|^{ell_r}
    double ell_r_tail_bound = 0.0;         // closed-form tail bound
    std::uint64_t blocks = 0;

    // Block lookup tables for evaluating a on explicit indices.
    std::vector<double> block_T;     // cumulative divergent-series sums
    std::vector<double> block_edge;  // ring route: ring range starts; level route: levels

    /// Evaluate the coefficient at an explicit index (0 outside support).
    [[nodiscard]] double a_value(const BesovParams& params, const WaveletIndex& idx) const;

    /// Wavelet-mode spec over `trunc` with the certified q_min bound attached.
    [[nodiscard]] HedgehogSpec as_spec(const BesovParams& params,
                                       const IndexEnumeration& trunc) const;
};

struct CounterexampleOptions {
    double divergence_target = 1e3;  // grow partial sums at least this far
    std::uint64_t max_blocks = 4096;
};

/// Requires p > 2 and (s, w) in E_p \ R_p.
Counterexample counterexample_sequence(const BesovParams& params, double alpha,
                                       const CounterexampleOptions& opts = {});

}  // namespace besovlab
