#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "besovlab/besov_core.hpp"
#include "besovlab/regions.hpp"

namespace besovlab {

/// Configuration of a canonical alpha-stable analysis run.
struct StableRun {
    double alpha = 1.2;  // in (0, 2)
    BesovParams params;
    IndexEnumeration trunc{1, 13, 8192};
    std::uint64_t mc_samples = 20000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::uint64_t index_budget = 1ull << 17;

    void validate() const;
};

struct StableConstants {
    double c_alpha = 0.0;
    double r_n = 0.0;
};

/// c_alpha = -alpha cos(alpha pi / 2) Gamma(-alpha) for alpha != 1 (the
/// removable singularity at 1 is patched within 1e-6), and
/// r_n = Gamma(1/2) Gamma((n+alpha)/2) / (Gamma(n/2) Gamma((1+alpha)/2)).
StableConstants stable_constants(double alpha, std::uint64_t n);

/// Closed-form coordinate moment of the uniform probability measure on
/// the sphere in R^n: Gamma(n/2) Gamma((1+p)/2) / (Gamma(1/2) Gamma((n+p)/2)).
double sphere_coordinate_moment(std::uint64_t n, double p);

struct SphereSampleReport {
    std::uint64_t n = 0;
    std::uint64_t count = 0;
    std::vector<double> probe_orders;      // p values probed
    std::vector<double> moment_estimates;  // MC coordinate moments
    std::vector<double> moment_stderr;
    std::vector<double> moment_exact;      // closed form
};

/// Uniform sphere samples (normalized Gaussians) with coordinate-moment
/// diagnostics against the closed form.
SphereSampleReport sphere_sample(std::uint64_t n, std::uint64_t count, std::uint64_t seed,
                                 const std::vector<double>& probe_orders = {1.0, 2.0, 3.5});

struct FunctionalCurve {
    std::vector<std::uint64_t> n;      // truncation sizes
    std::vector<double> value;         // MC estimate
    std::vector<double> lower;         // analytic lower bound (NaN if none)
    std::vector<double> upper;         // analytic upper bound (NaN if none)
    std::vector<double> mc_stderr;
    std::vector<double> weight_power_sum;  // A_n = sum of w^p over the first n
};

/// Sigma_n = p/(c_a (p-a)) * Integral over the sphere of
/// (sum_n w^p |xi|^p)^{a/p} d lambda_n, by Monte Carlo with the
/// coordinate-moment control variate; companions: Jensen upper bound and
/// the concave-Jensen lower bound p A_n^{a/p} / (c_a (p-a)).
FunctionalCurve sigma_n(const StableRun& run);

/// Upsilon_n (second moment functional, p >= 2) with its chained
/// Jensen/Hoelder upper bound.
FunctionalCurve upsilon_n(const StableRun& run);

/// Lambda_n (quadratic-cap functional, p in (1,2)) with the
/// concave/convex Jensen lower bounds per branch.
FunctionalCurve lambda_stat_n(const StableRun& run);

struct TailProbabilityCurve {
    std::vector<std::uint64_t> n;
    std::vector<double> direct;    // direct sphere-integral evaluation
    std::vector<double> via_sigma; // R^{-alpha} (p-alpha)/p Sigma_n
    std::vector<double> sigma;     // shared Sigma_n values
    double radius = 0.0;
};

/// mu({ ||P_n f|| > R }) both directly and through the Sigma_n identity,
/// over the same Monte Carlo draw.
TailProbabilityCurve tail_probability(const StableRun& run, double radius);

struct StableVerdict {
    bool induced = false;
    std::string reason;
    RegionVerdict region;
};

/// Theorem verdict: induced iff s < -d/2 and w < -d/p (alpha-free).
/// Requires (s, w) in E_p.
StableVerdict stable_verdict(const BesovParams& params, double alpha);

struct DivergenceCertificate {
    std::vector<int> levels;               // J values visited
    std::vector<double> virtual_indices;   // lattice points covered through level J
    std::vector<double> weight_power_sum;  // A(J), full-lattice per level
    std::vector<double> lower_bound;       // p A^{a/p} / (c_a (p-a))
    bool crossed = false;                  // lower bound exceeded the target
    double target = 0.0;
    std::string direction;                 // which coordinate drives the divergence
};

/// Divergence certificate for the necessity branch: grows A(J) through
/// per-level full-lattice sums (far beyond enumerable truncations) until
/// the concave-Jensen lower bound exceeds `target` or the work budget is
/// exhausted. Used when (s, w) lies outside the stable region.
DivergenceCertificate sigma_divergence_certificate(const BesovParams& params, double alpha,
                                                   double target = 1e4,
                                                   std::uint64_t max_work = 100000);

}  // namespace besovlab
