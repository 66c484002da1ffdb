#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "besovlab/besov_core.hpp"
#include "besovlab/hedgehog.hpp"
#include "besovlab/rng.hpp"

namespace besovlab {

/// One increment of the rotationally invariant n-dimensional stable
/// marginal with cf exp(-dt ||u||^alpha), via the sub-Gaussian
/// representation sqrt(W) Z with a positive (alpha/2)-stable W.
std::vector<double> sample_rotinv_stable_increment(std::uint64_t n, double alpha, double dt,
                                                   Xoshiro256& rng);

enum class PathModel { CanonicalStable, Hedgehog };

struct PathSample {
    std::vector<double> times;              // increasing grid in [0, T]
    std::vector<std::vector<double>> coeffs;  // [time][coordinate] cumulative values
    std::uint64_t seed = 0;
    PathModel model = PathModel::Hedgehog;
};

/// Simulate the truncated hedgehog in wavelet coordinates: independent
/// coordinates with stationary independent increments per the driving
/// catalog member.
PathSample sample_hedgehog_path(const HedgehogSpec& spec, const IndexEnumeration& trunc,
                                const std::vector<double>& times, std::uint64_t seed);

/// One-dimensional increment of the driving Levy process over dt.
double sample_catalog_increment(const LevyMeasure1D& rho, double dt, Xoshiro256& rng);

struct NormCurve {
    std::vector<std::uint64_t> n;
    std::vector<double> median;
    std::vector<double> q25;
    std::vector<double> q75;
    std::uint64_t replicas = 0;
};

struct SimulationConfig {
    PathModel model = PathModel::CanonicalStable;
    double alpha = 1.2;                      // canonical stable only
    BesovParams params;
    IndexEnumeration trunc{1, 12, 4096};
    std::vector<std::uint64_t> n_grid;       // empty = geometric default
    std::uint64_t replicas = 128;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/// Empirical Besov norms ||P_n Y(1)|| across replicas, summarised by
/// median and interquartile range (stable norms have no useful mean).
NormCurve empirical_norm_curve(const SimulationConfig& config, const HedgehogSpec* spec = nullptr);

/// Norm curve of an already-sampled path at its final time.
NormCurve norm_curve_of_path(const PathSample& path, const BesovParams& params,
                             const IndexEnumeration& trunc,
                             const std::vector<std::uint64_t>& n_grid);

enum class Diagnostic { Stabilising, Growing, Ambiguous };

inline const char* to_string(Diagnostic d) {
    switch (d) {
        case Diagnostic::Stabilising: return "Stabilising";
        case Diagnostic::Growing: return "Growing";
        default: return "Ambiguous";
    }
}

struct DivergenceDiagnostic {
    Diagnostic verdict = Diagnostic::Ambiguous;
    double slope = 0.0;  // log median norm vs log n, last half of the grid
};

/// Least-squares slope over the last half of the curve; Stabilising below
/// 0.02, Growing above 0.1.
DivergenceDiagnostic divergence_diagnostic(const NormCurve& curve);

}  // namespace besovlab
