#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "besovlab/numerics.hpp"

namespace besovlab {

/// Catalog of symmetric one-dimensional Levy measures. Densities are
/// stated on beta > 0 and mirrored; PointMassAtOne is the symmetrised
/// unit atom (1/2)(delta_1 + delta_{-1}).
struct PointMassAtOne {};

struct StableMeasure {
    double alpha;  // in (0, 2); density |beta|^{-1-alpha}
};

struct TemperedStableMeasure {
    double zeta;  // in (0, 3); density |beta|^{-zeta} e^{-|beta|}
};

/// |beta|^{-1-alpha1} on +-(2k, 2k+1], |beta|^{-1-alpha2} on +-(2k+1, 2k+2].
struct BlendedStableMeasure {
    double alpha1;
    double alpha2;  // 0 < alpha1 < alpha2 < 2
};

struct CustomDensityMeasure {
    std::function<double(double)> density;  // on beta > 0, mirrored
    /// Certified p_max (sup of finite absolute tail moments), if known.
    std::optional<double> p_max_certificate;
    std::string name = "custom";
};

class LevyMeasure1D {
public:
    using Variant = std::variant<PointMassAtOne, StableMeasure, TemperedStableMeasure,
                                 BlendedStableMeasure, CustomDensityMeasure>;

    LevyMeasure1D(Variant v) : v_(std::move(v)) { validate(); }

    static LevyMeasure1D point_mass() { return LevyMeasure1D(PointMassAtOne{}); }
    static LevyMeasure1D stable(double alpha) { return LevyMeasure1D(StableMeasure{alpha}); }
    static LevyMeasure1D tempered_stable(double zeta) {
        return LevyMeasure1D(TemperedStableMeasure{zeta});
    }
    static LevyMeasure1D blended(double a1, double a2) {
        return LevyMeasure1D(BlendedStableMeasure{a1, a2});
    }
    static LevyMeasure1D custom(std::function<double(double)> density,
                                std::optional<double> p_max = std::nullopt,
                                std::string name = "custom") {
        return LevyMeasure1D(CustomDensityMeasure{std::move(density), p_max, std::move(name)});
    }

    /// Config-file tag and parameters, e.g. measure = "stable", alpha = 1.2.
    static LevyMeasure1D from_tag(const std::string& tag, double a = 0, double b = 0);

    [[nodiscard]] const Variant& variant() const { return v_; }
    [[nodiscard]] std::string tag() const;
    [[nodiscard]] std::string describe() const;

private:
    void validate() const;
    Variant v_;
};

/// rho({|beta| > t}); exact for catalog members.
double tail_mass(const LevyMeasure1D& rho, double t);

/// Truncated absolute moment over a <= |beta| <= b (atoms at the endpoints
/// included; returns +inf when the integral diverges).
double truncated_moment(const LevyMeasure1D& rho, double q, double a, double b);

/// Integral over the unit-ball complement of (xi^q |beta|^q) ^ 1, split
/// exactly at |beta| = 1/xi.
double xi_integral(const LevyMeasure1D& rho, double q, double xi);

/// Integral of (x^2 beta^2 ^ 1): x^2 M_2[0, 1/x] + tail(1/x).
double quadratic_cap_integral(const LevyMeasure1D& rho, double x);

enum class TauMethod { Analytic, NumericGrid };

struct TauIndices {
    double tau_upper = kInf;  // limsup scaling exponent
    double tau_lower = kInf;  // liminf scaling exponent
    double q = 0.0;
    TauMethod method = TauMethod::Analytic;
    double uncertainty = 0.0;  // fit residual for the numeric grid
    bool ambiguous = false;    // residual above threshold
};

struct TauGridSpec {
    int grid_points = 60;  // xi_i = 2^{-i}, i = 1..N, N >= 40
    int fit_window = 15;
    double residual_threshold = 0.05;
};

/// Summability indices of rho at order q; analytic catalog values or a
/// slope fit of log xi_integral against log xi.
TauIndices tau_indices(const LevyMeasure1D& rho, double q,
                       std::optional<TauGridSpec> grid = std::nullopt);

/// sup of p with finite absolute tail moment; numeric tail-slope estimate
/// for custom measures without certificate.
double p_max(const LevyMeasure1D& rho);

struct CfMomentSpec {
    double rel_tol = 1e-9;
    double upper_limit = 0.0;  // 0 = automatic
};

/// E|X|^q for a symmetric random variable from its characteristic
/// function: c_q * Integral of (1 - Re cf(tau)) tau^{-q-1}. The constant
/// c_q is calibrated once per q on the standard Gaussian.
double symmetric_moment_via_cf(const std::function<double(double)>& cf, double q,
                               const CfMomentSpec& spec = {});

/// Calibration constant c_q itself (cached per q).
double cf_moment_constant(double q);

}  // namespace besovlab
