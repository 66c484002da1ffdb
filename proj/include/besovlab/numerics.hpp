#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace besovlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier-compensated accumulator. Weights in this project span many
/// orders of magnitude across wavelet scales, so every long reduction
/// goes through one of these.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    void merge(const CompensatedSum& other) {
        add(other.sum_);
        comp_ += other.comp_;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Gamma(x + a) / Gamma(x) evaluated through lgamma; overflow-safe.
inline double gamma_ratio(double x_plus_a, double x) {
    return std::exp(std::lgamma(x_plus_a) - std::lgamma(x));
}

/// |x|^p with cheap paths for the small integer exponents that dominate
/// the Monte Carlo loops.
inline double abs_pow(double x, double p) {
    const double a = std::abs(x);
    if (p == 2.0) return a * a;
    if (p == 3.0) return a * a * a;
    if (p == 4.0) {
        const double a2 = a * a;
        return a2 * a2;
    }
    if (p == 1.0) return a;
    if (a == 0.0) return p == 0.0 ? 1.0 : 0.0;
    return std::pow(a, p);
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;  // RMS deviation of y about the fitted line
    std::size_t points = 0;
};

/// Ordinary least squares y ~ intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod on a finite interval.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, int max_depth = 15);

/// Integral over [a, inf) via the substitution t -> a + u/(1-u).
QuadratureResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                  double rel_tol = 1e-10);

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace besovlab
