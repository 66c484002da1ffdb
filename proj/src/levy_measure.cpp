#include "besovlab/levy_measure.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace besovlab {

void LevyMeasure1D::validate() const {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, StableMeasure>) {
                require(m.alpha > 0.0 && m.alpha < 2.0, "stable: alpha in (0,2)");
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                require(m.zeta > 0.0 && m.zeta < 3.0, "tempered stable: zeta in (0,3)");
            } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                require(m.alpha1 > 0.0 && m.alpha1 < m.alpha2 && m.alpha2 < 2.0,
                        "blended stable: 0 < alpha1 < alpha2 < 2");
            } else if constexpr (std::is_same_v<T, CustomDensityMeasure>) {
                require(static_cast<bool>(m.density), "custom measure: density required");
            }
        },
        v_);
}

LevyMeasure1D LevyMeasure1D::from_tag(const std::string& tag, double a, double b) {
    if (tag == "point_mass" || tag == "poisson") return point_mass();
    if (tag == "stable") return stable(a);
    if (tag == "tempered_stable" || tag == "tempered") return tempered_stable(a);
    if (tag == "blended" || tag == "blended_stable") return blended(a, b);
    throw std::invalid_argument("unknown measure tag: " + tag);
}

std::string LevyMeasure1D::tag() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) return "point_mass";
            else if constexpr (std::is_same_v<T, StableMeasure>) return "stable";
            else if constexpr (std::is_same_v<T, TemperedStableMeasure>) return "tempered_stable";
            else if constexpr (std::is_same_v<T, BlendedStableMeasure>) return "blended";
            else return m.name;
        },
        v_);
}

std::string LevyMeasure1D::describe() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            char buf[96];
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                return "point_mass";
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                std::snprintf(buf, sizeof(buf), "stable(alpha=%g)", m.alpha);
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                std::snprintf(buf, sizeof(buf), "tempered_stable(zeta=%g)", m.zeta);
            } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                std::snprintf(buf, sizeof(buf), "blended(%g,%g)", m.alpha1, m.alpha2);
            } else {
                return m.name;
            }
            return buf;
        },
        v_);
}

namespace {

// One-sided power integral 2 * Integral_a^b beta^{q-1-alpha}; a < b.
double power_moment(double q, double alpha, double a, double b) {
    const double e = q - alpha;
    if (a == 0.0 && e <= 0.0) return kInf;
    if (std::isinf(b) && e >= 0.0) return kInf;
    if (e == 0.0) return 2.0 * std::log(b / a);
    const double upper = std::isinf(b) ? 0.0 : std::pow(b, e);
    const double lower = (a == 0.0) ? 0.0 : std::pow(a, e);
    return 2.0 * (upper - lower) / e;
}

// Blended measure: piece k of family 1 covers (2k, 2k+1], family 2 covers
// (2k+1, 2k+2]. Sums over pieces intersected with [a, b] with a
// midpoint-integral closure for the far tail.
double blended_sum(const BlendedStableMeasure& m, double q, double a, double b) {
    if (b <= a) return 0.0;
    auto piece = [&](double lo, double hi, double alpha) {
        lo = std::max(lo, a);
        hi = std::min(hi, b);
        if (hi <= lo) return 0.0;
        return 0.5 * power_moment(q, alpha, lo, hi);  // one-sided
    };
    const double tail1_exponent = q - m.alpha1;
    if (std::isinf(b) && tail1_exponent >= 0.0) return kInf;

    CompensatedSum acc;
    const double k_cap = 4096.0;
    const double reach = std::isinf(b) ? 2.0 * (k_cap + 1) : b;
    for (double k = 0.0; 2.0 * k + 1.0 <= reach + 1.0 && k <= k_cap; k += 1.0) {
        acc.add(piece(2.0 * k, 2.0 * k + 1.0, m.alpha1));
        acc.add(piece(2.0 * k + 1.0, 2.0 * k + 2.0, m.alpha2));
    }
    if (std::isinf(b) || b > 2.0 * k_cap) {
        // Far pieces alternate between the two families over unit cells;
        // each family carries half of the far mass to O(1/k^2).
        const double from = std::max(a, 2.0 * k_cap + 2.0);
        const double upper = std::isinf(b) ? kInf : b;
        if (upper > from) {
            acc.add(0.25 * power_moment(q, m.alpha1, from, upper));
            acc.add(0.25 * power_moment(q, m.alpha2, from, upper));
        }
    }
    return 2.0 * acc.value();  // mirrored
}

double custom_moment(const CustomDensityMeasure& m, double q, double a, double b) {
    auto f = [&](double beta) { return abs_pow(beta, q) * m.density(beta); };
    double lo = a;
    CompensatedSum acc;
    if (a == 0.0) {
        // tanh_sinh absorbs the possible algebraic singularity at 0.
        boost::math::quadrature::tanh_sinh<double> ts;
        const double hi0 = std::isinf(b) ? 1.0 : std::min(1.0, b);
        acc.add(2.0 * ts.integrate(f, 0.0, hi0));
        lo = hi0;
    }
    if (std::isinf(b)) {
        acc.add(2.0 * integrate_to_inf(f, std::max(lo, 1e-300), 1e-9).value);
    } else if (b > lo) {
        acc.add(2.0 * integrate(f, lo, b, 1e-10).value);
    }
    return acc.value();
}

}  // namespace

double tail_mass(const LevyMeasure1D& rho, double t) {
    require(t > 0.0, "tail_mass: t must be > 0");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                return t < 1.0 ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                return 2.0 * std::pow(t, -m.alpha) / m.alpha;
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                auto f = [&](double beta) { return std::pow(beta, -m.zeta) * std::exp(-beta); };
                return 2.0 * integrate_to_inf(f, t, 1e-11).value;
            } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                const double v = blended_sum(m, 0.0, t, kInf);
                return v;
            } else {
                return custom_moment(m, 0.0, t, kInf);
            }
        },
        rho.variant());
}

double truncated_moment(const LevyMeasure1D& rho, double q, double a, double b) {
    require(q >= 0.0, "truncated_moment: q must be >= 0");
    require(a >= 0.0 && a < b, "truncated_moment: need 0 <= a < b");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                return (a <= 1.0 && 1.0 <= b) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                return power_moment(q, m.alpha, a, b);
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                const double g = q - m.zeta;
                if (a == 0.0 && g <= -1.0) return kInf;
                auto f = [&](double beta) { return std::pow(beta, g) * std::exp(-beta); };
                CompensatedSum acc;
                double lo = a;
                if (a == 0.0) {
                    boost::math::quadrature::tanh_sinh<double> ts;
                    const double hi0 = std::isinf(b) ? 1.0 : std::min(1.0, b);
                    acc.add(2.0 * ts.integrate(f, 0.0, hi0));
                    lo = hi0;
                }
                if (std::isinf(b)) {
                    acc.add(2.0 * integrate_to_inf(f, lo, 1e-11).value);
                } else if (b > lo) {
                    acc.add(2.0 * integrate(f, lo, b, 1e-11).value);
                }
                return acc.value();
            } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                return blended_sum(m, q, a, b);
            } else {
                return custom_moment(m, q, a, b);
            }
        },
        rho.variant());
}

double xi_integral(const LevyMeasure1D& rho, double q, double xi) {
    require(q > 0.0, "xi_integral: q must be > 0");
    require(xi > 0.0 && xi <= 1.0, "xi_integral: xi in (0,1]");
    if (xi == 1.0) {
        // integrand is identically 1 on the domain
        return std::visit(
            [&](const auto& m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, PointMassAtOne>) return 1.0;
                else { (void)m; return tail_mass(rho, 1.0); }
            },
            rho.variant());
    }
    const double cut = 1.0 / xi;
    return std::pow(xi, q) * truncated_moment(rho, q, 1.0, cut) + tail_mass(rho, cut);
}

double quadratic_cap_integral(const LevyMeasure1D& rho, double x) {
    require(x >= 0.0, "quadratic_cap_integral: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double cut = 1.0 / x;
    return x * x * truncated_moment(rho, 2.0, 0.0, cut) + tail_mass(rho, cut);
}

namespace {

TauIndices analytic_tau(const LevyMeasure1D& rho, double q) {
    TauIndices out;
    out.q = q;
    out.method = TauMethod::Analytic;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                out.tau_upper = out.tau_lower = q;
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                out.tau_upper = out.tau_lower = std::min(q, m.alpha);
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                out.tau_upper = out.tau_lower = q;
            } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                out.tau_upper = std::min(q, m.alpha1);
                out.tau_lower = std::min(q, m.alpha2);
            } else {
                (void)m;
                out.tau_upper = out.tau_lower = kInf;  // resolved by the caller
            }
        },
        rho.variant());
    return out;
}

}  // namespace

TauIndices tau_indices(const LevyMeasure1D& rho, double q, std::optional<TauGridSpec> grid) {
    require(q > 0.0, "tau_indices: q must be > 0");
    const bool is_custom = std::holds_alternative<CustomDensityMeasure>(rho.variant());
    if (!grid && !is_custom) return analytic_tau(rho, q);
    if (!grid) grid = TauGridSpec{};
    require(grid->grid_points >= 40, "tau_indices: numeric grid needs N >= 40");
    require(grid->fit_window >= 4 && grid->fit_window <= grid->grid_points,
            "tau_indices: bad fit window");

    std::vector<double> lx, ly;
    lx.reserve(grid->grid_points);
    for (int i = 1; i <= grid->grid_points; ++i) {
        const double xi = std::exp2(static_cast<double>(-i));
        const double v = xi_integral(rho, q, xi);
        if (v <= 0.0 || !std::isfinite(v)) break;
        lx.push_back(-static_cast<double>(i) * std::numbers::ln2);
        ly.push_back(std::log(v));
    }
    TauIndices out;
    out.q = q;
    out.method = TauMethod::NumericGrid;
    if (lx.size() < static_cast<std::size_t>(grid->fit_window)) {
        out.ambiguous = true;
        out.tau_upper = 0.0;
        out.tau_lower = q;
        return out;
    }
    const std::size_t w = grid->fit_window;
    const std::size_t b = lx.size() - w;
    const LineFit fit = fit_line(std::span(lx).subspan(b, w), std::span(ly).subspan(b, w));
    out.uncertainty = fit.residual_rms;
    if (fit.residual_rms > grid->residual_threshold) {
        out.ambiguous = true;
        double lo = kInf, hi = -kInf;
        for (std::size_t i = b; i + 1 < lx.size(); ++i) {
            const double s = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        out.tau_upper = std::clamp(lo, 0.0, q);
        out.tau_lower = std::clamp(hi, 0.0, q);
        return out;
    }
    const double tau = std::clamp(fit.slope, 0.0, q);
    out.tau_upper = tau;
    out.tau_lower = tau;
    return out;
}

double p_max(const LevyMeasure1D& rho) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                return kInf;
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                return m.alpha;
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                return kInf;
            } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                return m.alpha1;
            } else {
                if (m.p_max_certificate) return *m.p_max_certificate;
                // tail-slope estimate: log tail_mass vs log t
                std::vector<double> lx, ly;
                for (int i = 1; i <= 24; ++i) {
                    const double t = std::exp2(static_cast<double>(i));
                    const double tm = tail_mass(rho, t);
                    if (tm <= 0.0) return kInf;  // bounded support
                    lx.push_back(static_cast<double>(i) * std::numbers::ln2);
                    ly.push_back(std::log(tm));
                }
                const LineFit fit = fit_line(std::span(lx).last(12), std::span(ly).last(12));
                return std::max(0.0, -fit.slope);
            }
        },
        rho.variant());
}

namespace {

double gaussian_abs_moment(double q) {
    // E|Z|^q = 2^{q/2} Gamma((q+1)/2) / sqrt(pi)
    return std::exp2(0.5 * q) * std::exp(std::lgamma(0.5 * (q + 1.0))) /
           std::sqrt(std::numbers::pi);
}

double cf_integral(const std::function<double(double)>& cf, double q, double upper_limit) {
    // Integral of (1 - cf(tau)) / tau^{1+q} over (0, inf); the integrand is
    // ~ tau^{kappa-1-q} at 0 and ~ tau^{-1-q} at infinity.
    boost::math::quadrature::tanh_sinh<double> ts;
    auto small = [&](double tau) {
        if (tau <= 0.0) return 0.0;
        const double deficit = 1.0 - cf(tau);
        const double denom = std::pow(tau, 1.0 + q);
        // below double resolution of the cf the true integrand has already
        // vanished (integrable case) or the origin probe reports +inf
        if (deficit <= 0.0 || denom == 0.0) return 0.0;
        return deficit / denom;
    };
    const double head = ts.integrate(small, 0.0, 1.0);
    double tail;
    if (upper_limit > 1.0) {
        tail = integrate(small, 1.0, upper_limit, 1e-10).value;
    } else {
        tail = integrate_to_inf(small, 1.0, 1e-10).value;
    }
    return head + tail;
}

}  // namespace

double cf_moment_constant(double q) {
    require(q > 0.0 && q < 2.0, "cf moment formula: q in (0,2)");
    static std::map<double, double> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }
    auto gaussian_cf = [](double tau) { return std::exp(-0.5 * tau * tau); };
    const double c = gaussian_abs_moment(q) / cf_integral(gaussian_cf, q, 0.0);
    std::lock_guard<std::mutex> lock(mutex);
    cache[q] = c;
    return c;
}

double symmetric_moment_via_cf(const std::function<double(double)>& cf, double q,
                               const CfMomentSpec& spec) {
    require(q > 0.0 && q < 2.0, "symmetric_moment_via_cf: q in (0,2)");
    // Detect a non-integrable origin: the moment is infinite when
    // (1 - cf) does not vanish fast enough at 0.
    double probe_prev = 0.0;
    for (int k = 2; k <= 4; ++k) {
        const double eps = std::pow(10.0, -2.0 * k);
        const double probe = integrate([&](double t) { return (1.0 - cf(t)) / std::pow(t, 1.0 + q); },
                                       eps, 1e-2, 1e-8)
                                 .value;
        if (k > 2 && probe > 2.0 * probe_prev + 1.0) return kInf;
        probe_prev = probe;
    }
    return cf_moment_constant(q) * cf_integral(cf, q, spec.upper_limit);
}

}  // namespace besovlab
