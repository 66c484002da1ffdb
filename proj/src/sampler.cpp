#include "besovlab/sampler.hpp"

#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>

#include "besovlab/stable_analysis.hpp"

namespace besovlab {

namespace {

// Marsaglia-Tsang, extended to shape < 1 by the boosting trick.
double sample_gamma(double shape, Xoshiro256& rng) {
    if (shape < 1.0) {
        const double u = rng.uniform();
        return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double tempered_stable_increment(double zeta, double dt, Xoshiro256& rng) {
    if (zeta < 1.0) {
        // Finite total mass 2 Gamma(1-zeta): symmetric compound Poisson
        // with Gamma(1-zeta, 1) jump sizes.
        const double mass = 2.0 * std::tgamma(1.0 - zeta);
        const std::uint64_t jumps = rng.poisson(dt * mass);
        double x = 0.0;
        for (std::uint64_t i = 0; i < jumps; ++i) {
            const double j = sample_gamma(1.0 - zeta, rng);
            x += (rng.uniform() < 0.5 ? -j : j);
        }
        return x;
    }
    // Shot noise above a cutoff with exponential-tilting rejection, plus a
    // Gaussian closure for the small jumps (their variance is matched).
    const double alpha_t = zeta - 1.0;
    double eps = 1e-3;
    if (alpha_t > 0.0) {
        const double budget = 256.0;
        eps = std::max(eps, std::pow(2.0 * dt / (budget * alpha_t), 1.0 / alpha_t));
        eps = std::min(eps, 0.25);
    }
    double x = 0.0;
    if (alpha_t == 0.0) {
        const double mass = 2.0 * boost::math::expint(1, eps);
        const std::uint64_t proposals = rng.poisson(dt * mass);
        for (std::uint64_t i = 0; i < proposals; ++i) {
            // density e^{-b}/b on (eps, inf); propose b = eps + Exp(1) and
            // accept with probability eps/b.
            double j = 0.0;
            do {
                j = eps + rng.exponential();
            } while (rng.uniform() * j > eps);
            x += (rng.uniform() < 0.5 ? -j : j);
        }
    } else {
        const double rate = 2.0 * dt * std::pow(eps, -alpha_t) / alpha_t;
        const std::uint64_t proposals = rng.poisson(rate);
        for (std::uint64_t i = 0; i < proposals; ++i) {
            const double j = eps * std::pow(rng.uniform(), -1.0 / alpha_t);
            if (rng.uniform() <= std::exp(-j)) {
                x += (rng.uniform() < 0.5 ? -j : j);
            }
        }
    }
    // Small-jump variance 2 dt Integral_0^eps b^{2-zeta} e^{-b} db.
    const double var =
        2.0 * dt * integrate([zeta](double b) { return std::pow(b, 2.0 - zeta) * std::exp(-b); },
                             0.0, eps, 1e-8)
                       .value;
    return x + std::sqrt(var) * rng.normal();
}

}  // namespace

std::vector<double> sample_rotinv_stable_increment(std::uint64_t n, double alpha, double dt,
                                                   Xoshiro256& rng) {
    require(n >= 1, "rotinv stable: n >= 1");
    require(alpha > 0.0 && alpha < 2.0, "rotinv stable: alpha in (0,2)");
    require(dt > 0.0, "rotinv stable: dt > 0");
    // X = c sqrt(W) Z with W positive (alpha/2)-stable; the Laplace
    // transform gives cf exp(-(c^2/2)^{alpha/2} |u|^alpha), so
    // c = sqrt(2) dt^{1/alpha} matches exp(-dt |u|^alpha).
    const double w = sample_positive_stable(0.5 * alpha, rng);
    const double c = std::numbers::sqrt2 * std::pow(dt, 1.0 / alpha) * std::sqrt(w);
    std::vector<double> x(n);
    for (auto& xi : x) xi = c * rng.normal();
    return x;
}

double sample_catalog_increment(const LevyMeasure1D& rho, double dt, Xoshiro256& rng) {
    require(dt > 0.0, "catalog increment: dt > 0");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                const double lam = 0.5 * dt;  // half the unit mass per sign
                return static_cast<double>(rng.poisson(lam)) -
                       static_cast<double>(rng.poisson(lam));
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                const double c_alpha = stable_constants(m.alpha, 1).c_alpha;
                const double scale = std::pow(2.0 * dt * c_alpha / m.alpha, 1.0 / m.alpha);
                return scale * sample_sym_stable(m.alpha, rng);
            } else if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                return tempered_stable_increment(m.zeta, dt, rng);
            } else {
                throw std::invalid_argument("sampler: unsupported driving measure " +
                                            rho.describe());
            }
        },
        rho.variant());
}

PathSample sample_hedgehog_path(const HedgehogSpec& spec, const IndexEnumeration& trunc,
                                const std::vector<double>& times, std::uint64_t seed) {
    spec.validate();
    trunc.validate();
    require(spec.mode == HedgehogSpec::Mode::Wavelet,
            "sample_hedgehog_path: wavelet-basis mode required");
    require(!times.empty(), "sample_hedgehog_path: need at least one time");
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] > times[i - 1], "sample_hedgehog_path: times must increase");

    const std::uint64_t n = trunc.size();
    PathSample path;
    path.times = times;
    path.seed = seed;
    path.model = PathModel::Hedgehog;
    path.coeffs.assign(times.size(), std::vector<double>(n, 0.0));

    // Per-coordinate streams keep the output independent of scheduling.
    std::uint64_t k = 0;
    trunc.for_each([&](const WaveletIndex&) {
        double a;
        if (!spec.wavelet_a.empty()) {
            a = k < spec.wavelet_a.size() ? spec.wavelet_a[k] : 0.0;
        } else {
            a = spec.uniform_a;
        }
        if (a != 0.0) {
            Xoshiro256 rng(seed, k);
            double value = 0.0;
            double prev_t = 0.0;
            for (std::size_t ti = 0; ti < times.size(); ++ti) {
                const double dt = times[ti] - prev_t;
                prev_t = times[ti];
                if (dt > 0.0) value += a * sample_catalog_increment(spec.rho, dt, rng);
                path.coeffs[ti][k] = value;
            }
        }
        ++k;
        return true;
    });
    return path;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

NormCurve norm_curve_of_path(const PathSample& path, const BesovParams& params,
                             const IndexEnumeration& trunc,
                             const std::vector<std::uint64_t>& n_grid) {
    require(!path.coeffs.empty(), "norm_curve_of_path: empty path");
    const std::vector<double>& coords = path.coeffs.back();
    require(n_grid.empty() || n_grid.back() <= coords.size(),
            "norm_curve_of_path: grid beyond truncation");
    std::vector<double> wp;
    wp.reserve(coords.size());
    trunc.for_each([&](const WaveletIndex& idx) {
        if (wp.size() >= coords.size()) return false;
        wp.push_back(abs_pow(weight(params, idx), params.p));
        return true;
    });
    NormCurve curve;
    curve.replicas = 1;
    curve.n = n_grid;
    CompensatedSum acc;
    std::size_t gi = 0;
    for (std::size_t k = 0; k < coords.size() && gi < n_grid.size(); ++k) {
        acc.add(wp[k] * abs_pow(coords[k], params.p));
        if (k + 1 == n_grid[gi]) {
            const double v = std::pow(acc.value(), 1.0 / params.p);
            curve.median.push_back(v);
            curve.q25.push_back(v);
            curve.q75.push_back(v);
            ++gi;
        }
    }
    return curve;
}

NormCurve empirical_norm_curve(const SimulationConfig& config, const HedgehogSpec* spec) {
    config.params.validate();
    config.trunc.validate();
    require(config.replicas >= 1, "empirical_norm_curve: replicas >= 1");
    require(config.model == PathModel::CanonicalStable || spec != nullptr,
            "empirical_norm_curve: hedgehog model needs a spec");

    const std::uint64_t n_max = config.trunc.size();
    std::vector<std::uint64_t> grid = config.n_grid;
    if (grid.empty()) {
        for (std::uint64_t n = 64; n < n_max; n *= 2) grid.push_back(n);
        grid.push_back(n_max);
    }
    require(grid.back() <= n_max, "empirical_norm_curve: grid beyond truncation");

    std::vector<double> wp;
    wp.reserve(n_max);
    config.trunc.for_each([&](const WaveletIndex& idx) {
        wp.push_back(abs_pow(weight(config.params, idx), config.params.p));
        return true;
    });

    std::vector<double> a_coeff;
    if (config.model == PathModel::Hedgehog) {
        std::uint64_t k = 0;
        config.trunc.for_each([&](const WaveletIndex&) {
            double a;
            if (spec->wavelet_a.empty()) {
                a = spec->uniform_a;
            } else {
                a = k < spec->wavelet_a.size() ? spec->wavelet_a[k] : 0.0;
            }
            a_coeff.push_back(a);
            ++k;
            return true;
        });
    }

    // values[g][replica]
    std::vector<std::vector<double>> values(grid.size(),
                                            std::vector<double>(config.replicas, 0.0));
    std::vector<double> coords;
    for (std::uint64_t rep = 0; rep < config.replicas; ++rep) {
        Xoshiro256 rng(config.seed, rep);
        if (config.model == PathModel::CanonicalStable) {
            coords = sample_rotinv_stable_increment(n_max, config.alpha, 1.0, rng);
        } else {
            coords.assign(n_max, 0.0);
            for (std::uint64_t k = 0; k < n_max; ++k) {
                if (a_coeff[k] != 0.0) {
                    coords[k] = a_coeff[k] * sample_catalog_increment(spec->rho, 1.0, rng);
                }
            }
        }
        CompensatedSum acc;
        std::size_t gi = 0;
        for (std::uint64_t k = 0; k < n_max && gi < grid.size(); ++k) {
            acc.add(wp[k] * abs_pow(coords[k], config.params.p));
            if (k + 1 == grid[gi]) {
                values[gi][rep] = std::pow(acc.value(), 1.0 / config.params.p);
                ++gi;
            }
        }
    }

    NormCurve curve;
    curve.n = grid;
    curve.replicas = config.replicas;
    for (auto& v : values) {
        std::sort(v.begin(), v.end());
        curve.median.push_back(quantile_sorted(v, 0.5));
        curve.q25.push_back(quantile_sorted(v, 0.25));
        curve.q75.push_back(quantile_sorted(v, 0.75));
    }
    return curve;
}

DivergenceDiagnostic divergence_diagnostic(const NormCurve& curve) {
    require(curve.n.size() >= 5, "divergence_diagnostic: need >= 5 grid points");
    require(static_cast<double>(curve.n.back()) >= 100.0 * static_cast<double>(curve.n.front()),
            "divergence_diagnostic: grid must span >= 2 decades");
    DivergenceDiagnostic out;
    const bool all_zero =
        std::all_of(curve.median.begin(), curve.median.end(), [](double v) { return v == 0.0; });
    if (all_zero) {
        out.verdict = Diagnostic::Stabilising;
        out.slope = 0.0;
        return out;
    }
    std::vector<double> lx, ly;
    for (std::size_t i = curve.n.size() / 2; i < curve.n.size(); ++i) {
        if (curve.median[i] <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(curve.n[i])));
        ly.push_back(std::log(curve.median[i]));
    }
    if (lx.size() < 2) {
        out.verdict = Diagnostic::Stabilising;
        return out;
    }
    out.slope = fit_line(lx, ly).slope;
    if (out.slope < 0.02) {
        out.verdict = Diagnostic::Stabilising;
    } else if (out.slope > 0.1) {
        out.verdict = Diagnostic::Growing;
    } else {
        out.verdict = Diagnostic::Ambiguous;
    }
    return out;
}

}  // namespace besovlab
