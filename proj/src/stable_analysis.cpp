#include "besovlab/stable_analysis.hpp"

#include <algorithm>
#include <numbers>
#include <thread>

#include "besovlab/rng.hpp"

namespace besovlab {

void StableRun::validate() const {
    params.validate();
    trunc.validate();
    require(alpha > 0.0 && alpha < 2.0, "StableRun: alpha in (0,2)");
    require(mc_samples >= 16, "StableRun: need at least 16 MC samples");
    require(workers >= 1, "StableRun: workers >= 1");
    require(trunc.d == params.d, "StableRun: dimension mismatch");
}

StableConstants stable_constants(double alpha, std::uint64_t n) {
    require(alpha > 0.0 && alpha < 2.0, "stable_constants: alpha in (0,2)");
    require(n >= 1, "stable_constants: n >= 1");
    StableConstants out;
    if (std::abs(alpha - 1.0) <= 1e-6) {
        out.c_alpha = std::numbers::pi / 2.0;
    } else {
        // -alpha cos(alpha pi/2) Gamma(-alpha), written through the
        // reflection formula; pole-free on (0,2).
        out.c_alpha = alpha * std::numbers::pi /
                      (2.0 * std::sin(0.5 * std::numbers::pi * alpha) * std::tgamma(1.0 + alpha));
    }
    const double nn = static_cast<double>(n);
    out.r_n = std::exp(std::lgamma(0.5) + std::lgamma(0.5 * (nn + alpha)) - std::lgamma(0.5 * nn) -
                       std::lgamma(0.5 * (1.0 + alpha)));
    return out;
}

double sphere_coordinate_moment(std::uint64_t n, double p) {
    const double nn = static_cast<double>(n);
    return std::exp(std::lgamma(0.5 * nn) + std::lgamma(0.5 * (1.0 + p)) - std::lgamma(0.5) -
                    std::lgamma(0.5 * (nn + p)));
}

SphereSampleReport sphere_sample(std::uint64_t n, std::uint64_t count, std::uint64_t seed,
                                 const std::vector<double>& probe_orders) {
    require(n >= 1, "sphere_sample: n >= 1");
    require(count >= 2, "sphere_sample: count >= 2");
    SphereSampleReport report;
    report.n = n;
    report.count = count;
    report.probe_orders = probe_orders;

    const std::size_t np = probe_orders.size();
    std::vector<CompensatedSum> sums(np), squares(np);
    Xoshiro256 rng(seed);
    std::vector<double> g(n);
    for (std::uint64_t it = 0; it < count; ++it) {
        double s = 0.0;
        for (std::uint64_t k = 0; k < n; ++k) {
            g[k] = rng.normal();
            s += g[k] * g[k];
        }
        const double inv = 1.0 / std::sqrt(s);
        const double coord = std::abs(g[0] * inv);  // first coordinate probe
        for (std::size_t i = 0; i < np; ++i) {
            const double v = abs_pow(coord, probe_orders[i]);
            sums[i].add(v);
            squares[i].add(v * v);
        }
    }
    for (std::size_t i = 0; i < np; ++i) {
        const double mean = sums[i].value() / static_cast<double>(count);
        const double var =
            std::max(0.0, squares[i].value() / static_cast<double>(count) - mean * mean);
        report.moment_estimates.push_back(mean);
        report.moment_stderr.push_back(std::sqrt(var / static_cast<double>(count)));
        report.moment_exact.push_back(sphere_coordinate_moment(n, probe_orders[i]));
    }
    return report;
}

namespace {

struct GridStats {
    // Accumulated statistics of Y = X^{alpha/p} and the control variate X.
    double sy = 0, sy2 = 0, sx = 0, sx2 = 0, sxy = 0;
    void add(double x, double y) {
        sy += y;
        sy2 += y * y;
        sx += x;
        sx2 += x * x;
        sxy += x * y;
    }
    void merge(const GridStats& o) {
        sy += o.sy;
        sy2 += o.sy2;
        sx += o.sx;
        sx2 += o.sx2;
        sxy += o.sxy;
    }
};

struct CvEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Control-variate adjusted mean of Y with E[X] known exactly.
CvEstimate cv_mean(const GridStats& g, double n_samples, double ex_exact) {
    const double n = n_samples;
    const double my = g.sy / n, mx = g.sx / n;
    const double vy = std::max(0.0, g.sy2 / n - my * my);
    const double vx = std::max(0.0, g.sx2 / n - mx * mx);
    const double cxy = g.sxy / n - mx * my;
    double beta = 0.0;
    if (vx > 0.0) beta = cxy / vx;
    CvEstimate out;
    out.mean = my - beta * (mx - ex_exact);
    const double resid_var = std::max(0.0, vy - (vx > 0.0 ? cxy * cxy / vx : 0.0));
    out.stderr_ = std::sqrt(resid_var / n);
    return out;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t n_max) {
    std::vector<std::uint64_t> grid;
    for (std::uint64_t n = 64; n < n_max; n *= 2) grid.push_back(n);
    grid.push_back(n_max);
    return grid;
}

// Weighted p-th powers along the enumeration prefix.
std::vector<double> weight_powers(const BesovParams& params, const IndexEnumeration& trunc,
                                  std::uint64_t n_max) {
    std::vector<double> w;
    w.reserve(n_max);
    trunc.for_each([&](const WaveletIndex& idx) {
        if (w.size() >= n_max) return false;
        w.push_back(abs_pow(weight(params, idx), params.p));
        return true;
    });
    return w;
}

// One pass of the sphere kernel: per grid point n, statistics of
// X_n = sum_{k<n} W_k |xi_k|^p over uniform sphere samples in dimension n
// (prefixes of one Gaussian draw, normalized per prefix).
std::vector<GridStats> run_sphere_kernel(const std::vector<double>& wp,
                                         const std::vector<std::uint64_t>& grid, double p,
                                         double exponent, std::uint64_t samples,
                                         std::uint64_t seed, unsigned workers) {
    const std::size_t n_grid = grid.size();
    std::vector<std::vector<GridStats>> per_worker(workers, std::vector<GridStats>(n_grid));

    auto body = [&](unsigned wi, std::uint64_t count) {
        Xoshiro256 rng(seed, wi);
        std::vector<GridStats>& stats = per_worker[wi];
        const std::uint64_t n_max = grid.back();
        for (std::uint64_t it = 0; it < count; ++it) {
            double s2 = 0.0, u = 0.0;
            std::size_t gi = 0;
            for (std::uint64_t k = 0; k < n_max; ++k) {
                const double g = rng.normal();
                s2 += g * g;
                u += wp[k] * abs_pow(g, p);
                if (gi < grid.size() && k + 1 == grid[gi]) {
                    const double x = u / std::pow(s2, 0.5 * p);
                    stats[gi].add(x, std::pow(x, exponent));
                    ++gi;
                }
            }
        }
    };

    if (workers == 1) {
        body(0, samples);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t base = samples / workers, extra = samples % workers;
        for (unsigned wi = 0; wi < workers; ++wi) {
            threads.emplace_back(body, wi, base + (wi < extra ? 1 : 0));
        }
        for (auto& t : threads) t.join();
    }

    std::vector<GridStats> merged(n_grid);
    for (unsigned wi = 0; wi < workers; ++wi) {
        for (std::size_t i = 0; i < n_grid; ++i) merged[i].merge(per_worker[wi][i]);
    }
    return merged;
}

struct SigmaKernelResult {
    std::vector<std::uint64_t> grid;
    std::vector<double> a_n;       // prefix weight power sums
    std::vector<CvEstimate> mean;  // CV-adjusted E (X)^{alpha/p} under the unit measure
};

SigmaKernelResult sigma_kernel(const StableRun& run) {
    run.validate();
    const std::uint64_t n_max = std::min<std::uint64_t>(run.index_budget, run.trunc.size());
    require(n_max >= 1, "sigma kernel: empty truncation");
    const std::vector<double> wp = weight_powers(run.params, run.trunc, n_max);
    SigmaKernelResult out;
    out.grid = geometric_grid(n_max);

    CompensatedSum acc;
    std::size_t gi = 0;
    for (std::uint64_t k = 0; k < n_max; ++k) {
        acc.add(wp[k]);
        if (gi < out.grid.size() && k + 1 == out.grid[gi]) {
            out.a_n.push_back(acc.value());
            ++gi;
        }
    }

    const double exponent = run.alpha / run.params.p;
    const auto stats = run_sphere_kernel(wp, out.grid, run.params.p, exponent, run.mc_samples,
                                         run.seed, run.workers);
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        const double ex = out.a_n[i] * sphere_coordinate_moment(out.grid[i], run.params.p);
        out.mean.push_back(cv_mean(stats[i], static_cast<double>(run.mc_samples), ex));
    }
    return out;
}

}  // namespace

FunctionalCurve sigma_n(const StableRun& run) {
    run.validate();
    require(run.params.p != run.alpha, "sigma_n: p = alpha is outside the functional's domain");
    require(run.params.p > run.alpha,
            "sigma_n: requires p > alpha (use lambda_stat_n for p in (1,2))");
    const auto kernel = sigma_kernel(run);
    const double c_alpha = stable_constants(run.alpha, 1).c_alpha;
    const double pref = run.params.p / (c_alpha * (run.params.p - run.alpha));
    const double exponent = run.alpha / run.params.p;

    FunctionalCurve curve;
    curve.n = kernel.grid;
    for (std::size_t i = 0; i < kernel.grid.size(); ++i) {
        const double r_n = stable_constants(run.alpha, kernel.grid[i]).r_n;
        const double mp = sphere_coordinate_moment(kernel.grid[i], run.params.p);
        curve.value.push_back(pref * r_n * kernel.mean[i].mean);
        curve.mc_stderr.push_back(pref * r_n * kernel.mean[i].stderr_);
        curve.upper.push_back(pref * r_n * std::pow(kernel.a_n[i] * mp, exponent));
        curve.lower.push_back(pref * std::pow(kernel.a_n[i], exponent));
        curve.weight_power_sum.push_back(kernel.a_n[i]);
    }
    return curve;
}

FunctionalCurve lambda_stat_n(const StableRun& run) {
    run.validate();
    require(run.params.p > 1.0 && run.params.p < 2.0, "lambda_stat_n: requires p in (1,2)");
    const auto kernel = sigma_kernel(run);
    const double c_alpha = stable_constants(run.alpha, 1).c_alpha;
    const double pref = 2.0 / (c_alpha * (2.0 - run.alpha));
    const double exponent = run.alpha / run.params.p;

    FunctionalCurve curve;
    curve.n = kernel.grid;
    for (std::size_t i = 0; i < kernel.grid.size(); ++i) {
        const double r_n = stable_constants(run.alpha, kernel.grid[i]).r_n;
        const double mp = sphere_coordinate_moment(kernel.grid[i], run.params.p);
        curve.value.push_back(pref * r_n * kernel.mean[i].mean);
        curve.mc_stderr.push_back(pref * r_n * kernel.mean[i].stderr_);
        // Necessity lower bounds: concave Jensen for p >= alpha, convex
        // Jensen (through the coordinate moment) for p < alpha.
        if (run.params.p >= run.alpha) {
            curve.lower.push_back(pref * std::pow(kernel.a_n[i], exponent));
        } else {
            curve.lower.push_back(pref * r_n * std::pow(kernel.a_n[i] * mp, exponent));
        }
        curve.upper.push_back(std::numeric_limits<double>::quiet_NaN());
        curve.weight_power_sum.push_back(kernel.a_n[i]);
    }
    return curve;
}

FunctionalCurve upsilon_n(const StableRun& run) {
    run.validate();
    require(run.params.p >= 2.0, "upsilon_n: requires p >= 2");
    const double p = run.params.p, alpha = run.alpha;
    const std::uint64_t n_max = std::min<std::uint64_t>(run.index_budget, run.trunc.size());
    const std::vector<double> wp = weight_powers(run.params, run.trunc, n_max);
    const std::vector<std::uint64_t> grid = geometric_grid(n_max);
    const double c_alpha = stable_constants(alpha, 1).c_alpha;
    const double pref = std::pow(alpha / (c_alpha * (2.0 - alpha)), 0.5 * p);
    const double inner_exp = (alpha - 2.0) / p;

    FunctionalCurve curve;
    curve.n = grid;

    CompensatedSum a_acc;
    std::size_t gi = 0;
    std::vector<double> a_n;
    for (std::uint64_t k = 0; k < n_max; ++k) {
        a_acc.add(wp[k]);
        if (gi < grid.size() && k + 1 == grid[gi]) {
            a_n.push_back(a_acc.value());
            ++gi;
        }
    }

    // Per-coordinate means of xi_k^2 X^{(alpha-2)/p}, four batches for a
    // spread-based standard error.
    constexpr int kBatches = 4;
    for (std::size_t g_i = 0; g_i < grid.size(); ++g_i) {
        const std::uint64_t n = grid[g_i];
        std::vector<double> batch_values(kBatches, 0.0);
        Xoshiro256 rng(run.seed, 1000 + g_i);
        const std::uint64_t per_batch = std::max<std::uint64_t>(8, run.mc_samples / kBatches);
        std::vector<double> coord_acc(n);
        std::vector<double> g(n);
        for (int b = 0; b < kBatches; ++b) {
            std::fill(coord_acc.begin(), coord_acc.end(), 0.0);
            for (std::uint64_t it = 0; it < per_batch; ++it) {
                double s2 = 0.0, u = 0.0;
                for (std::uint64_t k = 0; k < n; ++k) {
                    g[k] = rng.normal();
                    s2 += g[k] * g[k];
                    u += wp[k] * abs_pow(g[k], p);
                }
                const double x = u / std::pow(s2, 0.5 * p);
                const double xe = std::pow(x, inner_exp);
                for (std::uint64_t k = 0; k < n; ++k) {
                    coord_acc[k] += (g[k] * g[k] / s2) * xe;
                }
            }
            const double r_n = stable_constants(alpha, n).r_n;
            CompensatedSum total;
            for (std::uint64_t k = 0; k < n; ++k) {
                total.add(wp[k] *
                          std::pow(r_n * coord_acc[k] / static_cast<double>(per_batch), 0.5 * p));
            }
            batch_values[b] = pref * total.value();
        }
        double mean = 0.0;
        for (double v : batch_values) mean += v;
        mean /= kBatches;
        double var = 0.0;
        for (double v : batch_values) var += (v - mean) * (v - mean);
        var /= (kBatches - 1);

        const double r_n = stable_constants(alpha, n).r_n;
        const double mp = sphere_coordinate_moment(n, p);
        curve.value.push_back(mean);
        curve.mc_stderr.push_back(std::sqrt(var / kBatches));
        curve.upper.push_back(pref * std::pow(r_n, 0.5 * p) * std::pow(a_n[g_i], 0.5 * alpha) *
                              std::pow(mp, 0.5 * alpha));
        curve.lower.push_back(std::numeric_limits<double>::quiet_NaN());
        curve.weight_power_sum.push_back(a_n[g_i]);
    }
    return curve;
}

TailProbabilityCurve tail_probability(const StableRun& run, double radius) {
    run.validate();
    require(radius > 0.0, "tail_probability: R > 0");
    require(run.params.p > run.alpha, "tail_probability: requires p > alpha");
    const auto kernel = sigma_kernel(run);
    const double p = run.params.p, alpha = run.alpha;
    const double c_alpha = stable_constants(alpha, 1).c_alpha;
    const double pref_sigma = p / (c_alpha * (p - alpha));
    const double r_pow = std::pow(radius, -alpha);

    TailProbabilityCurve out;
    out.radius = radius;
    out.n = kernel.grid;
    for (std::size_t i = 0; i < kernel.grid.size(); ++i) {
        const double r_n = stable_constants(alpha, kernel.grid[i]).r_n;
        const double sigma = pref_sigma * r_n * kernel.mean[i].mean;
        out.sigma.push_back(sigma);
        out.direct.push_back(r_pow * (r_n / c_alpha) * kernel.mean[i].mean);
        out.via_sigma.push_back(r_pow * ((p - alpha) / p) * sigma);
    }
    return out;
}

StableVerdict stable_verdict(const BesovParams& params, double alpha) {
    params.validate();
    require(alpha > 0.0 && alpha < 2.0, "stable_verdict: alpha in (0,2)");
    const RegionVerdict region = classify_point(params);
    require(region.in_E_p, "stable_verdict: (s,w) must lie in E_p");
    StableVerdict out;
    out.region = region;
    out.induced = params.s < -0.5 * params.d && params.w < -static_cast<double>(params.d) / params.p;
    out.reason = out.induced
                     ? "s < -d/2 and w < -d/p: the truncated functionals converge"
                     : "outside s < -d/2, w < -d/p: the weight power sum diverges";
    return out;
}

DivergenceCertificate sigma_divergence_certificate(const BesovParams& params, double alpha,
                                                   double target, std::uint64_t max_work) {
    params.validate();
    require(alpha > 0.0 && alpha < 2.0, "divergence certificate: alpha in (0,2)");
    const double p = params.p;
    require(p > alpha, "divergence certificate: requires p > alpha");
    const double c_alpha = stable_constants(alpha, 1).c_alpha;
    const double pref = p / (c_alpha * (p - alpha));
    const double exponent = alpha / p;
    const int d = params.d;

    DivergenceCertificate cert;
    cert.target = target;
    const double kappa = p * params.w;
    const double growth = p * scale_exponent(params) + d;  // log2 level-sum ratio

    auto lower_of = [&](double a) { return pref * std::pow(a, exponent); };

    if (kappa >= -d) {
        // Divergence carried by the translation direction: grow the
        // level-0 ring range geometrically with closed-form range sums.
        cert.direction = "w (translation sums diverge)";
        const double genders = static_cast<double>(gender_count(d, 0));
        double R = 64.0;
        std::uint64_t work = 0;
        while (work < max_work) {
            const LatticeSumValue s = lattice_sum_rings_to(d, 0, kappa, R);
            const double a = genders * s.value;
            cert.levels.push_back(0);
            cert.virtual_indices.push_back(genders * std::pow(2.0 * R + 1.0, d));
            cert.weight_power_sum.push_back(a);
            cert.lower_bound.push_back(lower_of(a));
            ++work;
            if (lower_of(a) >= target) {
                cert.crossed = true;
                break;
            }
            if (R > 1e280) break;
            R *= 4.0;
        }
        return cert;
    }

    if (growth < 0.0) {
        // Summable weights: record the saturating bound, no crossing.
        cert.direction = "none (weight power sum is finite)";
        CompensatedSum acc;
        for (int j = 0; j <= 40; ++j) {
            acc.add(level_weight_power_sum(params, p, j).value);
        }
        cert.levels.push_back(40);
        cert.virtual_indices.push_back(std::pow(2.0, 40.0 * d));
        cert.weight_power_sum.push_back(acc.value());
        cert.lower_bound.push_back(lower_of(acc.value()));
        cert.crossed = lower_of(acc.value()) >= target;
        return cert;
    }

    // Divergence carried by the scale direction: accumulate per-level
    // full-lattice sums.
    cert.direction = "s (scale sums diverge)";
    CompensatedSum acc;
    std::uint64_t work = 0;
    int j = 0;
    double covered = 0.0;
    while (work < max_work) {
        acc.add(level_weight_power_sum(params, p, j).value);
        covered += static_cast<double>(gender_count(d, j)) *
                   std::pow(2.0 * 8.0 * std::exp2(static_cast<double>(j)) + 1.0, d);
        const double a = acc.value();
        if (j >= 4 && (j & 3) == 0) {  // record every fourth level
            cert.levels.push_back(j);
            cert.virtual_indices.push_back(covered);
            cert.weight_power_sum.push_back(a);
            cert.lower_bound.push_back(lower_of(a));
        }
        ++work;
        if (lower_of(a) >= target) {
            cert.levels.push_back(j);
            cert.virtual_indices.push_back(covered);
            cert.weight_power_sum.push_back(a);
            cert.lower_bound.push_back(lower_of(a));
            cert.crossed = true;
            break;
        }
        ++j;
        if (j > 100000) break;
    }
    return cert;
}

}  // namespace besovlab
