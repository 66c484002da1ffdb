#include "besovlab/hedgehog.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

namespace besovlab {

void HedgehogSpec::validate() const {
    if (mode == Mode::Abstract) {
        require(norm_power_gamma.has_value() || !explicit_norms.empty(),
                "hedgehog spec: abstract mode needs a norm family");
    } else {
        trunc.validate();
    }
}

namespace {

constexpr std::uint64_t kFamilyBudget = 1 << 14;

// Materialised |a_k| family (coefficients, not norms).
std::vector<double> coefficient_family(const HedgehogSpec& spec, const BesovParams& params,
                                       std::uint64_t budget = kFamilyBudget) {
    std::vector<double> a;
    if (spec.mode == HedgehogSpec::Mode::Abstract) {
        if (!spec.explicit_a.empty()) return spec.explicit_a;
        if (spec.a_power_gamma) {
            for (std::uint64_t k = 1; k <= budget; ++k)
                a.push_back(std::pow(static_cast<double>(k), -*spec.a_power_gamma));
            return a;
        }
        if (!spec.explicit_norms.empty()) return spec.explicit_norms;
        for (std::uint64_t k = 1; k <= budget; ++k)
            a.push_back(std::pow(static_cast<double>(k), -*spec.norm_power_gamma));
        return a;
    }
    if (!spec.wavelet_a.empty()) return spec.wavelet_a;
    std::uint64_t k = 0;
    spec.trunc.for_each([&](const WaveletIndex& idx) {
        if (a.size() >= budget) return false;
        ++k;
        if (spec.b_power_gamma) {
            a.push_back(std::pow(static_cast<double>(k), -*spec.b_power_gamma) /
                        weight(params, idx));
        } else {
            a.push_back(std::abs(spec.uniform_a));
        }
        return true;
    });
    return a;
}

// Materialised Besov norm family ||a_k e_k||.
std::vector<double> norm_family(const HedgehogSpec& spec, const BesovParams& params,
                                std::uint64_t budget = kFamilyBudget) {
    std::vector<double> norms;
    if (spec.mode == HedgehogSpec::Mode::Abstract) {
        if (!spec.explicit_norms.empty()) return spec.explicit_norms;
        for (std::uint64_t k = 1; k <= budget; ++k)
            norms.push_back(std::pow(static_cast<double>(k), -*spec.norm_power_gamma));
        return norms;
    }
    std::uint64_t k = 0;
    spec.trunc.for_each([&](const WaveletIndex& idx) {
        if (norms.size() >= budget) return false;
        const double w = weight(params, idx);
        double av;
        if (!spec.wavelet_a.empty()) {
            if (k >= spec.wavelet_a.size()) return false;
            av = std::abs(spec.wavelet_a[k]);
        } else if (spec.b_power_gamma) {
            av = std::pow(static_cast<double>(k + 1), -*spec.b_power_gamma) / w;
        } else {
            av = std::abs(spec.uniform_a);
        }
        ++k;
        norms.push_back(av * w);
        return true;
    });
    return norms;
}

bool family_is_infinite_rule(const HedgehogSpec& spec) {
    if (spec.mode == HedgehogSpec::Mode::Abstract)
        return spec.explicit_a.empty() && spec.explicit_norms.empty();
    return spec.wavelet_a.empty();
}

// l^e membership of a power family k^{-g}: finite iff g * e > 1.
bool power_in_ell(double g, double e) { return g * e > 1.0; }

TrendFlag partial_sum_trend(const std::vector<double>& checkpoints) {
    if (checkpoints.size() < 3) return TrendFlag::Undetermined;
    const double total = checkpoints.back();
    if (total == 0.0) return TrendFlag::Converges;
    std::vector<double> inc;
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        inc.push_back(checkpoints[i] - checkpoints[i - 1]);
    const double last = inc.back();
    const double prev = inc[inc.size() - 2];
    if (last <= 1e-6 * total) return TrendFlag::Converges;
    if (last < 0.6 * prev) return TrendFlag::Converges;
    if (last >= 0.95 * prev) return TrendFlag::Diverges;
    return TrendFlag::Undetermined;
}

}  // namespace

AdmissibilityReport admissibility(const HedgehogSpec& spec) {
    spec.validate();
    AdmissibilityReport report;

    // The coefficient condition is norm-free; parameters only enter via
    // the b rule, which carries its own space.
    BesovParams params = spec.wavelet_params.value_or(BesovParams{2.0, 0.0, 0.0, spec.trunc.d});
    params.d = spec.trunc.d;
    const std::vector<double> a = coefficient_family(spec, params);

    const bool all_zero = std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
    if (all_zero) {
        report.verdict = Admissibility::Admissible;
        report.criterion = "zero coefficients";
        return report;
    }
    const bool finite_family = !family_is_infinite_rule(spec) && a.size() < kFamilyBudget;

    auto ell_sum_finite = [&](double e) -> std::optional<bool> {
        if (finite_family) return true;
        if (spec.mode == HedgehogSpec::Mode::Abstract && spec.a_power_gamma)
            return power_in_ell(*spec.a_power_gamma, e);
        if (spec.mode == HedgehogSpec::Mode::Abstract && spec.norm_power_gamma &&
            spec.explicit_a.empty())
            return power_in_ell(*spec.norm_power_gamma, e);
        if (spec.mode == HedgehogSpec::Mode::Wavelet && spec.wavelet_a.empty() &&
            !spec.b_power_gamma)
            return spec.uniform_a == 0.0;  // constant nonzero family is never l^e
        return std::nullopt;               // no analytic rule available
    };
    auto sup_bounded = [&]() -> std::optional<bool> {
        if (finite_family) return true;
        if (spec.mode == HedgehogSpec::Mode::Abstract && spec.a_power_gamma)
            return *spec.a_power_gamma >= 0.0;
        if (spec.mode == HedgehogSpec::Mode::Abstract && spec.norm_power_gamma &&
            spec.explicit_a.empty())
            return *spec.norm_power_gamma >= 0.0;
        if (spec.mode == HedgehogSpec::Mode::Wavelet && spec.wavelet_a.empty() &&
            !spec.b_power_gamma)
            return true;  // constant family is bounded
        return std::nullopt;  // b rule: no analytic sup over the full index set
    };

    const auto& v = spec.rho.variant();
    if (std::holds_alternative<StableMeasure>(v)) {
        const double alpha = std::get<StableMeasure>(v).alpha;
        report.ell_exponent = 2.0 * alpha / (2.0 - alpha);
        report.criterion = "stable: (a_k) in l^{2a/(2-a)}";
        if (auto fin = ell_sum_finite(report.ell_exponent)) {
            report.verdict = *fin ? Admissibility::Admissible : Admissibility::NotAdmissible;
            return report;
        }
    } else if (std::holds_alternative<PointMassAtOne>(v) ||
               std::holds_alternative<TemperedStableMeasure>(v)) {
        report.criterion = "finite-variance member: (a_k) in l^inf";
        if (auto b = sup_bounded()) {
            report.verdict = *b ? Admissibility::Admissible : Admissibility::NotAdmissible;
            return report;
        }
    } else if (std::holds_alternative<BlendedStableMeasure>(v)) {
        const auto& bm = std::get<BlendedStableMeasure>(v);
        const double e1 = 2.0 * bm.alpha1 / (2.0 - bm.alpha1);
        const double e2 = 2.0 * bm.alpha2 / (2.0 - bm.alpha2);
        report.ell_exponent = e1;
        report.criterion = "blended: l^{2a1/(2-a1)} sufficient, l^{2a2/(2-a2)} necessary";
        const auto suff = ell_sum_finite(e1);
        const auto nec = ell_sum_finite(e2);
        if (suff && *suff) {
            report.verdict = Admissibility::Admissible;
            return report;
        }
        if (nec && !*nec) {
            report.verdict = Admissibility::NotAdmissible;
            return report;
        }
    } else {
        report.criterion = "custom measure without certificate";
    }

    // Numeric fallback: unit-l^2 probes c_k = k^{-1/2-eps}.
    for (const double eps : {0.01, 0.1}) {
        CompensatedSum acc;
        std::vector<double> checkpoints;
        std::uint64_t next = 64;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double x = a[k] * std::pow(static_cast<double>(k + 1), -0.5 - eps);
            if (x != 0.0) acc.add(quadratic_cap_integral(spec.rho, std::abs(x)));
            if (k + 1 == next || k + 1 == a.size()) {
                checkpoints.push_back(acc.value());
                next *= 4;
            }
        }
        report.probe_partial_sums.push_back(checkpoints.back());
        if (eps == 0.1) {
            report.probe_trend_bounded = partial_sum_trend(checkpoints) == TrendFlag::Converges;
        }
    }
    report.verdict = Admissibility::Inconclusive;
    return report;
}

QMinEstimate q_min(const HedgehogSpec& spec, const BesovParams& params) {
    spec.validate();
    params.validate();
    QMinEstimate out;

    if (spec.mode == HedgehogSpec::Mode::Abstract) {
        if (spec.explicit_norms.empty()) {
            const double g = *spec.norm_power_gamma;
            out.value = g > 0.0 ? 1.0 / g : kInf;
            return out;
        }
        std::vector<double> sorted = spec.explicit_norms;
        std::erase_if(sorted, [](double v) { return v == 0.0; });
        if (sorted.size() < 16) {  // genuinely finite family
            out.value = 0.0;
            return out;
        }
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        std::vector<double> lx, ly;
        for (std::size_t k = sorted.size() / 4; k < sorted.size(); ++k) {
            lx.push_back(std::log(static_cast<double>(k + 1)));
            ly.push_back(std::log(sorted[k]));
        }
        const LineFit fit = fit_line(lx, ly);
        const double gamma_hat = -fit.slope;
        out.analytic = false;
        out.uncertainty = fit.residual_rms;
        out.value = gamma_hat > 0.0 ? 1.0 / gamma_hat : kInf;
        if (spec.certified_qmin_lower) out.value = std::max(out.value, *spec.certified_qmin_lower);
        return out;
    }

    // Wavelet mode.
    if (spec.b_power_gamma && spec.wavelet_a.empty()) {
        out.value = *spec.b_power_gamma > 0.0 ? 1.0 / *spec.b_power_gamma : kInf;
        return out;
    }
    if (spec.wavelet_a.empty()) {
        // Uniform coefficients: the norm family is uniform_a * w_k, so the
        // critical exponent is the weight summability threshold.
        out.value = spec.uniform_a == 0.0 ? 0.0 : weight_summability_threshold(params);
        return out;
    }
    std::vector<double> norms = norm_family(spec, params);
    std::erase_if(norms, [](double v) { return v == 0.0; });
    if (norms.size() < 16) {
        out.value = spec.certified_qmin_lower.value_or(0.0);
        out.analytic = !spec.certified_qmin_lower.has_value();
        return out;
    }
    std::sort(norms.begin(), norms.end(), std::greater<>());
    std::vector<double> lx, ly;
    for (std::size_t k = norms.size() / 4; k < norms.size(); ++k) {
        lx.push_back(std::log(static_cast<double>(k + 1)));
        ly.push_back(std::log(norms[k]));
    }
    const LineFit fit = fit_line(lx, ly);
    out.analytic = false;
    out.uncertainty = fit.residual_rms;
    out.value = fit.slope < 0.0 ? -1.0 / fit.slope : kInf;
    if (spec.certified_qmin_lower) out.value = std::max(out.value, *spec.certified_qmin_lower);
    return out;
}

HedgehogVerdict hedgehog_verdict(const HedgehogSpec& spec, const BesovParams& params) {
    spec.validate();
    params.validate();
    HedgehogVerdict verdict;
    verdict.region = classify_point(params);
    require(verdict.region.in_E_p, "hedgehog_verdict: (s,w) must lie in E_p");

    const AdmissibilityReport adm = admissibility(spec);
    require(adm.verdict != Admissibility::NotAdmissible,
            "hedgehog_verdict: coefficient family is not admissible for the driving measure");

    verdict.q_min = q_min(spec, params).value;
    verdict.tau_upper = tau_indices(spec.rho, std::min(params.p, 2.0)).tau_upper;
    verdict.tau_lower = tau_indices(spec.rho, std::max(params.p, 2.0)).tau_lower;

    if (verdict.region.in_R_p) {
        verdict.outcome = HedgehogOutcome::Induced;
        verdict.branch = HedgehogBranch::Clause1i;
    } else if (verdict.q_min < verdict.tau_upper) {
        verdict.outcome = HedgehogOutcome::Induced;
        verdict.branch = HedgehogBranch::Clause1ii;
    } else if (verdict.q_min > verdict.tau_lower) {
        verdict.outcome = HedgehogOutcome::NotInduced;
        verdict.branch = HedgehogBranch::Clause2;
    } else {
        verdict.outcome = HedgehogOutcome::Inconclusive;
        verdict.branch = HedgehogBranch::None;
    }
    return verdict;
}

namespace {

// Integral over (0, inf) of (1 - cos u) u^{-1-alpha} in closed form.
double stable_one_minus_cos_total(double alpha) {
    return std::numbers::pi /
           (2.0 * std::sin(0.5 * std::numbers::pi * alpha) * std::tgamma(1.0 + alpha));
}

// Integral over (0, y) of (1 - cos u) u^{-1-alpha}.
double one_minus_cos_integral(double alpha, double y) {
    boost::math::quadrature::tanh_sinh<double> ts;
    if (y <= 64.0) {
        return ts.integrate([alpha](double u) { return (1.0 - std::cos(u)) *
                                                        std::pow(u, -1.0 - alpha); },
                            0.0, y);
    }
    const double full = stable_one_minus_cos_total(alpha);
    return full - std::pow(y, -alpha) / alpha + std::sin(y) * std::pow(y, -1.0 - alpha);
}

// psi_k(tau) = Integral over |beta| <= B of (1 - cos(tau a beta)) rho(d beta).
double cosine_deficit(const LevyMeasure1D& rho, double a, double B, double tau) {
    if (a == 0.0 || tau == 0.0) return 0.0;
    const double c = std::abs(tau * a);
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PointMassAtOne>) {
                return B >= 1.0 ? (1.0 - std::cos(c)) : 0.0;
            } else if constexpr (std::is_same_v<T, StableMeasure>) {
                return 2.0 * std::pow(c, m.alpha) * one_minus_cos_integral(m.alpha, c * B);
            } else {
                boost::math::quadrature::tanh_sinh<double> ts;
                auto density = [&](double beta) -> double {
                    if constexpr (std::is_same_v<T, TemperedStableMeasure>) {
                        return std::pow(beta, -m.zeta) * std::exp(-beta);
                    } else if constexpr (std::is_same_v<T, BlendedStableMeasure>) {
                        const double cell = std::floor(beta);
                        const bool fam1 = (static_cast<long long>(cell) % 2 == 0);
                        return std::pow(beta, fam1 ? -1.0 - m.alpha1 : -1.0 - m.alpha2);
                    } else {
                        return m.density(beta);
                    }
                };
                return 2.0 * ts.integrate(
                                 [&](double beta) { return (1.0 - std::cos(c * beta)) *
                                                           density(beta); },
                                 0.0, B);
            }
        },
        rho.variant());
}

// T_k = Integral over (0, inf) of (1 - exp(-psi(tau))) tau^{-1-p}.
double cosine_tau_integral(const LevyMeasure1D& rho, double a, double B, double p) {
    if (a == 0.0) return 0.0;
    const double tau0 = 1e-4;
    // Small-tau closure: psi ~ tau^2 a^2 M2[0,B] / 2.
    const double m2 = truncated_moment(rho, 2.0, 0.0, B);
    const double head = 0.5 * a * a * m2 * std::pow(tau0, 2.0 - p) / (2.0 - p);
    // Find where the integrand becomes negligible or saturates.
    double T = tau0 * 2.0;
    double psi = 0.0;
    for (int i = 0; i < 200; ++i) {
        psi = cosine_deficit(rho, a, B, T);
        if (psi > 30.0) break;
        if ((1.0 - std::exp(-psi)) * std::pow(T, -1.0 - p) < 1e-12 && T > 1.0) break;
        T *= 2.0;
        if (T > 1e12) break;
    }
    auto integrand = [&](double tau) {
        const double v = 1.0 - std::exp(-cosine_deficit(rho, a, B, tau));
        return std::clamp(v, 0.0, 1.0) * std::pow(tau, -1.0 - p);
    };
    const double mid = integrate(integrand, tau0, T, 1e-7, 12).value;
    // Bracketed tail: the integrand sits between (1-e^{-psi(T)}) and 1
    // times tau^{-1-p} when psi is increasing past T.
    const double tail = (psi > 30.0) ? std::pow(T, -p) / p : 0.0;
    return head + mid + tail;
}

}  // namespace

std::vector<ConditionReport> levy_measure_conditions(const HedgehogSpec& spec,
                                                     const BesovParams& params,
                                                     const IndexEnumeration& trunc) {
    spec.validate();
    params.validate();
    require(spec.mode == HedgehogSpec::Mode::Wavelet,
            "levy_measure_conditions: non-diagonal abstract bases are not supported");
    const double p = params.p;

    // Materialise nu_k = |a_k| w_k and w_k over the truncation.
    std::vector<double> nu, wk, ak;
    std::uint64_t k = 0;
    trunc.for_each([&](const WaveletIndex& idx) {
        const double w = weight(params, idx);
        double av;
        if (!spec.wavelet_a.empty()) {
            if (k >= spec.wavelet_a.size()) return false;
            av = std::abs(spec.wavelet_a[k]);
        } else if (spec.b_power_gamma) {
            av = std::pow(static_cast<double>(k + 1), -*spec.b_power_gamma) / w;
        } else {
            av = std::abs(spec.uniform_a);
        }
        ++k;
        nu.push_back(av * w);
        wk.push_back(w);
        ak.push_back(av);
        return true;
    });

    auto checkpointed = [&](const std::function<double(std::size_t)>& term,
                            const char* name) -> ConditionReport {
        ConditionReport rep;
        rep.name = name;
        CompensatedSum acc;
        std::uint64_t next = 64;
        for (std::size_t i = 0; i < nu.size(); ++i) {
            acc.add(term(i));
            if (i + 1 == next || i + 1 == nu.size()) {
                rep.partial_values.push_back(acc.value());
                next *= 4;
            }
        }
        rep.trend = partial_sum_trend(rep.partial_values);
        return rep;
    };

    std::vector<ConditionReport> out;
    if (p >= 2.0) {
        out.push_back(checkpointed(
            [&](std::size_t i) {
                const double v = nu[i];
                if (v == 0.0) return 0.0;
                return abs_pow(v, p) * truncated_moment(spec.rho, p, 0.0, 1.0 / v) +
                       tail_mass(spec.rho, 1.0 / v);
            },
            "capped_p_moment"));
        out.push_back(checkpointed(
            [&](std::size_t i) {
                const double v = nu[i];
                if (v == 0.0) return 0.0;
                return abs_pow(v, p) *
                       std::pow(truncated_moment(spec.rho, 2.0, 0.0, 1.0 / v), 0.5 * p);
            },
            "inner_quadratic"));
    } else {
        out.push_back(checkpointed(
            [&](std::size_t i) { return quadratic_cap_integral(spec.rho, nu[i]); },
            "quadratic_cap"));
        out.push_back(checkpointed(
            [&](std::size_t i) {
                const double v = nu[i];
                if (v == 0.0) return 0.0;
                return abs_pow(wk[i], p) * cosine_tau_integral(spec.rho, ak[i], 1.0 / v, p);
            },
            "cosine_tau_integral"));
    }
    return out;
}

// --- counterexample construction ---------------------------------------------

double Counterexample::a_value(const BesovParams& params, const WaveletIndex& idx) const {
    if (block_T.empty()) return 0.0;
    std::size_t block = block_T.size();
    if (route == "ring") {
        if (idx.j != 0) return 0.0;
        const double r = idx.m_sup_norm();
        auto it = std::upper_bound(block_edge.begin(), block_edge.end(), r);
        if (it == block_edge.end()) return 0.0;
        block = static_cast<std::size_t>(it - block_edge.begin());
    } else {
        if (idx.j >= static_cast<int>(block_T.size())) return 0.0;
        const double cap = 8.0 * std::exp2(static_cast<double>(idx.j));
        if (idx.m_sup_norm() > cap) return 0.0;
        block = static_cast<std::size_t>(idx.j);
    }
    const double w = weight(params, idx);
    return std::pow(w, a_omega_exponent) * std::pow(block_T[block], -sigma / q_prime);
}

HedgehogSpec Counterexample::as_spec(const BesovParams& params,
                                     const IndexEnumeration& trunc) const {
    HedgehogSpec spec;
    spec.mode = HedgehogSpec::Mode::Wavelet;
    spec.rho = LevyMeasure1D::stable(alpha);
    spec.trunc = trunc;
    spec.certified_qmin_lower = q_prime;
    trunc.for_each([&](const WaveletIndex& idx) {
        spec.wavelet_a.push_back(a_value(params, idx));
        return true;
    });
    return spec;
}

Counterexample counterexample_sequence(const BesovParams& params, double alpha,
                                       const CounterexampleOptions& opts) {
    params.validate();
    require(alpha > 0.0 && alpha < 2.0, "counterexample: alpha in (0,2)");
    require(params.p > 2.0, "counterexample: requires p > 2");
    const RegionVerdict region = classify_point(params);
    require(region.in_E_p, "counterexample: (s,w) must lie in E_p");
    require(!region.in_R_p, "counterexample: (s,w) must lie outside R_p");
    require(params.d <= 3, "counterexample: d <= 3 supported");

    Counterexample ce;
    ce.alpha = alpha;
    ce.ell_r = 2.0 * alpha / (2.0 - alpha);
    const double r = ce.ell_r;
    const double K = weight_summability_threshold(params);

    // Largest exponent q for which some l^r sequence breaks q-summability
    // of the norms: the dual-space condition fails exactly on (0, q_crit].
    ce.q_crit = std::isinf(K) ? r : 2.0 * alpha * K / (2.0 * alpha + K * (2.0 - alpha));
    require(ce.q_crit > alpha + 1e-12,
            "counterexample: (s,w) sits on the R_p boundary; no exponent gap");
    ce.q_prime = 0.5 * (alpha + ce.q_crit);
    const double q = ce.q_prime;
    const double m = r / q;
    ce.sigma = 0.5 * (q / r + 1.0);
    ce.k_div = r * q / (r - q);
    ce.a_omega_exponent = q / (r - q);  // = 1/(m-1)
    const double e_alpha = alpha * ce.k_div / q;
    const double sm = ce.sigma * m;

    const int d = params.d;
    const double e_scale = scale_exponent(params);
    const double kappa_div = ce.k_div * params.w;
    const double kappa_e = e_alpha * params.w;
    const bool ring_route = (params.w >= 0.0) || (kappa_div >= -d);
    ce.route = ring_route ? "ring" : "level";

    CompensatedSum P_q, W_alpha, C_r;
    double T = 0.0;

    if (ring_route) {
        const double genders = static_cast<double>(gender_count(d, 0));
        double R = 64.0;
        double prev_div = 0.0, prev_e = 0.0;
        for (std::uint64_t b = 0; b < opts.max_blocks; ++b) {
            const double cum_div = genders * lattice_sum_rings_to(d, 0, kappa_div, R).value;
            const double cum_e = genders * lattice_sum_rings_to(d, 0, kappa_e, R).value;
            const double D = cum_div - prev_div;
            const double E = cum_e - prev_e;
            prev_div = cum_div;
            prev_e = cum_e;
            T += D;
            P_q.add(D * std::pow(T, -ce.sigma));
            W_alpha.add(E * std::pow(T, -ce.sigma * alpha / q));
            C_r.add(D * std::pow(T, -sm));
            ce.block_T.push_back(T);
            ce.block_edge.push_back(R);
            if (W_alpha.value() >= opts.divergence_target &&
                P_q.value() >= opts.divergence_target) {
                break;
            }
            R *= 4.0;
            if (R > 1e290) break;
        }
    } else {
        for (std::uint64_t b = 0; b < opts.max_blocks; ++b) {
            const int j = static_cast<int>(b);
            const double cap = 8.0 * std::exp2(static_cast<double>(j));
            const double g = static_cast<double>(gender_count(d, j));
            const double D =
                g * std::exp2(j * ce.k_div * e_scale) * lattice_sum_rings_to(d, j, kappa_div, cap).value;
            const double E =
                g * std::exp2(j * e_alpha * e_scale) * lattice_sum_rings_to(d, j, kappa_e, cap).value;
            T += D;
            P_q.add(D * std::pow(T, -ce.sigma));
            W_alpha.add(E * std::pow(T, -ce.sigma * alpha / q));
            C_r.add(D * std::pow(T, -sm));
            ce.block_T.push_back(T);
            ce.block_edge.push_back(static_cast<double>(j));
            if (W_alpha.value() >= opts.divergence_target &&
                P_q.value() >= opts.divergence_target) {
                break;
            }
        }
    }

    ce.blocks = ce.block_T.size();
    ce.qprime_weighted_partial = P_q.value();
    ce.alpha_weighted_partial = W_alpha.value();
    ce.ell_r_partial = C_r.value();
    ce.ell_r_tail_bound = std::pow(T, 1.0 - sm) / (sm - 1.0);
    return ce;
}

}  // namespace besovlab
