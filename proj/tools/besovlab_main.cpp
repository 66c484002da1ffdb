// Command-line front end: classification, stable/hedgehog/tau analysis,
// truncated simulation, Triebel diagram export, and record replay.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "besovlab/records.hpp"

namespace {

using besovlab::format_double;
using Params = std::map<std::string, std::string>;

std::string out_dir() {
    const char* env = std::getenv("BESOVLAB_OUTDIR");
    return env && *env ? env : ".";
}

double get_d(const Params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : std::stod(it->second);
}

std::uint64_t get_u(const Params& p, const std::string& key, std::uint64_t fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : std::stoull(it->second);
}

std::string get_s(const Params& p, const std::string& key, const std::string& fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

besovlab::BesovParams besov_params(const Params& p) {
    besovlab::BesovParams bp;
    bp.p = get_d(p, "p", 2.0);
    bp.s = get_d(p, "s", 0.0);
    bp.w = get_d(p, "w", 0.0);
    bp.d = static_cast<int>(get_u(p, "d", 1));
    bp.validate();
    return bp;
}

besovlab::LevyMeasure1D measure_from(const Params& p) {
    const std::string tag = get_s(p, "measure", "stable");
    return besovlab::LevyMeasure1D::from_tag(tag, get_d(p, "alpha", get_d(p, "zeta", 1.2)),
                                             get_d(p, "alpha2", 0.0));
}

std::string timestamp_now() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void persist(const std::string& command, const Params& params,
             const std::vector<std::string>& outputs,
             const std::map<std::string, std::string>& verdicts) {
    if (get_s(params, "no_record", "") == "1") return;
    besovlab::RunRecord rec;
    rec.command = command;
    rec.parameters = params;
    rec.seed = get_u(params, "seed", 0);
    rec.timestamp = timestamp_now();
    rec.outputs = outputs;
    rec.verdicts = verdicts;
    besovlab::append_record(get_s(params, "record_file", out_dir() + "/records.jsonl"), rec);
}

const char* yn(bool b) { return b ? "yes" : "no"; }

int run_classify(const Params& params) {
    const besovlab::BesovParams bp = besov_params(params);
    const besovlab::RegionVerdict v = besovlab::classify_point(bp);
    std::printf("region        member  boundary  margin\n");
    std::printf("E_p           %-7s %-9s %s\n", yn(v.in_E_p), yn(v.boundary_E_p),
                format_double(v.margin_E_p).c_str());
    std::printf("R_p           %-7s %-9s %s\n", yn(v.in_R_p), yn(v.boundary_R_p),
                format_double(v.margin_R_p).c_str());
    std::printf("R_p^(p)       %-7s %-9s %s\n", yn(v.in_R_p_p), yn(v.boundary_R_p_p),
                format_double(v.margin_R_p_p).c_str());
    std::printf("gaussian      %-7s\n", yn(v.in_gaussian_region));
    if (v.embedding_boundary_discrepancy) {
        std::printf("note: embedding criterion admits equality on this s-boundary\n");
    }
    persist("classify", params, {},
            {{"in_Ep", yn(v.in_E_p)},
             {"in_Rp", yn(v.in_R_p)},
             {"in_Rpp", yn(v.in_R_p_p)},
             {"gaussian", yn(v.in_gaussian_region)}});
    return 0;
}

int run_analyze_stable(const Params& params) {
    besovlab::StableRun run;
    run.params = besov_params(params);
    run.alpha = get_d(params, "alpha", 1.2);
    run.seed = get_u(params, "seed", 1);
    run.mc_samples = get_u(params, "samples", 20000);
    run.workers = static_cast<unsigned>(get_u(params, "workers", 1));
    run.index_budget = get_u(params, "budget", 1ull << 17);
    const int max_scale = static_cast<int>(get_u(params, "max_scale", 13));
    run.trunc = besovlab::IndexEnumeration{
        run.params.d, max_scale,
        static_cast<std::int32_t>(get_u(params, "max_shift", 1ull << std::min(max_scale, 13)))};

    const besovlab::StableVerdict verdict = besovlab::stable_verdict(run.params, run.alpha);
    const std::string prefix = get_s(params, "out", out_dir() + "/stable");
    std::vector<std::string> outputs;

    const besovlab::FunctionalCurve sigma =
        run.params.p > 2.0 ? besovlab::sigma_n(run) : besovlab::lambda_stat_n(run);
    const std::string curve_path = prefix + "_sigma.csv";
    besovlab::write_curve_csv(sigma, curve_path);
    outputs.push_back(curve_path);

    if (!verdict.induced) {
        const auto cert = besovlab::sigma_divergence_certificate(run.params, run.alpha);
        besovlab::FunctionalCurve cc;
        for (std::size_t i = 0; i < cert.levels.size(); ++i) {
            cc.n.push_back(static_cast<std::uint64_t>(
                std::min(cert.virtual_indices[i], 1.8e19)));
            cc.value.push_back(cert.lower_bound[i]);
            cc.lower.push_back(cert.lower_bound[i]);
            cc.upper.push_back(besovlab::kInf);
            cc.mc_stderr.push_back(0.0);
        }
        const std::string cert_path = prefix + "_divergence.csv";
        besovlab::write_curve_csv(cc, cert_path);
        outputs.push_back(cert_path);
    }

    std::printf("stable verdict: %s (%s)\n", verdict.induced ? "induced" : "not induced",
                verdict.reason.c_str());
    persist("analyze_stable", params, outputs,
            {{"induced", yn(verdict.induced)}, {"reason", verdict.reason}});
    return 0;
}

int run_analyze_hedgehog(const Params& params) {
    const besovlab::BesovParams bp = besov_params(params);
    besovlab::HedgehogSpec spec;
    spec.rho = measure_from(params);
    const std::string mode = get_s(params, "mode", "abstract");
    if (mode == "wavelet") {
        spec.mode = besovlab::HedgehogSpec::Mode::Wavelet;
        spec.trunc = besovlab::IndexEnumeration{
            bp.d, static_cast<int>(get_u(params, "max_scale", 10)),
            static_cast<std::int32_t>(get_u(params, "max_shift", 1024))};
        spec.uniform_a = get_d(params, "a", 1.0);
        if (params.count("b_gamma")) spec.b_power_gamma = get_d(params, "b_gamma", 0.0);
        spec.wavelet_params = bp;
    } else {
        spec.mode = besovlab::HedgehogSpec::Mode::Abstract;
        spec.norm_power_gamma = get_d(params, "gamma", 0.5);
        if (params.count("a_gamma")) spec.a_power_gamma = get_d(params, "a_gamma", 0.0);
    }

    const besovlab::HedgehogVerdict v = besovlab::hedgehog_verdict(spec, bp);
    std::printf("hedgehog verdict: %s via %s\n", to_string(v.outcome), to_string(v.branch));
    std::printf("q_min=%s tau_upper=%s tau_lower=%s in_Rp=%s\n", format_double(v.q_min).c_str(),
                format_double(v.tau_upper).c_str(), format_double(v.tau_lower).c_str(),
                yn(v.region.in_R_p));

    std::vector<std::string> outputs;
    if (mode == "wavelet" && get_s(params, "conditions", "") == "1") {
        const auto reports = besovlab::levy_measure_conditions(spec, bp, spec.trunc);
        const std::string path = get_s(params, "out", out_dir() + "/hedgehog") + "_conditions.csv";
        std::ofstream out(path);
        out << "condition,checkpoint,partial_value,trend\n";
        for (const auto& rep : reports) {
            for (std::size_t i = 0; i < rep.partial_values.size(); ++i) {
                out << rep.name << ',' << i << ',' << format_double(rep.partial_values[i]) << ','
                    << to_string(rep.trend) << '\n';
            }
        }
        outputs.push_back(path);
    }
    persist("analyze_hedgehog", params, outputs,
            {{"outcome", to_string(v.outcome)},
             {"branch", to_string(v.branch)},
             {"q_min", format_double(v.q_min)},
             {"tau_upper", format_double(v.tau_upper)},
             {"tau_lower", format_double(v.tau_lower)}});
    return 0;
}

int run_analyze_tau(const Params& params) {
    const besovlab::LevyMeasure1D rho = measure_from(params);
    const double q = get_d(params, "q", 2.0);
    std::optional<besovlab::TauGridSpec> grid;
    if (get_s(params, "numeric", "") == "1") grid = besovlab::TauGridSpec{};
    const besovlab::TauIndices tau = besovlab::tau_indices(rho, q, grid);
    std::printf("%s,%s\n", format_double(tau.tau_upper).c_str(),
                format_double(tau.tau_lower).c_str());
    persist("analyze_tau", params, {},
            {{"tau_upper", format_double(tau.tau_upper)},
             {"tau_lower", format_double(tau.tau_lower)},
             {"method", tau.method == besovlab::TauMethod::Analytic ? "analytic" : "numeric"}});
    return 0;
}

int run_simulate(const Params& params) {
    besovlab::SimulationConfig config;
    config.params = besov_params(params);
    config.alpha = get_d(params, "alpha", 1.2);
    config.replicas = get_u(params, "replicas", 128);
    if (config.replicas == 0) throw std::invalid_argument("simulate: replicas must be >= 1");
    config.seed = get_u(params, "seed", 1);
    config.trunc = besovlab::IndexEnumeration{
        config.params.d, static_cast<int>(get_u(params, "max_scale", 12)),
        static_cast<std::int32_t>(get_u(params, "max_shift", 4096))};
    const std::string model = get_s(params, "model", "stable");

    besovlab::HedgehogSpec spec;
    const besovlab::HedgehogSpec* spec_ptr = nullptr;
    if (model == "hedgehog") {
        config.model = besovlab::PathModel::Hedgehog;
        spec.mode = besovlab::HedgehogSpec::Mode::Wavelet;
        spec.rho = measure_from(params);
        spec.trunc = config.trunc;
        spec.uniform_a = get_d(params, "a", 1.0);
        spec_ptr = &spec;
    } else {
        config.model = besovlab::PathModel::CanonicalStable;
    }

    const besovlab::NormCurve curve = besovlab::empirical_norm_curve(config, spec_ptr);
    const besovlab::DivergenceDiagnostic diag = besovlab::divergence_diagnostic(curve);
    const std::string path = get_s(params, "out", out_dir() + "/simulate") + "_norms.csv";
    besovlab::write_norm_curve_csv(curve, path);
    std::printf("diagnostic: %s (slope %s)\n", to_string(diag.verdict),
                format_double(diag.slope).c_str());
    persist("simulate", params, {path},
            {{"diagnostic", to_string(diag.verdict)}, {"slope", format_double(diag.slope)}});
    return 0;
}

int run_diagram(const Params& params) {
    const double p_min = get_d(params, "p_min", 1.05);
    const double p_max = get_d(params, "p_max", 64.0);
    const int d = static_cast<int>(get_u(params, "d", 1));
    const auto resolution = static_cast<std::size_t>(get_u(params, "resolution", 101));
    const std::string prefix = get_s(params, "out", out_dir() + "/triebel");

    std::vector<std::string> outputs;
    for (const auto plane : {besovlab::TriebelPlane::S, besovlab::TriebelPlane::W}) {
        const auto grid = besovlab::triebel_grid(plane, p_min, p_max, -3.0 * d, 3.0 * d, d,
                                                 resolution);
        const std::string path =
            prefix + (plane == besovlab::TriebelPlane::S ? "_s.csv" : "_w.csv");
        std::ofstream out(path);
        besovlab::write_triebel_csv(grid, out);
        outputs.push_back(path);
    }
    const std::string svg_path = prefix + ".svg";
    std::ofstream svg(svg_path);
    svg << besovlab::triebel_svg(p_min, p_max, d, resolution);
    outputs.push_back(svg_path);
    std::printf("wrote %s_s.csv, %s_w.csv, %s.svg\n", prefix.c_str(), prefix.c_str(),
                prefix.c_str());
    persist("diagram", params, outputs, {});
    return 0;
}

int dispatch(const std::string& command, const Params& params) {
    if (command == "classify") return run_classify(params);
    if (command == "analyze_stable") return run_analyze_stable(params);
    if (command == "analyze_hedgehog") return run_analyze_hedgehog(params);
    if (command == "analyze_tau") return run_analyze_tau(params);
    if (command == "simulate") return run_simulate(params);
    if (command == "diagram") return run_diagram(params);
    throw std::invalid_argument("unknown command in record: " + command);
}

int run_replay(const std::string& path, int line) {
    const auto records = besovlab::read_records(path);
    if (records.empty()) throw std::invalid_argument("replay: no records in " + path);
    const auto idx = line < 0 ? records.size() - 1 : static_cast<std::size_t>(line);
    if (idx >= records.size()) throw std::invalid_argument("replay: record index out of range");
    Params params = records[idx].parameters;
    params["no_record"] = "1";  // a replay does not append a new record
    return dispatch(records[idx].command, params);
}

void add_besov_flags(CLI::App* cmd, Params& params) {
    cmd->add_option_function<double>("-p,--p", [&params](double v) { params["p"] = format_double(v); },
                                     "integrability exponent (> 1)");
    cmd->add_option_function<double>("-s,--s", [&params](double v) { params["s"] = format_double(v); },
                                     "smoothness");
    cmd->add_option_function<double>("-w,--w", [&params](double v) { params["w"] = format_double(v); },
                                     "weight decay");
    cmd->add_option_function<std::uint64_t>(
        "-d,--d", [&params](std::uint64_t v) { params["d"] = std::to_string(v); }, "dimension");
}

void add_kv_option(CLI::App* cmd, Params& params, const std::string& flag, const std::string& key,
                   const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&params, key](const std::string& v) { params[key] = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for regularisation of cylindrical Levy processes in "
                 "weighted Besov spaces"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags take precedence");

    Params params;
    std::string replay_path;
    int replay_line = -1;

    CLI::App* classify = app.add_subcommand("classify", "region membership of (p, s, w, d)");
    add_besov_flags(classify, params);

    CLI::App* analyze = app.add_subcommand("analyze", "stable / hedgehog / tau analysis");
    analyze->require_subcommand(1);
    CLI::App* a_stable = analyze->add_subcommand("stable", "canonical alpha-stable functionals");
    add_besov_flags(a_stable, params);
    add_kv_option(a_stable, params, "--alpha", "alpha", "stability index in (0,2)");
    add_kv_option(a_stable, params, "--seed", "seed", "RNG seed");
    add_kv_option(a_stable, params, "--samples", "samples", "MC samples per truncation");
    add_kv_option(a_stable, params, "--budget", "budget", "index budget");
    add_kv_option(a_stable, params, "--workers", "workers", "worker threads");
    add_kv_option(a_stable, params, "--max-scale", "max_scale", "truncation J");
    add_kv_option(a_stable, params, "--max-shift", "max_shift", "truncation M");
    add_kv_option(a_stable, params, "--out", "out", "output path prefix");

    CLI::App* a_hedge = analyze->add_subcommand("hedgehog", "hedgehog process verdict");
    add_besov_flags(a_hedge, params);
    add_kv_option(a_hedge, params, "--measure", "measure", "driving measure tag");
    add_kv_option(a_hedge, params, "--alpha", "alpha", "measure parameter");
    add_kv_option(a_hedge, params, "--alpha2", "alpha2", "second blended exponent");
    add_kv_option(a_hedge, params, "--gamma", "gamma", "norm decay exponent");
    add_kv_option(a_hedge, params, "--a-gamma", "a_gamma", "coefficient decay exponent");
    add_kv_option(a_hedge, params, "--b-gamma", "b_gamma", "inverse-weight decay exponent");
    add_kv_option(a_hedge, params, "--mode", "mode", "abstract | wavelet");
    add_kv_option(a_hedge, params, "--a", "a", "uniform coefficient (wavelet mode)");
    add_kv_option(a_hedge, params, "--conditions", "conditions", "1 = export condition sums");
    add_kv_option(a_hedge, params, "--max-scale", "max_scale", "truncation J");
    add_kv_option(a_hedge, params, "--max-shift", "max_shift", "truncation M");
    add_kv_option(a_hedge, params, "--out", "out", "output path prefix");

    CLI::App* a_tau = analyze->add_subcommand("tau", "summability indices of a measure");
    add_kv_option(a_tau, params, "--measure", "measure", "driving measure tag");
    add_kv_option(a_tau, params, "--alpha", "alpha", "measure parameter");
    add_kv_option(a_tau, params, "--zeta", "zeta", "tempered stable exponent");
    add_kv_option(a_tau, params, "--alpha2", "alpha2", "second blended exponent");
    add_kv_option(a_tau, params, "--q", "q", "index order q");
    add_kv_option(a_tau, params, "--numeric", "numeric", "1 = numeric grid estimator");

    CLI::App* simulate = app.add_subcommand("simulate", "empirical norm curves of truncations");
    add_besov_flags(simulate, params);
    add_kv_option(simulate, params, "--model", "model", "stable | hedgehog");
    add_kv_option(simulate, params, "--alpha", "alpha", "stability index");
    add_kv_option(simulate, params, "--measure", "measure", "hedgehog driving measure");
    add_kv_option(simulate, params, "--a", "a", "uniform hedgehog coefficient");
    add_kv_option(simulate, params, "--replicas", "replicas", "MC replicas");
    add_kv_option(simulate, params, "--seed", "seed", "RNG seed");
    add_kv_option(simulate, params, "--budget", "budget", "index budget");
    add_kv_option(simulate, params, "--max-scale", "max_scale", "truncation J");
    add_kv_option(simulate, params, "--max-shift", "max_shift", "truncation M");
    add_kv_option(simulate, params, "--out", "out", "output path prefix");

    CLI::App* diagram = app.add_subcommand("diagram", "Triebel diagrams (CSV + SVG)");
    add_kv_option(diagram, params, "--p-min", "p_min", "smallest p (> 1)");
    add_kv_option(diagram, params, "--p-max", "p_max", "largest p");
    add_kv_option(diagram, params, "-d,--d", "d", "dimension");
    add_kv_option(diagram, params, "--resolution", "resolution", "grid resolution per axis");
    add_kv_option(diagram, params, "--out", "out", "output path prefix");

    CLI::App* replay = app.add_subcommand("replay", "re-run a persisted record");
    replay->add_option("file", replay_path, "records.jsonl path")->required();
    replay->add_option("--line", replay_line, "record index (default: last)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) return run_classify(params);
        if (a_stable->parsed()) return run_analyze_stable(params);
        if (a_hedge->parsed()) return run_analyze_hedgehog(params);
        if (a_tau->parsed()) return run_analyze_tau(params);
        if (simulate->parsed()) return run_simulate(params);
        if (diagram->parsed()) return run_diagram(params);
        if (replay->parsed()) return run_replay(replay_path, replay_line);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
