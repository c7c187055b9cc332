#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nls/cli.hpp"
#include "nls/diagnostics.hpp"
#include "nls/error.hpp"
#include "nls/fit.hpp"

namespace nls::cli {
namespace {

using nlohmann::json;

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"evolve", "solve with the Picard decomposition and write the diagnostics series"},
    {"oracle", "integrate directly with the reference scheme"},
    {"compare", "run both and report pointwise differences"},
    {"sweep-eps", "solve over a grid of data sizes and fit the exponents"},
    {"verify-dispersive", "tabulate the dispersive ratio over time and exponent"},
    {"check-gronwall", "solve and test the Gronwall bound on the modified energy"},
};

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json exponent_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

json base_manifest(const std::string& subcommand, const ExperimentConfig& cfg) {
    const std::string canonical = canonical_config(cfg);
    return {
        {"tool", "nlsverify"},
        {"version", kToolVersion},
        {"subcommand", subcommand},
        {"config_hash", "fnv1a64:" + fnv1a_hex(canonical)},
        {"config", json::parse(canonical)},
        {"tolerances",
         {{"remainder_tol", cfg.remainder.tol},
          {"remainder_relative", cfg.remainder.relative},
          {"max_iter", cfg.remainder.max_iter},
          {"blowup_factor", cfg.remainder.blowup_factor}}},
        {"status", "ok"},
    };
}

SolverConfig solver_config(const ExperimentConfig& cfg) {
    SolverConfig s;
    s.backend = cfg.backend;
    s.remainder = cfg.remainder;
    s.lebesgue_base = cfg.lebesgue_base;
    return s;
}

SobolevSpec smallness_spec(int n) { return SobolevSpec(2 * n + 1, 4.0 * n + 2.0); }

struct Prepared {
    GridFunction data;
    std::optional<RescaledData> rescaled;
};

Prepared prepare(const ExperimentConfig& cfg) {
    GridFunction raw = initial_data(cfg);
    if (!cfg.eps) return {raw, std::nullopt};
    RescaledData r = rescale_to_smallness(raw, smallness_spec(cfg.depth), *cfg.eps);
    GridFunction data = r.data;
    return {data, r};
}

void note_rescale(json& manifest, const Prepared& p) {
    if (!p.rescaled) return;
    manifest["rescale"] = {{"lambda", p.rescaled->lambda}, {"norm", p.rescaled->norm}};
}

TimeGrid time_grid(const ExperimentConfig& cfg) { return TimeGrid(0.0, cfg.time.dt, cfg.time.steps); }

json solve_summary(const NlsSolution& sol) {
    return {
        {"iterations", sol.iterations},
        {"residual", sol.residual},
        {"differences", sol.differences},
        {"s0_remainder", s0_norm(*sol.decomposition.remainder)},
        {"level_norms", sol.decomposition.level_norms},
        {"level_exponents", sol.decomposition.level_exponents},
    };
}

std::string series_csv(const DiagnosticsSeries& s) {
    std::ostringstream out;
    write_csv(out, s);
    return out.str();
}

Artifacts run_evolve(const ExperimentConfig& cfg, json& manifest) {
    const Prepared p = prepare(cfg);
    note_rescale(manifest, p);
    const NlsSolution sol = solve_nls(p.data, cfg.depth, time_grid(cfg), solver_config(cfg));
    manifest["solve"] = solve_summary(sol);
    std::ostringstream it;
    it << "iteration,difference\n";
    for (std::size_t i = 0; i < sol.differences.size(); ++i) it << i + 1 << ',' << num(sol.differences[i]) << '\n';
    return {{"diagnostics.csv", series_csv(compute_series(sol.decomposition))}, {"iterations.csv", it.str()}};
}

OracleConfig oracle_config(const ExperimentConfig& cfg) {
    OracleConfig oc = cfg.oracle;
    oc.dt = cfg.time.dt;
    return oc;
}

Artifacts run_oracle(const ExperimentConfig& cfg, json& manifest) {
    const Prepared p = prepare(cfg);
    note_rescale(manifest, p);
    const double t_end = cfg.time.dt * cfg.time.steps;
    const Trajectory u = integrate_direct(p.data, t_end, oracle_config(cfg));
    const double m0 = mass(u[0]);
    const double e0 = energy(u[0]);
    double md = 0.0;
    double ed = 0.0;
    std::ostringstream out;
    out << "t,mass,energy,linf\n";
    for (std::size_t m = 0; m < u.size(); ++m) {
        const double ms = mass(u[m]);
        const double es = energy(u[m]);
        if (m0 > 0.0) md = std::max(md, std::abs(ms - m0) / m0);
        if (e0 > 0.0) ed = std::max(ed, std::abs(es - e0) / e0);
        out << num(u.time_grid().time(m)) << ',' << num(ms) << ',' << num(es) << ',' << num(lp_norm(u[m], kInf))
            << '\n';
    }
    manifest["oracle"] = {{"mass_drift", md}, {"energy_drift", ed}, {"slices", u.size()}};
    return {{"oracle.csv", out.str()}};
}

Artifacts run_compare(const ExperimentConfig& cfg, json& manifest) {
    const Prepared p = prepare(cfg);
    note_rescale(manifest, p);
    const TimeGrid tg = time_grid(cfg);
    const NlsSolution sol = solve_nls(p.data, cfg.depth, tg, solver_config(cfg));
    const Trajectory oracle = integrate_direct(p.data, tg.t_end(), oracle_config(cfg));
    const CompareReport rep = compare(sol.u, oracle);
    double peak = 0.0;
    for (const auto& s : oracle.slices()) peak = std::max(peak, lp_norm(s, kInf));
    manifest["solve"] = solve_summary(sol);
    manifest["compare"] = {{"linf", rep.linf}, {"l2", rep.l2}, {"linf_relative", peak > 0.0 ? rep.linf / peak : 0.0}};
    std::ostringstream out;
    out << "t,linf,l2\n";
    for (std::size_t m = 0; m < tg.n_nodes(); ++m) {
        out << num(tg.time(m)) << ',' << num(rep.linf_series[m]) << ',' << num(rep.l2_series[m]) << '\n';
    }
    return {{"compare.csv", out.str()}};
}

Artifacts run_sweep(const ExperimentConfig& cfg, json& manifest) {
    const GridFunction raw = initial_data(cfg);
    const int n = cfg.depth;
    const TimeGrid tg = time_grid(cfg);
    std::vector<double> norms;
    std::vector<double> s0;
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(n));
    json runs = json::array();
    std::ostringstream out;
    out << "eps,lambda,norm,s0_remainder,iterations";
    for (int j = 0; j < n; ++j) out << ",level_" << j;
    out << '\n';
    for (double eps : cfg.sweep_eps) {
        const RescaledData r = rescale_to_smallness(raw, smallness_spec(n), eps);
        const NlsSolution sol = solve_nls(r.data, n, tg, solver_config(cfg));
        const double s = s0_norm(*sol.decomposition.remainder);
        norms.push_back(r.norm);
        s0.push_back(s);
        out << num(eps) << ',' << num(r.lambda) << ',' << num(r.norm) << ',' << num(s) << ',' << sol.iterations;
        for (int j = 0; j < n; ++j) {
            levels[j].push_back(sol.decomposition.level_norms[j]);
            out << ',' << num(sol.decomposition.level_norms[j]);
        }
        out << '\n';
        runs.push_back({{"eps", eps}, {"lambda", r.lambda}, {"iterations", sol.iterations}, {"residual", sol.residual}});
    }
    json level_fits = json::array();
    for (int j = 0; j < n; ++j) {
        level_fits.push_back({{"level", j}, {"slope", loglog_slope(norms, levels[j])}, {"target", 2 * j + 1}});
    }
    manifest["runs"] = runs;
    manifest["fits"] = {
        {"remainder_slope", loglog_slope(norms, s0)},
        {"remainder_target", 2 * n + 1},
        {"levels", level_fits},
    };
    return {{"sweep.csv", out.str()}};
}

Artifacts run_dispersive(const ExperimentConfig& cfg, json& manifest) {
    const Prepared p = prepare(cfg);
    note_rescale(manifest, p);
    const int samples = cfg.dispersive.samples;
    std::vector<double> times;
    for (int m = 0; m < samples; ++m) times.push_back(cfg.dispersive.t_end * m / (samples - 1));
    std::ostringstream out;
    out << "t,p,ratio\n";
    json sups = json::array();
    for (double exponent : cfg.dispersive.exponents) {
        double sup = 0.0;
        for (double t : times) {
            const double r = dispersive_ratio(p.data, t, exponent);
            sup = std::max(sup, r);
            out << num(t) << ',' << num(exponent) << ',' << num(r) << '\n';
        }
        sups.push_back({{"p", exponent_json(exponent)}, {"sup_ratio", sup}});
    }
    manifest["fits"] = {{"sup_ratio", sups}};
    return {{"dispersive.csv", out.str()}};
}

Artifacts run_gronwall(const ExperimentConfig& cfg, json& manifest) {
    const Prepared p = prepare(cfg);
    note_rescale(manifest, p);
    const NlsSolution sol = solve_nls(p.data, cfg.depth, time_grid(cfg), solver_config(cfg));
    const DiagnosticsSeries series = compute_series(sol.decomposition);
    const GronwallVerdict v = gronwall_verdict(series);
    manifest["solve"] = solve_summary(sol);
    manifest["fits"] = {{"gronwall_c", v.c_fit}, {"gronwall_pass", v.pass}, {"holder_constant", holder_constant(series)}};
    return {{"gronwall.csv", series_csv(series)}};
}

std::string usage(const CLI::App& app) { return app.help(); }

void write_artifacts(const std::filesystem::path& dir, const Artifacts& artifacts) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, body] : artifacts) {
        std::ofstream f(dir / name, std::ios::binary);
        f << body;
        if (!f) throw Error(ErrorKind::Io, "cannot write " + (dir / name).string());
    }
}

} // namespace

Artifacts execute(const std::string& subcommand, const ExperimentConfig& cfg) {
    validate_for(cfg, subcommand);
    json manifest = base_manifest(subcommand, cfg);
    Artifacts a;
    if (subcommand == "evolve") {
        a = run_evolve(cfg, manifest);
    } else if (subcommand == "oracle") {
        a = run_oracle(cfg, manifest);
    } else if (subcommand == "compare") {
        a = run_compare(cfg, manifest);
    } else if (subcommand == "sweep-eps") {
        a = run_sweep(cfg, manifest);
    } else if (subcommand == "verify-dispersive") {
        a = run_dispersive(cfg, manifest);
    } else if (subcommand == "check-gronwall") {
        a = run_gronwall(cfg, manifest);
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown subcommand " + subcommand);
    }
    a["manifest.json"] = manifest.dump(2) + "\n";
    return a;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Picard decomposition experiments for the defocusing cubic NLS on the line", "nlsverify"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::string out_dir;
    std::string backend;
    int depth = 0;
    double eps = 0.0;
    bool seedless = false;
    for (const auto& [name, description] : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "INI experiment file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--backend", backend, "free propagator")->check(CLI::IsMember({"fourier", "kernel"}));
        sub->add_option("--depth", depth, "Picard depth n")->check(CLI::Range(1, 16));
        sub->add_option("--eps", eps, "rescale the data to this size")->check(CLI::PositiveNumber);
        sub->add_flag("--seedless", seedless, "run twice and require byte-identical outputs");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << usage(app);
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << usage(app);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "nlsverify: " << e.what() << "\n\n" << usage(app);
        return kExitUsage;
    }
    const std::string subcommand = app.get_subcommands().front()->get_name();

    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!backend.empty()) {
            cfg.backend.kind = backend == "kernel" ? BackendKind::OscillatoryKernel : BackendKind::FourierMultiplier;
        }
        if (depth > 0) cfg.depth = depth;
        if (eps > 0.0) {
            cfg.eps = eps;
            cfg.sweep_eps = {eps};
        }
        validate_for(cfg, subcommand);
    } catch (const ConfigError& e) {
        err << "nlsverify: " << e.what() << '\n';
        return kExitConfig;
    }

    Artifacts artifacts;
    try {
        artifacts = execute(subcommand, cfg);
        if (seedless && execute(subcommand, cfg) != artifacts) {
            throw Error(ErrorKind::InvalidArgument, "determinism check failed: reruns differ");
        }
    } catch (const ConfigError& e) {
        err << "nlsverify: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        json manifest = base_manifest(subcommand, cfg);
        manifest["status"] = "failed";
        manifest["failure"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        try {
            write_artifacts(cfg.out_dir, {{"manifest.json", manifest.dump(2) + "\n"}});
        } catch (const std::exception& io) {
            err << "nlsverify: " << io.what() << '\n';
        }
        err << "nlsverify: solver failure: " << e.what() << '\n';
        return kExitSolver;
    }

    try {
        if (seedless) {
            json m = json::parse(artifacts["manifest.json"]);
            m["determinism"] = "verified";
            artifacts["manifest.json"] = m.dump(2) + "\n";
        }
        write_artifacts(cfg.out_dir, artifacts);
    } catch (const std::exception& e) {
        err << "nlsverify: " << e.what() << '\n';
        return kExitSolver;
    }
    for (const auto& [name, body] : artifacts) out << (std::filesystem::path(cfg.out_dir) / name).string() << '\n';
    return kExitOk;
}

} // namespace nls::cli
