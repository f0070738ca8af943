// Command-line front end: single-point diagnostics and parameter sweeps.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "shockstab/error.hpp"
#include "shockstab/stability.hpp"
#include "shockstab/sweep.hpp"

using namespace shockstab;
using nlohmann::json;

namespace {

struct PointArgs {
    double gamma = 2.0 / 3.0;
    double nu = 1.0;
    double mu = 1.0;
    std::optional<double> vplus;  // default v*

    ModelParams params() const {
        ModelParams p{gamma, nu, mu, vplus ? *vplus : v_star(gamma)};
        validate(p);
        return p;
    }
};

void add_point(CLI::App* c, PointArgs& a) {
    c->add_option("--gamma", a.gamma, "Gruneisen constant Gamma = gamma - 1")->capture_default_str();
    c->add_option("--nu", a.nu, "heat conduction coefficient")->capture_default_str();
    c->add_option("--mu", a.mu, "viscosity (the eigenvalue problem needs mu = 1)")->capture_default_str();
    c->add_option("--vplus", a.vplus, "downstream specific volume (default: v*)");
}

json num(double x) { return std::isfinite(x) ? json(x) : json(std::to_string(x)); }

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::io, "cannot write " + path);
    return f;
}

int cmd_endstates(const PointArgs& a) {
    const ModelParams p = a.params();
    const Endstates s = rankine_hugoniot(p);
    const JumpResiduals r = jump_residuals(s, p.gruneisen);
    const json j{{"gamma", p.gruneisen},      {"v_plus", s.v_plus}, {"u_plus", s.u_plus},
                 {"e_minus", s.e_minus},      {"e_plus", s.e_plus}, {"v_star", s.v_star},
                 {"mach", num(mach_number(p))}, {"max_jump_residual", r.max_abs()}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_profile(const PointArgs& a, const std::string& out) {
    const ModelParams p = a.params();
    const ShockProfile prof = solve_profile(p);
    if (out.empty()) {
        prof.write(std::cout);
    } else {
        auto f = open_out(out);
        prof.write(f);
        std::cerr << "wrote " << prof.mesh().size() << " points to " << out << '\n';
    }
    std::cerr << "theta- = " << prof.theta_minus() << ", theta+ = " << prof.theta_plus() << ", domain ["
              << -prof.L_minus() << ", " << prof.L_plus() << "], residual " << prof.max_residual() << '\n';
    return 0;
}

int cmd_bound(const PointArgs& a, const std::string& norm_s, bool practical) {
    const ModelParams p = a.params();
    require_spectral_params(p);
    const NormKind norm = parse_norm(norm_s.c_str());
    const ShockProfile prof = solve_profile(p);
    const TrackingBound tb = tracking_bound(prof, 100.0, norm);
    json j{{"Lambda_star", tb.Lambda_star},
           {"norm", norm_name(norm)},
           {"iterations", tb.iterates.size() - 1},
           {"converged", tb.converged},
           {"alpha_profile", compute_alpha(prof)}};
    if (practical) {
        VerdictOptions vo;
        const ProfileWithLengths pl = profile_for_radius(p, tb.Lambda_star, vo);
        EvansSystem sys(pl.profile, pl.lengths.L_minus, pl.lengths.L_plus);
        EvansEvaluator ev(sys);
        const HFApproximant hf = hf_fit([&](double l) { return ev.real(l); }, tb.Lambda_star);
        const PracticalRadius pr =
            practical_radius([&](double r) { return ev.quarter_arc(r); }, hf, tb.Lambda_star);
        j["C"] = hf.C;
        j["alpha"] = hf.alpha;
        j["fit_residual"] = hf.fit_residual;
        j["practical_radius"] = pr.radius;
        j["practical_converged"] = pr.converged;
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_winding(const PointArgs& a, std::optional<double> radius, const std::string& policy, int points,
                const std::string& out) {
    const ModelParams p = a.params();
    VerdictOptions vo;
    vo.n_points = points;
    if (radius) {
        vo.policy = RadiusPolicy::fixed;
        vo.fixed_radius = *radius;
    } else {
        vo.policy = parse_radius_policy(policy);
    }
    const StabilityReport r = stability_verdict(p, vo);
    json j = record_to_json(record_from_report(r));
    j["refinement_depth"] = r.contour.refinement_depth;
    j["samples"] = r.contour.samples.size();
    std::cout << j.dump(2) << '\n';
    if (!out.empty()) {
        auto t = open_out(out + ".txt");
        write_contour(t, r.contour);
        auto s = open_out(out + ".svg");
        s << contour_svg(r.contour, "Gamma=" + std::to_string(p.gruneisen) + " v+=" + std::to_string(p.v_plus));
    }
    return r.contour.winding > 0 ? 10 : 0;
}

SweepConfig sweep_config(const std::string& config, const std::string& out, std::optional<int> jobs, bool resume,
                         std::optional<int> points) {
    SweepConfig c = config.empty() ? SweepConfig{} : load_config(config);
    if (config.empty()) c.out_dir = default_out_dir();
    if (!out.empty()) c.out_dir = out;
    if (jobs) c.jobs = *jobs;
    if (resume) c.resume = true;
    if (points) c.contour_points = *points;
    validate(c);
    return c;
}

int cmd_sweep(const SweepConfig& c) {
    const SweepResult res = run_sweep(c, [](const SweepRecord& r, std::size_t n, std::size_t total) {
        std::cerr << '[' << n << '/' << total << "] Gamma=" << r.params.gruneisen << " nu=" << r.params.nu
                  << " v+=" << r.params.v_plus << ": "
                  << (r.ok() ? "winding " + std::to_string(*r.winding) : r.status + " " + r.message) << '\n';
    });
    emit_outputs(res, c);
    std::size_t stable = 0, bad = 0;
    for (const auto& r : res.records) (r.ok() && *r.winding == 0 ? stable : bad) += 1;
    std::cerr << res.records.size() << " records (" << res.computed << " computed), " << stable << " stable, " << bad
              << " unstable or failed; outputs in " << c.out_dir << '\n';
    for (const auto& s : res.spot_checks)
        if (!s.agrees())
            std::cerr << "spot check " << s.key << ": winding " << s.winding << " vs " << s.refined_winding
                      << " on the refined contour\n";
    return exit_code(res.records);
}

int cmd_plot(const SweepConfig& c) {
    Journal j(c.out_dir + "/journal.jsonl");
    SweepResult res;
    res.records = j.load();
    if (res.records.empty()) fail(ErrorKind::io, "no records in " + j.path());
    emit_outputs(res, c);
    std::cerr << "plotted " << res.records.size() << " records into " << c.out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evans-function stability of viscous shock profiles (ideal gas, Navier-Stokes)"};
    app.require_subcommand(1);

    PointArgs pa;
    std::string out, config, norm = "l2", policy = "practical";
    std::optional<double> radius;
    std::optional<int> jobs, points;
    bool resume = false, practical = false;

    auto* c_end = app.add_subcommand("endstates", "Rankine-Hugoniot endstates and Mach number");
    add_point(c_end, pa);
    auto* c_prof = app.add_subcommand("profile", "solve the traveling-wave profile");
    add_point(c_prof, pa);
    c_prof->add_option("--out", out, "output file (default stdout)");
    auto* c_bound = app.add_subcommand("bound", "high-frequency tracking bound");
    add_point(c_bound, pa);
    c_bound->add_option("--norm", norm, "matrix norm: l1, l2 or linf")->capture_default_str();
    c_bound->add_flag("--practical", practical, "also fit the high-frequency approximant");
    auto* c_wind = app.add_subcommand("winding", "winding number of the Evans function");
    add_point(c_wind, pa);
    c_wind->add_option("--radius", radius, "fixed contour radius (overrides --policy)");
    c_wind->add_option("--policy", policy, "practical, tracking or fixed")->capture_default_str();
    c_wind->add_option("--points", points, "contour intervals (default 180)");
    c_wind->add_option("--out", out, "write <out>.txt and <out>.svg contour files");
    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep with journal and summary outputs");
    c_sweep->add_option("--config", config, "JSON config file");
    c_sweep->add_option("--out", out, "output directory (default $SHOCKSTAB_OUT or shockstab_out)");
    c_sweep->add_option("--jobs", jobs, "worker threads");
    c_sweep->add_flag("--resume", resume, "skip points already in the journal");
    c_sweep->add_option("--points", points, "contour intervals");
    auto* c_plot = app.add_subcommand("plot", "regenerate tables and plots from a journal");
    c_plot->add_option("--config", config, "JSON config file");
    c_plot->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*c_end) return cmd_endstates(pa);
        if (*c_prof) return cmd_profile(pa, out);
        if (*c_bound) return cmd_bound(pa, norm, practical);
        if (*c_wind) return cmd_winding(pa, radius, policy, points.value_or(180), out);
        if (*c_sweep) return cmd_sweep(sweep_config(config, out, jobs, resume, points));
        if (*c_plot) return cmd_plot(sweep_config(config, out, std::nullopt, false, std::nullopt));
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << '\n';
        for (const auto& t : e.trace()) std::cerr << "  " << t << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
