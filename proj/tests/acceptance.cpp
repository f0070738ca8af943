// Acceptance checks: one PASS/FAIL line per criterion, tolerances and time
// budgets pinned.  --expect-red N reports criterion N but keeps the exit code
// clean when it fails, for criteria known to be unattainable (see README).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chain_oracle.hpp"
#include "shockstab/error.hpp"
#include "shockstab/linalg.hpp"
#include "shockstab/stability.hpp"
#include "shockstab/sweep.hpp"

using namespace shockstab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

ModelParams point(double G, double nu, double vp) { return {G, nu, 1.0, vp}; }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// 1. jump conditions
Outcome jump_conditions() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double G = 0.2 + 1.8 * U(rng), vs = v_star(G);
        const ModelParams p = point(G, 1.0, vs + (1.0 - vs) * U(rng));
        worst = std::max(worst, jump_residuals(rankine_hugoniot(p), G).max_abs());
    }
    return {worst <= 1e-12, fmt("max residual %.2e (tol 1e-12)", worst)};
}

// 2. decay rates and truncation lengths against the tabulated values
Outcome decay_and_lengths() {
    struct Row {
        double G, vp, Lm, tm, Lp, tp;
    };
    const std::vector<Row> rows{
        {0.2, 0.7, 68, 0.28, 68, 0.27},     {2.0 / 3.0, 0.7, 85, 0.22, 83, 0.23}, {1.0, 0.7, 98, 0.20, 92, 0.21},
        {0.2, -1, 22, 0.91, 24, 0.83},      {2.0 / 3.0, -1, 36, 0.53, 33, 0.59},  {1.0, -1, 47, 0.41, 40, 0.48},
    };
    double worst_theta = 0, worst_L = 0;
    std::string misses;
    for (const Row& r : rows) {
        const ModelParams p = point(r.G, eucken_nu_over_mu(r.G + 1.0), r.vp < 0 ? v_star(r.G) : r.vp);
        ProfileOptions po;
        po.L_minus = po.L_plus = 200;
        const ShockProfile prof = solve_profile(p, po);
        const TruncationLengths L = truncation_lengths(prof, 100.0);
        const double em = std::abs(prof.theta_minus() - r.tm) / r.tm, ep = std::abs(prof.theta_plus() - r.tp) / r.tp;
        worst_theta = std::max({worst_theta, em, ep});
        worst_L = std::max({worst_L, std::abs(L.L_minus - r.Lm), std::abs(L.L_plus - r.Lp)});
        auto miss = [&](const char* what, double got, double want, double rel) {
            if (rel > 0.02) {
                char buf[128];
                std::snprintf(buf, sizeof buf, " %s[G=%.3g v+=%.3g]=%.4f vs %.2f", what, r.G, p.v_plus, got, want);
                misses += buf;
            }
        };
        miss("theta-", prof.theta_minus(), r.tm, em);
        miss("theta+", prof.theta_plus(), r.tp, ep);
    }
    const bool ok = worst_theta <= 0.02 && worst_L <= 5.0;
    std::string d = fmt("theta max rel dev %.2f%% (tol 2%%), L max dev %.1f (tol 5)", 100 * worst_theta, worst_L);
    if (!misses.empty()) d += ";" + misses;
    return {ok, d};
}

// 3. tracking radii under the best of the three norms
Outcome tracking_radii() {
    struct Row {
        double G, nu, want;
    };
    const std::vector<Row> rows{{2.0 / 3.0, 1, 100.4}, {2.0 / 3.0, 5, 391.3}, {0.2, 5, 1755.6}, {1.0, 1, 73.7}};
    std::vector<ShockProfile> profs;
    for (const Row& r : rows) profs.push_back(solve_profile(point(r.G, r.nu, v_star(r.G))));
    double best = INFINITY;
    NormKind best_norm = NormKind::l2;
    std::string vals;
    for (NormKind n : {NormKind::l1, NormKind::l2, NormKind::linf}) {
        double worst = 0;
        std::string v;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double L = tracking_bound(profs[i], 100.0, n).Lambda_star;
            worst = std::max(worst, std::abs(L - rows[i].want) / rows[i].want);
            v += fmt(" %.1f", L);
        }
        if (worst < best) {
            best = worst;
            best_norm = n;
            vals = v;
        }
    }
    return {best <= 0.10, std::string("norm ") + norm_name(best_norm) + ":" + vals +
                              fmt(", max rel dev %.2f%% (tol 10%%)", 100 * best)};
}

// 4. high-frequency approximant on the semicircle
double hf_error(double nu, double radius) {
    const ModelParams p = point(2.0 / 3.0, nu, v_star(2.0 / 3.0));
    VerdictOptions vo;
    const double Lstar = tracking_bound(solve_profile(p), 100.0).Lambda_star;
    const ProfileWithLengths pl = profile_for_radius(p, std::max(Lstar, radius), vo);
    const EvansSystem sys(pl.profile, pl.lengths.L_minus, pl.lengths.L_plus);
    EvansEvaluator ev(sys);
    const HFApproximant a = hf_fit([&](double l) { return ev.real(l); }, Lstar);
    // the lower quarter arc is the conjugate image (C and alpha are real)
    return approximant_error(ev.quarter_arc(radius, 48), a);
}

Outcome hf_approximant() {
    // each case has its own 5 minute budget
    auto timed = [](double nu, double R, double& secs) {
        const auto t0 = std::chrono::steady_clock::now();
        const double e = hf_error(nu, R);
        secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return e;
    };
    double s1 = 0, s5 = 0;
    const double e1 = timed(1.0, 10.0, s1), e5 = timed(5.0, 40.0, s5);
    return {e1 <= 0.1 && e5 <= 0.1 && s1 < 300 && s5 < 300,
            fmt("nu=1 R=10: %.3f in %.1f s, nu=5 R=40: %.3f in %.1f s (tol 0.1)", e1, s1, e5, s5)};
}

// 5. exterior against polar on the radius-10 contour
Outcome method_agreement() {
    VerdictOptions vo;
    vo.policy = RadiusPolicy::fixed;
    vo.fixed_radius = 10.0;
    double worst = 0;
    std::string d;
    for (double vp : {0.5, v_star(2.0 / 3.0)}) {
        const StabilityReport r = stability_verdict(point(2.0 / 3.0, 1.0, vp), vo);
        worst = std::max(worst, r.contour.method_agreement);
        d += fmt("v+=%.3g: %.2e, ", vp, r.contour.method_agreement);
    }
    return {worst <= 1e-4, d + "tol 1e-4"};
}

// 6. winding numbers on the stability grid
Outcome stability_grid() {
    VerdictOptions vo;
    vo.policy = RadiusPolicy::tracking;
    int n = 0, zero = 0;
    double Rmax = 0;
    std::string bad;
    for (double G : {0.4, 2.0 / 3.0, 1.0})
        for (double nu : {0.5, 1.0, 2.0})
            for (double vp : v_plus_ladder(G, 4)) {
                ++n;
                try {
                    const StabilityReport r = stability_verdict(point(G, nu, vp), vo);
                    Rmax = std::max(Rmax, r.radius_used);
                    if (r.contour.winding == 0) ++zero;
                    else bad += fmt(" [G=%.3g nu=%.3g v+=%.4g: %.0f]", G, nu, vp, r.contour.winding);
                } catch (const Error& e) {
                    bad += fmt(" [G=%.3g nu=%.3g v+=%.4g: error]", G, nu, vp);
                }
            }
    return {zero == n, fmt("%.0f/%.0f points with winding 0, radii up to %.0f", zero, n, Rmax) + bad};
}

// 7. continuity of the contour image at the strong-shock limit
Outcome strong_shock_continuity() {
    VerdictOptions vo;
    vo.policy = RadiusPolicy::fixed;
    vo.fixed_radius = 10.0;
    const double vs = v_star(2.0 / 3.0);
    const StabilityReport a = stability_verdict(point(2.0 / 3.0, 1.0, vs), vo);
    const StabilityReport b = stability_verdict(point(2.0 / 3.0, 1.0, vs + 1e-3), vo);
    std::map<double, cd> da;
    for (const auto& s : a.contour.samples) da[s.t] = s.D_exterior;
    double num = 0, den = 0;
    int matched = 0;
    for (const auto& s : b.contour.samples) {
        auto it = da.find(s.t);
        if (it == da.end()) continue;
        ++matched;
        num = std::max(num, std::abs(s.D_exterior - it->second));
        den = std::max(den, std::abs(it->second));
    }
    const double dev = num / den;
    return {dev <= 0.05 && matched > 0, fmt("sup deviation %.2f%% over %.0f common nodes (tol 5%%)", 100 * dev, matched)};
}

// 8. property suites
Outcome properties() {
    std::vector<std::string> fails;
    // lifted norm bound
    std::mt19937_64 rng(99);
    std::normal_distribution<double> N;
    int ok_lift = 0;
    for (int i = 0; i < 200; ++i) {
        CMatX M(5, 5);
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 5; ++c) M(r, c) = cd(N(rng), N(rng));
        const int k = 2 + i % 2;
        ok_lift += matrix_norm(lift(M, k), NormKind::l1) <= k * matrix_norm(M, NormKind::l1) * (1 + 1e-14);
    }
    if (ok_lift != 200) fails.push_back("lifted norm");

    // constant-coefficient system
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.4);
    const AffineMatrix lim = limit_affine(Side::plus, p, rankine_hugoniot(p));
    const EvansSystem cc([lim](double) { return lim; }, lim, lim, 8.0, 8.0);
    const EvansContour c = evans_contour(cc, {10.0, 60});
    double cdev = 0;
    for (const auto& s : c.samples)
        cdev = std::max(cdev, std::abs(s.D_exterior - c.samples.front().D_exterior) / std::abs(c.samples.front().D_exterior));
    if (cdev > 1e-8) fails.push_back("constant coefficients");

    // conjugate symmetry along explicitly conjugated Kato paths; the x-integration
    // tolerance is tightened because its error is of the order of the target
    const ShockProfile prof = solve_profile(p);
    const TruncationLengths L = truncation_lengths(prof, 10.0);
    EvansOptions tight;
    tight.ode.abs_tol = tight.ode.rel_tol = 1e-10;
    const EvansSystem sys(prof, L.L_minus, L.L_plus, tight);
    double sdev = 0;
    for (cd l : {cd(2, 3), cd(0.3, 8), cd(7, 1)}) {
        auto D = [&](cd z) {
            const std::vector<cd> path{cd(1, 0), z};
            return sys.exterior(z, kato_basis(path, Side::minus, p).back().vectors,
                                kato_basis(path, Side::plus, p).back().vectors);
        };
        const cd a = D(l), b = D(std::conj(l));
        sdev = std::max(sdev, std::abs(b - std::conj(a)) / std::abs(a));
    }
    // and the sample pairs of a contour at default tolerances
    const EvansContour ec = evans_contour(EvansSystem(prof, L.L_minus, L.L_plus), {10.0, 60});
    const std::size_t ns = ec.samples.size();
    for (std::size_t i = 0; i < ns / 2; ++i) {
        const cd a = ec.samples[i].D_exterior, b = ec.samples[ns - 1 - i].D_exterior;
        sdev = std::max(sdev, std::abs(b - std::conj(a)) / std::abs(a));
    }
    if (sdev > 1e-10) fails.push_back("conjugate symmetry");

    // synthetic winding, lambda0 = Lambda/2
    const double R = 10.0;
    const ContourPath cp({R, 180});
    const int w = winding_number(cp, [&](double t) { return cp.point(t) - 0.5 * R; }).winding;
    if (w != 1) fails.push_back("synthetic winding");

    // weak-shock Mach number
    const double M1 = mach_number(point(0.4, 1.0, 1.0));
    if (M1 != 1.0) fails.push_back("weak-shock Mach");

    std::string d = fmt("lift %.0f/200, constant D dev %.1e, conj dev %.1e, synthetic winding %.0f", ok_lift, cdev,
                        sdev, w);
    d += fmt(", M(v+=1)=%.17g", M1);
    for (const auto& f : fails) d += "; failed: " + f;
    return {fails.empty(), d};
}

// 9. coordinate chain
Outcome coordinate_chain() {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.4);
    const ShockProfile prof = solve_profile(p);
    const double em = prof.endstates().e_minus;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const double x = -prof.L_minus() + (prof.L_minus() + prof.L_plus()) * U(rng);
        const cd l = std::polar(0.5 + 1000.0 * U(rng), (U(rng) - 0.5) * 3.14159);
        worst = std::max(worst, oracle::chain_error(prof.at(x), p, em, l).B);
    }
    return {worst <= 1e-12, fmt("max relative reconstruction error %.2e (tol 1e-12)", worst)};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> expect_red, only;
    app.add_option("--expect-red", expect_red, "criteria allowed to fail without failing the run");
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "jump conditions", 1, jump_conditions},
        {2, "decay rates and truncation lengths", 60, decay_and_lengths},
        {3, "tracking radii", 120, tracking_radii},
        {4, "high-frequency approximant", 600, hf_approximant},
        {5, "exterior vs polar", 300, method_agreement},
        {6, "winding on the stability grid", 3600, stability_grid},
        {7, "strong-shock continuity", 600, strong_shock_continuity},
        {8, "property suites", 60, properties},
        {9, "coordinate chain", 10, coordinate_chain},
    };
    const std::set<int> red(expect_red.begin(), expect_red.end()), sel(only.begin(), only.end());
    int unexpected = 0;
    for (const Criterion& c : all) {
        if (!sel.empty() && !sel.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s < c.budget_s;
        const bool pass = o.pass && in_time;
        std::printf("%s %d %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    s, c.budget_s, !pass && red.count(c.id) ? " [expected red]" : "");
        std::fflush(stdout);
        if (!pass && !red.count(c.id)) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
