#include "shockstab/stability.hpp"

#include <algorithm>
#include <chrono>

#include "shockstab/error.hpp"

namespace shockstab {

const char* radius_policy_name(RadiusPolicy p) {
    switch (p) {
        case RadiusPolicy::practical: return "practical";
        case RadiusPolicy::tracking: return "tracking";
        case RadiusPolicy::fixed: return "fixed";
    }
    return "?";
}

RadiusPolicy parse_radius_policy(const std::string& s) {
    if (s == "practical") return RadiusPolicy::practical;
    if (s == "tracking") return RadiusPolicy::tracking;
    if (s == "fixed") return RadiusPolicy::fixed;
    fail(ErrorKind::config, "unknown radius policy '" + s + "' (practical, tracking, fixed)");
}

ProfileWithLengths profile_for_radius(const ModelParams& p, double Lambda, const VerdictOptions& opt) {
    ProfileOptions po = opt.profile;
    for (int attempt = 0;; ++attempt) {
        ShockProfile prof = solve_profile(p, po);
        try {
            TruncationLengths L = truncation_lengths(prof, Lambda, opt.truncation);
            return {std::move(prof), L};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::evaluation || attempt >= opt.domain_retries) throw;
            po.L_minus = 2.0 * prof.L_minus();
            po.L_plus = 2.0 * prof.L_plus();
        }
    }
}

namespace {

// The bound needs its own profile before the truncation radius is known; the
// default domain is ample for the x-maximum, which sits near the shock.
TrackingBound bound_for(const ModelParams& p, const VerdictOptions& opt) {
    return tracking_bound(solve_profile(p, opt.profile), 100.0, opt.norm);
}

}  // namespace

StabilityReport stability_verdict(const ModelParams& p, const VerdictOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    require_spectral_params(p);

    StabilityReport r;
    r.params = p;
    r.ends = rankine_hugoniot(p);
    r.mach = mach_number(p);

    const TrackingBound tb = bound_for(p, opt);
    r.Lambda_star = tb.Lambda_star;
    r.tracking_converged = tb.converged;

    // the fit samples the real axis up to the tracking radius, so lengths must cover it
    double L_radius = r.Lambda_star;
    if (opt.policy == RadiusPolicy::fixed) L_radius = opt.fixed_radius;
    ProfileWithLengths pl = profile_for_radius(p, L_radius, opt);
    const ShockProfile& prof = pl.profile;
    r.theta_minus = prof.theta_minus();
    r.theta_plus = prof.theta_plus();
    r.L_minus = pl.lengths.L_minus;
    r.L_plus = pl.lengths.L_plus;

    EvansSystem sys(prof, r.L_minus, r.L_plus, opt.evans);
    switch (opt.policy) {
        case RadiusPolicy::fixed: r.radius_used = opt.fixed_radius; break;
        case RadiusPolicy::tracking: r.radius_used = r.Lambda_star; break;
        case RadiusPolicy::practical: {
            EvansEvaluator ev(sys, opt.contour);
            r.hf = hf_fit([&](double l) { return ev.real(l); }, r.Lambda_star);
            const PracticalRadius pr = practical_radius([&](double rad) { return ev.quarter_arc(rad); }, r.hf,
                                                        r.Lambda_star, opt.hf_tolerance);
            r.practical_radius = pr.radius;
            r.practical_converged = pr.converged;
            r.hf.valid_radius = pr.radius;
            r.hf.flagged = !pr.converged;
            r.radius_used = pr.converged ? pr.radius : r.Lambda_star;
            break;
        }
    }
    r.contour = evans_contour(sys, {r.radius_used, opt.n_points}, opt.contour);
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace shockstab
