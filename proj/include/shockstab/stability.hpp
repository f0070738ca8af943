#pragma once

#include <string>

#include "shockstab/evans.hpp"
#include "shockstab/freq_bounds.hpp"
#include "shockstab/gas_model.hpp"
#include "shockstab/profile.hpp"
#include "shockstab/truncation.hpp"

namespace shockstab {

enum class RadiusPolicy {
    practical,  // high-frequency convergence radius, tracking bound if it fails
    tracking,
    fixed,
};

const char* radius_policy_name(RadiusPolicy p);
RadiusPolicy parse_radius_policy(const std::string& s);

struct VerdictOptions {
    RadiusPolicy policy = RadiusPolicy::practical;
    double fixed_radius = 10.0;
    int n_points = 180;
    NormKind norm = NormKind::l2;
    double hf_tolerance = 0.1;
    ProfileOptions profile;
    TruncationOptions truncation;
    EvansOptions evans;
    ContourOptions contour;
    int domain_retries = 3;  // profile re-solves on a larger domain
};

struct StabilityReport {
    ModelParams params;
    Endstates ends;
    double mach = 0;
    double theta_minus = 0, theta_plus = 0;
    double L_minus = 0, L_plus = 0;
    double Lambda_star = 0;
    bool tracking_converged = false;
    double practical_radius = 0;  // 0 when not computed
    bool practical_converged = false;
    HFApproximant hf;
    double radius_used = 0;
    EvansContour contour;
    double wall_ms = 0;
};

// Profile, tracking bound, radius, truncation, contour and winding for one point.
StabilityReport stability_verdict(const ModelParams& p, const VerdictOptions& opt = {});

// Profile on a domain long enough for the truncation ladder at radius Lambda.
struct ProfileWithLengths {
    ShockProfile profile;
    TruncationLengths lengths;
};

ProfileWithLengths profile_for_radius(const ModelParams& p, double Lambda, const VerdictOptions& opt = {});

}  // namespace shockstab
