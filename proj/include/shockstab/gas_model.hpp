#pragma once

namespace shockstab {

// Rescaled problem: s = -1, v- = 1, u- = 0.  v+ ranges over [v*, 1].
struct ModelParams {
    double gruneisen = 0.4;  // Gamma = gamma - 1
    double nu = 1.47;        // heat conduction kappa / c_v
    double mu = 1.0;
    double v_plus = 0.0;     // NaN means unset
};

struct Endstates {
    double v_minus = 1.0;
    double u_minus = 0.0;
    double e_minus = 0.0;
    double v_plus = 0.0;
    double u_plus = 0.0;
    double e_plus = 0.0;
    double v_star = 0.0;
};

struct JumpResiduals {
    double mass;
    double momentum;
    double energy;
    double max_abs() const;
};

double v_star(double gruneisen);

// Throws on Gamma, nu, mu <= 0, unset v+, v+ < v* or v+ > 1.
void validate(const ModelParams& p);

Endstates rankine_hugoniot(const ModelParams& p);

JumpResiduals jump_residuals(const Endstates& s, double gruneisen);

// +infinity at the strong-shock endpoint v+ = v*.
double mach_number(const ModelParams& p);

// Same quantity through the sound speed at the upstream state.
double mach_from_sound_speed(const Endstates& s, double gruneisen);

// Inverse of mach_number in v+ at fixed Gamma.
double v_plus_for_mach(double gruneisen, double mach);

double eucken_nu_over_mu(double gamma);

ModelParams air_defaults();

}  // namespace shockstab
