#include "shockstab/gas_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "shockstab/error.hpp"

namespace shockstab {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

double JumpResiduals::max_abs() const {
    return std::max({std::abs(mass), std::abs(momentum), std::abs(energy)});
}

double v_star(double gruneisen) {
    if (!(gruneisen > 0.0)) fail(ErrorKind::domain, "Gruneisen constant must be positive, got " + fmt(gruneisen));
    return gruneisen / (gruneisen + 2.0);
}

void validate(const ModelParams& p) {
    if (!(p.gruneisen > 0.0)) fail(ErrorKind::domain, "Gamma must be positive, got " + fmt(p.gruneisen));
    if (!(p.nu > 0.0)) fail(ErrorKind::domain, "nu must be positive, got " + fmt(p.nu));
    if (!(p.mu > 0.0)) fail(ErrorKind::domain, "mu must be positive, got " + fmt(p.mu));
    if (std::isnan(p.v_plus)) fail(ErrorKind::domain, "v_plus is unset");
    const double vs = v_star(p.gruneisen);
    if (p.v_plus < vs)
        fail(ErrorKind::physicality, "v_plus = " + fmt(p.v_plus) + " is below v* = " + fmt(vs));
    if (p.v_plus > 1.0) fail(ErrorKind::domain, "v_plus = " + fmt(p.v_plus) + " exceeds 1");
}

Endstates rankine_hugoniot(const ModelParams& p) {
    validate(p);
    const double G = p.gruneisen;
    Endstates s;
    s.v_star = v_star(G);
    s.v_plus = p.v_plus;
    s.u_plus = p.v_plus - 1.0;
    s.e_minus = (G + 2.0) * (p.v_plus - s.v_star) / (2.0 * G * (G + 1.0));
    s.e_plus = p.v_plus * (G + 2.0 - G * p.v_plus) / (2.0 * G * (G + 1.0));
    return s;
}

JumpResiduals jump_residuals(const Endstates& s, double G) {
    const double du = s.u_plus - s.u_minus;
    JumpResiduals r;
    r.mass = (s.v_plus - s.v_minus) - du;
    r.momentum = du + G * (s.e_plus / s.v_plus - s.e_minus / s.v_minus);
    r.energy = (s.e_plus - s.e_minus) + 0.5 * (s.u_plus * s.u_plus - s.u_minus * s.u_minus) +
               G * (s.e_plus * s.u_plus / s.v_plus - s.e_minus * s.u_minus / s.v_minus);
    return r;
}

double mach_number(const ModelParams& p) {
    validate(p);
    // (Gamma + 2)(v+ - v*) written so that v+ = 1 gives exactly 2 and M = 1
    const double G = p.gruneisen;
    const double d = 2.0 * p.v_plus + G * (p.v_plus - 1.0);
    if (p.v_plus <= v_star(G) || d <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(2.0 / d);
}

double mach_from_sound_speed(const Endstates& s, double G) {
    const double c2 = G * (G + 1.0) * s.e_minus;
    if (c2 <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(c2);
}

double v_plus_for_mach(double G, double mach) {
    if (!(mach >= 1.0)) fail(ErrorKind::domain, "Mach number must be >= 1, got " + fmt(mach));
    return v_star(G) + 2.0 / ((G + 2.0) * mach * mach);
}

double eucken_nu_over_mu(double gamma) {
    if (!(gamma >= 1.0))
        fail(ErrorKind::domain, "adiabatic index must be >= 1, got " + fmt(gamma));
    return 0.75 * (9.0 * gamma - 5.0) / 4.0;
}

ModelParams air_defaults() {
    ModelParams p;
    p.gruneisen = 0.4;
    p.nu = 1.47;
    p.mu = 1.0;
    p.v_plus = std::numeric_limits<double>::quiet_NaN();
    return p;
}

}  // namespace shockstab
