#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "shockstab/gas_model.hpp"

namespace shockstab {

// Profile state and the derivatives the eigenvalue system needs.  u = v - 1.
struct ProfilePoint {
    double x = 0, v = 1, u = 0, e = 0;
    double v_x = 0, e_x = 0, u_xx = 0;
};

Eigen::Vector2d profile_rhs(double v, double e, const ModelParams& p, double e_minus);
Eigen::Matrix2d profile_rhs_jacobian(double v, double e, const ModelParams& p, double e_minus);

// Point with analytic derivatives at state (v, e).
ProfilePoint profile_point(double x, double v, double e, const ModelParams& p, double e_minus);

// Isoclines bounding the invariant lens: e_e(v) <= e <= e_v(v) for v in [v+, 1].
double isocline_v(double v, const ModelParams& p, double e_minus);  // v' = 0
double isocline_e(double v, const ModelParams& p, double e_minus);  // e' = 0

struct EquilibriumLinearization {
    Eigen::Matrix2d M;
    std::array<std::complex<double>, 2> eigenvalues;  // ascending real part
    Eigen::Matrix2cd eigenvectors;                      // columns match eigenvalues
    double det = 0, trace = 0;
};

// Linearization of the profile ODE about the endstate with volume v (1 or v+).
EquilibriumLinearization equilibrium_jacobian(double v, const ModelParams& p);

struct DecayRates {
    double theta_minus;  // slow rate out of the source U-
    double theta_plus;   // rate into the saddle U+
};

DecayRates decay_rates(const ModelParams& p);

struct ProfileOptions {
    double tol = 1e-9;     // collocation residual at interval quarter points
    double L_minus = 0.0;  // 0: 17/theta- + 10
    double L_plus = 0.0;   // 0: 17/theta+ + 10
    double initial_step = 0.25;
    int max_newton = 40;
    int max_refinements = 14;
    std::size_t max_nodes = 400000;
};

class ShockProfile {
public:
    ShockProfile(ModelParams p, Endstates s, DecayRates rates, std::vector<double> x,
                 std::vector<Eigen::Vector2d> y);

    const ModelParams& params() const { return params_; }
    const Endstates& endstates() const { return ends_; }
    double theta_minus() const { return rates_.theta_minus; }
    double theta_plus() const { return rates_.theta_plus; }
    double L_minus() const { return -x_.front(); }
    double L_plus() const { return x_.back(); }

    const std::vector<double>& mesh() const { return x_; }
    const std::vector<Eigen::Vector2d>& values() const { return y_; }

    // Cubic Hermite state; derivatives come from the ODE at that state.
    ProfilePoint at(double x) const;
    Eigen::Vector2d state(double x) const;

    // Sup of |p' - F(p)| over quarter and mid points of every interval.
    double max_residual() const;
    double midpoint_residual() const;

    // Columnar text: x v u e v_x e_x u_xx, one row per mesh point.
    void write(std::ostream& os) const;

private:
    std::size_t interval(double x) const;

    ModelParams params_;
    Endstates ends_;
    DecayRates rates_;
    std::vector<double> x_;
    std::vector<Eigen::Vector2d> y_;
    std::vector<Eigen::Vector2d> f_;
};

ShockProfile solve_profile(const ModelParams& p, const ProfileOptions& opt = {});

struct ShotTrajectory {
    std::vector<double> x;  // shifted so that v(0) = (1 + v+)/2
    std::vector<Eigen::Vector2d> y;
    double distance_to_minus = 0;  // |(v,e)(x_min) - U-|
};

// Backward integration from U+ along its one-dimensional stable manifold.
ShotTrajectory shoot_profile(const ModelParams& p, double delta = 1e-8, double x_extent = 0.0);

}  // namespace shockstab
