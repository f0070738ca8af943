#pragma once

// Independent reconstruction of the standard-coordinate matrix B from the
// balanced system E = principal + sum lambda^{-i/2} Theta_i by undoing the
// transformations Z = T Q V Z_E, and of the tracking matrices from E via S~.

#include "shockstab/eigensystem.hpp"
#include "shockstab/freq_bounds.hpp"

namespace oracle {

using namespace shockstab;

struct ChainError {
    double B = 0;  // relative reconstruction error of B
    double F = 0;  // relative error of the tracking system
};

inline CMat5 standard_B(const ProfilePoint& q, const ModelParams& p, double em, cd l) {
    const Coefficients c = coefficients(q, p, em);
    const double G = p.gruneisen, nu = p.nu, v = q.v, ux = q.v_x;
    CMat5 B = CMat5::Zero();
    B(0, 0) = -l;
    B(0, 3) = 1;
    B(1, 3) = 1;
    B(2, 4) = 1;
    B(3, 0) = l * (c.f - v);
    B(3, 1) = l * v + G * ux;
    B(3, 3) = c.f;
    B(3, 4) = G;
    B(4, 0) = l * c.h;
    B(4, 1) = v * ux / nu - q.u_xx;
    B(4, 2) = l * v / nu;
    B(4, 3) = c.g - c.h;
    B(4, 4) = v / nu;
    return B;
}

inline ChainError chain_error(const ProfilePoint& q, const ModelParams& p, double em, cd l) {
    const Coefficients c = coefficients(q, p, em);
    const double G = p.gruneisen, nu = p.nu, v = q.v;
    const cd s = std::sqrt(l);
    const double j = ((G * em - (v - 1.0)) * q.v_x + q.e_x) / nu;

    CMat5 T = CMat5::Identity(), dT = CMat5::Zero();
    T(3, 0) = v - c.f;
    T(4, 0) = -c.h;
    dT(3, 0) = -q.v_x;
    dT(4, 0) = j;
    CMat5 Q = CMat5::Identity(), dQ = CMat5::Zero();
    Q(0, 1) = -v / l;
    Q(0, 3) = 1.0 / l;
    dQ(0, 1) = -q.v_x / l;
    CMat5 V = CMat5::Identity();
    V(3, 3) = V(4, 4) = s;

    CMat5 E = CMat5::Zero();
    E(0, 0) = -l;
    E(1, 3) = s;
    E(2, 4) = s;
    E(3, 1) = s * v;
    E(4, 2) = s * v / nu;
    const auto th = theta_matrices(q, p, em);
    for (int i = 0; i < 5; ++i) E += std::pow(s, -i) * th[i].cast<cd>();

    const CMat5 M = T * Q * V, dM = (dT * Q + T * dQ) * V;
    const CMat5 Minv = M.inverse();
    const CMat5 B = standard_B(q, p, em, l);
    ChainError out;
    out.B = (M * E * Minv + dM * Minv - B).norm() / std::max(1.0, B.norm());

    const CMat5 S = balance_transform(q, p).cast<cd>(), dS = balance_transform_dx(q, p).cast<cd>();
    const CMat5 Si = S.inverse();
    const CMat5 X = Si * E * S - Si * dS;
    const TrackingMatrices tm = tracking_matrices(q, p, em);
    CMat5 Y = principal_part(q, p, l);
    for (int i = 0; i < 5; ++i) Y += std::pow(s, -i) * tm.F[i].cast<cd>();
    out.F = (X - Y).norm() / std::max(1.0, X.norm());
    return out;
}

}  // namespace oracle
