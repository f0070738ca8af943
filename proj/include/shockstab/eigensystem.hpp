#pragma once

#include <array>

#include "shockstab/gas_model.hpp"
#include "shockstab/profile.hpp"
#include "shockstab/types.hpp"

namespace shockstab {

// Coefficients of the linearized system along the profile (mu = 1).
struct Coefficients {
    double f, g, h;
};

Coefficients coefficients(const ProfilePoint& q, const ModelParams& p, double e_minus);

// A(x, lambda) = A0(x) + lambda A1(x), W = (eps, eps', u, v, v').
struct AffineMatrix {
    RMat5 A0 = RMat5::Zero();
    RMat5 A1 = RMat5::Zero();
    CMat5 operator()(cd lambda) const { return A0.cast<cd>() + lambda * A1.cast<cd>(); }
};

AffineMatrix assemble_affine(const ProfilePoint& q, const ModelParams& p, double e_minus);
CMat5 assemble_A(const ProfilePoint& q, cd lambda, const ModelParams& p, double e_minus);
CMat5 assemble_A(double x, cd lambda, const ShockProfile& prof);

// Profile point at the rest state at -inf / +inf.
ProfilePoint endstate_point(Side side, const Endstates& s);
AffineMatrix limit_affine(Side side, const ModelParams& p, const Endstates& s);
CMat5 limit_matrix(cd lambda, Side side, const ModelParams& p, const Endstates& s);

struct SubspaceBasis {
    cd lambda;
    Side side = Side::minus;
    CMatX vectors;  // 5 x 2 (unstable, -inf) or 5 x 3 (stable, +inf)
    CMat5 projector;
    cd eigen_sum;                   // trace of A on the subspace
    std::array<cd, 5> eigenvalues;  // subspace eigenvalues first
    double gap = 0;                 // real-part separation of the two groups
};

// Orthonormal Schur basis of U-(lambda) or S+(lambda) with its spectral projector.
SubspaceBasis endstate_splitting(cd lambda, Side side, const AffineMatrix& limit);
SubspaceBasis endstate_splitting(cd lambda, Side side, const ModelParams& p);

struct ProjectorDerivative {
    CMat5 P;
    CMat5 dP;  // d/dlambda
    cd eigen_sum;
};

ProjectorDerivative projector_derivative(cd lambda, Side side, const AffineMatrix& limit);

// Ensures the eigenvalue system can be built for these parameters.
void require_spectral_params(const ModelParams& p);

}  // namespace shockstab
