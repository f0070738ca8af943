#include "shockstab/eigensystem.hpp"

#include <sstream>

#include "shockstab/error.hpp"
#include "shockstab/linalg.hpp"

namespace shockstab {

Coefficients coefficients(const ProfilePoint& q, const ModelParams& p, double em) {
    const double G = p.gruneisen, nu = p.nu;
    Coefficients c;
    c.f = 2.0 * q.v - 1.0 - G * em;
    c.g = (G * q.e - (nu + 1.0) * q.v_x) / nu;
    c.h = -q.e_x / q.v;
    return c;
}

AffineMatrix assemble_affine(const ProfilePoint& q, const ModelParams& p, double em) {
    const Coefficients c = coefficients(q, p, em);
    const double G = p.gruneisen, nu = p.nu;
    AffineMatrix a;
    a.A0(0, 1) = 1.0;
    a.A0(1, 1) = q.v / nu;
    a.A0(1, 2) = q.v * q.v_x / nu - q.u_xx;
    a.A0(1, 4) = c.g - c.h;
    a.A0(2, 4) = 1.0;
    a.A0(3, 4) = 1.0;
    a.A0(4, 1) = G;
    a.A0(4, 2) = G * q.v_x;
    a.A0(4, 4) = c.f;

    a.A1(1, 0) = q.v / nu;
    a.A1(1, 3) = c.g;
    a.A1(2, 3) = 1.0;
    a.A1(4, 2) = q.v;
    a.A1(4, 3) = q.v;
    a.A1(4, 4) = -1.0;
    return a;
}

CMat5 assemble_A(const ProfilePoint& q, cd lambda, const ModelParams& p, double em) {
    return assemble_affine(q, p, em)(lambda);
}

CMat5 assemble_A(double x, cd lambda, const ShockProfile& prof) {
    return assemble_A(prof.at(x), lambda, prof.params(), prof.endstates().e_minus);
}

ProfilePoint endstate_point(Side side, const Endstates& s) {
    ProfilePoint q;
    if (side == Side::minus) {
        q.v = s.v_minus;
        q.u = s.u_minus;
        q.e = s.e_minus;
    } else {
        q.v = s.v_plus;
        q.u = s.u_plus;
        q.e = s.e_plus;
    }
    return q;
}

AffineMatrix limit_affine(Side side, const ModelParams& p, const Endstates& s) {
    return assemble_affine(endstate_point(side, s), p, s.e_minus);
}

CMat5 limit_matrix(cd lambda, Side side, const ModelParams& p, const Endstates& s) {
    return limit_affine(side, p, s)(lambda);
}

void require_spectral_params(const ModelParams& p) {
    validate(p);
    if (p.mu != 1.0)
        fail(ErrorKind::domain, "the eigenvalue system is normalized to mu = 1 (rescale: nu -> nu/mu, lambda -> mu lambda)");
    if (p.v_plus == 1.0) fail(ErrorKind::degeneracy, "characteristic limit v_plus = 1: no consistent splitting");
}

namespace {

struct Split {
    OrderedSchur s;
    int k;
    CMatX Y;  // T11 Y - Y T22 = -T12, block-diagonalizing
    double gap;
};

Split split(const CMat5& A, Side side) {
    Split r;
    r.k = subspace_dim(side);
    // U- takes the two largest real parts, S+ the three smallest
    r.s = ordered_schur(A, side == Side::minus);
    const int k = r.k, m = 5 - k;
    const double a = r.s.T(k - 1, k - 1).real(), b = r.s.T(k, k).real();
    r.gap = side == Side::minus ? a - b : b - a;
    const bool ok = side == Side::minus ? (a > 0.0 && b <= 1e-10 * (1.0 + std::abs(b)) ) : (a < 0.0 && b >= -1e-10 * (1.0 + std::abs(b)));
    if (!ok || !(r.gap > 0.0)) {
        std::ostringstream os;
        os << "no consistent splitting: real parts " << a << " | " << b;
        fail(ErrorKind::splitting, os.str());
    }
    const CMatX T11 = r.s.T.topLeftCorner(k, k), T22 = r.s.T.bottomRightCorner(m, m),
                T12 = r.s.T.topRightCorner(k, m);
    r.Y = solve_sylvester(T11, T22, -T12);
    return r;
}

CMat5 projector_from(const Split& r) {
    const int k = r.k, m = 5 - k;
    CMat5 Pt = CMat5::Zero();
    Pt.topLeftCorner(k, k).setIdentity();
    Pt.topRightCorner(k, m) = -r.Y;
    return r.s.Q * Pt * r.s.Q.adjoint();
}

}  // namespace

SubspaceBasis endstate_splitting(cd lambda, Side side, const AffineMatrix& limit) {
    const Split r = split(limit(lambda), side);
    SubspaceBasis b;
    b.lambda = lambda;
    b.side = side;
    b.vectors = r.s.Q.leftCols(r.k);
    b.projector = projector_from(r);
    b.eigen_sum = 0;
    for (int i = 0; i < 5; ++i) {
        b.eigenvalues[i] = r.s.T(i, i);
        if (i < r.k) b.eigen_sum += r.s.T(i, i);
    }
    b.gap = r.gap;
    return b;
}

SubspaceBasis endstate_splitting(cd lambda, Side side, const ModelParams& p) {
    require_spectral_params(p);
    return endstate_splitting(lambda, side, limit_affine(side, p, rankine_hugoniot(p)));
}

ProjectorDerivative projector_derivative(cd lambda, Side side, const AffineMatrix& limit) {
    const Split r = split(limit(lambda), side);
    const int k = r.k, m = 5 - k;
    // S = Q [[I, Y], [0, I]] block-diagonalizes A; S^{-1} = [[I, -Y], [0, I]] Q^*
    CMat5 S = CMat5::Identity(), Sinv = CMat5::Identity();
    S.topRightCorner(k, m) = r.Y;
    Sinv.topRightCorner(k, m) = -r.Y;
    S = r.s.Q * S;
    Sinv = Sinv * r.s.Q.adjoint();
    const CMat5 B = Sinv * limit.A1.cast<cd>() * S;
    const CMatX T11 = r.s.T.topLeftCorner(k, k), T22 = r.s.T.bottomRightCorner(m, m);
    const CMatX Z12 = solve_sylvester(T11, T22, B.topRightCorner(k, m));
    const CMatX Z21 = solve_sylvester(T22, T11, -B.bottomLeftCorner(m, k));
    CMat5 Z = CMat5::Zero();
    Z.topRightCorner(k, m) = Z12;
    Z.bottomLeftCorner(m, k) = Z21;
    ProjectorDerivative d;
    d.P = projector_from(r);
    d.dP = S * Z * Sinv;
    d.eigen_sum = r.s.T.topLeftCorner(k, k).trace();
    return d;
}

}  // namespace shockstab
