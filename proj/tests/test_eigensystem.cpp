#include <doctest.h>

#include <random>

#include "shockstab/eigensystem.hpp"
#include "shockstab/error.hpp"
#include "shockstab/evans.hpp"

using namespace shockstab;

namespace {

ModelParams point(double G, double nu, double vp) {
    ModelParams p;
    p.gruneisen = G;
    p.nu = nu;
    p.v_plus = vp;
    return p;
}

const std::vector<cd> sample_lambdas{cd(1e-3, 0), cd(0.5, 2), cd(3, -1), cd(0, 4), cd(40, 25), cd(1e-4, 1e-2)};

}  // namespace

TEST_CASE("integrated translation mode solves the eigenvalue system at lambda = 0") {
    // in integrated coordinates the derivative mode becomes the profile minus U-:
    // v = u = v^ - 1, eps = E - u^ u with E = e^ + u^2/2 - e-
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.4);
    const ShockProfile prof = solve_profile(p);
    const double em = prof.endstates().e_minus;
    auto W = [&](double x) {
        const ProfilePoint a = prof.at(x);
        CVec5 w;
        w << a.e - em - 0.5 * a.u * a.u, a.e_x - a.u * a.v_x, a.u, a.v - 1.0, a.v_x;
        return w;
    };
    const double h = 1e-4;
    for (double x : {-4.0, -1.0, 0.0, 0.7, 3.0}) {
        const CVec5 dW = (W(x + h) - W(x - h)) / (2 * h);
        const CVec5 AW = assemble_A(x, cd(0), prof) * W(x);
        CHECK((dW - AW).norm() < 1e-6 * (1 + AW.norm()));
    }
}

TEST_CASE("coefficient matrices are real and affine in lambda") {
    const ModelParams p = point(0.4, 1.47, 0.3);
    const ShockProfile prof = solve_profile(p);
    const ProfilePoint q = prof.at(0.3);
    const double em = prof.endstates().e_minus;
    const cd l(2.5, -1.5);
    const CMat5 A = assemble_A(q, l, p, em);
    CHECK((assemble_A(q, std::conj(l), p, em) - A.conjugate()).norm() < 1e-14);
    const AffineMatrix a = assemble_affine(q, p, em);
    CHECK((a(l) - A).norm() < 1e-14);
    CHECK((a(2.0 * l) - a(l) - l * a.A1.cast<cd>()).norm() < 1e-12);
}

TEST_CASE("endstate splitting gives spectral projectors") {
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.25);
    const Endstates s = rankine_hugoniot(p);
    for (Side side : {Side::minus, Side::plus}) {
        const AffineMatrix lim = limit_affine(side, p, s);
        for (cd l : sample_lambdas) {
            const SubspaceBasis b = endstate_splitting(l, side, lim);
            const CMat5 A = lim(l), P = b.projector;
            const double sc = 1 + A.norm();
            CHECK((P * P - P).norm() < 1e-9 * sc);
            CHECK((P * A - A * P).norm() < 1e-9 * sc * sc);
            CHECK(std::abs(P.trace() - double(subspace_dim(side))) < 1e-9);
            CHECK((P * b.vectors - b.vectors).norm() < 1e-9 * sc);
            CHECK(std::abs((P * A).trace() - b.eigen_sum) < 1e-9 * sc);
            CHECK(b.gap > 0);
            for (int i = 0; i < subspace_dim(side); ++i) {
                if (side == Side::minus) CHECK(b.eigenvalues[i].real() > 0);
                else CHECK(b.eigenvalues[i].real() < 0);
            }
        }
    }
}

TEST_CASE("projector derivative matches finite differences") {
    const ModelParams p = point(0.4, 2.0, 0.5);
    const Endstates s = rankine_hugoniot(p);
    for (Side side : {Side::minus, Side::plus}) {
        const AffineMatrix lim = limit_affine(side, p, s);
        for (cd l : {cd(1, 0), cd(2, 3), cd(0.1, 5)}) {
            const double h = 1e-5;
            const CMat5 fd = (endstate_splitting(l + h, side, lim).projector - endstate_splitting(l - h, side, lim).projector) / (2 * h);
            const CMat5 fdi = (endstate_splitting(l + cd(0, h), side, lim).projector -
                               endstate_splitting(l - cd(0, h), side, lim).projector) / cd(0, 2 * h);
            const ProjectorDerivative d = projector_derivative(l, side, lim);
            CHECK((d.dP - fd).norm() < 1e-6 * (1 + fd.norm()));
            CHECK((d.dP - fdi).norm() < 1e-6 * (1 + fd.norm()));  // holomorphic
        }
    }
}

TEST_CASE("spectral parameter checks") {
    ModelParams p = point(2.0 / 3.0, 1.0, 0.5);
    p.mu = 2.0;
    CHECK_THROWS_AS(require_spectral_params(p), Error);
    try {
        require_spectral_params(point(2.0 / 3.0, 1.0, 1.0));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degeneracy);
    }
}

TEST_CASE("Kato basis stays in the subspace and is path independent") {
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.3);
    const cd target(2.0, 6.0);
    for (Side side : {Side::minus, Side::plus}) {
        const auto direct = kato_basis({cd(1, 0), target}, side, p);
        const auto detour = kato_basis({cd(1, 0), cd(8, 0), cd(8, 9), cd(0.5, 9), target}, side, p);
        const CMatX& V = direct.back().vectors;
        CHECK((direct.back().projector * V - V).norm() < 1e-9);
        CHECK((V - detour.back().vectors).norm() < 1e-8);
        // back to the start: identity holonomy
        const auto loop = kato_basis({cd(1, 0), cd(5, 0), cd(5, 5), cd(1, 5), cd(1, 0)}, side, p);
        CHECK((loop.back().vectors - loop.front().vectors).norm() < 1e-8);
    }
}

TEST_CASE("Kato continuation matches projector-difference transport") {
    const ModelParams p = point(0.4, 1.47, 0.4);
    const Endstates s = rankine_hugoniot(p);
    for (Side side : {Side::minus, Side::plus}) {
        const AffineMatrix lim = limit_affine(side, p, s);
        const LambdaPath path = polyline_path({cd(1, 0), cd(3, 4)});
        const CMatX V0 = kato_initial_basis(1.0, side, lim);
        KatoContinuation kc(lim, side, path, V0);
        const CMatX Vk = kc.basis(path.s1);
        const CMatX Vd = kato_projector_difference(path, side, lim, V0, 4000);
        CHECK((Vk - Vd).norm() < 1e-6);
    }
}

TEST_CASE("Kato basis is constant when the projector is") {
    // lambda-independent matrix: P' = 0 along any path
    AffineMatrix lim;
    lim.A0 = RMat5::Zero();
    lim.A0.diagonal() << 2.0, 1.0, -1.0, -2.0, -3.0;
    lim.A0(0, 3) = 0.7;
    lim.A0(2, 4) = -0.4;
    const CMatX V0 = kato_initial_basis(1.0, Side::minus, lim);
    KatoContinuation kc(lim, Side::minus, polyline_path({cd(1, 0), cd(4, 4), cd(0, 7)}), V0);
    CHECK((kc.basis(2.0) - V0).norm() < 1e-14);
}

TEST_CASE("Kato bases are conjugate symmetric") {
    const ModelParams p = point(1.0, 0.5, 0.4);
    const cd l(3.0, 2.0);
    for (Side side : {Side::minus, Side::plus}) {
        const auto up = kato_basis({cd(1, 0), l}, side, p);
        const auto dn = kato_basis({cd(1, 0), std::conj(l)}, side, p);
        CHECK((up.back().vectors.conjugate() - dn.back().vectors).norm() < 1e-10);
    }
}
