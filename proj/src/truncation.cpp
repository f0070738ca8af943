#include "shockstab/truncation.hpp"

#include <cmath>
#include <sstream>

#include "shockstab/eigensystem.hpp"
#include "shockstab/error.hpp"

namespace shockstab {

double truncation_defect(const ShockProfile& prof, double x, double Lambda, NormKind norm) {
    const Side side = x < 0 ? Side::minus : Side::plus;
    const ModelParams& p = prof.params();
    const Endstates& s = prof.endstates();
    const AffineMatrix a = assemble_affine(prof.at(x), p, s.e_minus);
    const AffineMatrix l = limit_affine(side, p, s);
    return matrix_norm((a.A0 - l.A0).cast<cd>(), norm) + Lambda * matrix_norm((a.A1 - l.A1).cast<cd>(), norm);
}

namespace {

// Smallest |x| on this side beyond which the mesh stays within tol of the endstate.
double ladder_start(const ShockProfile& prof, Side side, double tol) {
    const auto& x = prof.mesh();
    const auto& y = prof.values();
    const Endstates& s = prof.endstates();
    const Eigen::Vector2d U = side == Side::minus ? Eigen::Vector2d(1.0, s.e_minus) : Eigen::Vector2d(s.v_plus, s.e_plus);
    if (side == Side::minus) {
        std::size_t i = 0;
        while (i + 1 < x.size() && x[i + 1] < 0 && (y[i + 1] - U).cwiseAbs().maxCoeff() <= tol) ++i;
        return -x[i];
    }
    std::size_t i = x.size() - 1;
    while (i > 0 && x[i - 1] > 0 && (y[i - 1] - U).cwiseAbs().maxCoeff() <= tol) --i;
    return x[i];
}

}  // namespace

TruncationLengths truncation_lengths(const ShockProfile& prof, double Lambda, const TruncationOptions& opt) {
    TruncationLengths out;
    for (Side side : {Side::minus, Side::plus}) {
        const double theta = side == Side::minus ? prof.theta_minus() : prof.theta_plus();
        const double rhs = theta / (opt.C_star * opt.k) * opt.tol;
        const double dom = side == Side::minus ? prof.L_minus() : prof.L_plus();
        const double sgn = side == Side::minus ? -1.0 : 1.0;
        const double start = ladder_start(prof, side, opt.start_tol);
        double L = start;
        double lhs = truncation_defect(prof, sgn * L, Lambda, opt.norm);
        while (lhs > rhs) {
            L += opt.step;
            if (L > dom) {
                std::ostringstream os;
                os << "truncation ladder exhausted on the " << (side == Side::minus ? "left" : "right")
                   << " (profile domain " << dom << ", defect " << lhs << " > " << rhs << "); re-solve on a larger domain";
                fail(ErrorKind::evaluation, os.str());
            }
            lhs = truncation_defect(prof, sgn * L, Lambda, opt.norm);
        }
        if (side == Side::minus) {
            out.L_minus = L;
            out.start_minus = start;
            out.excess_minus = lhs / rhs;
        } else {
            out.L_plus = L;
            out.start_plus = start;
            out.excess_plus = lhs / rhs;
        }
    }
    return out;
}

}  // namespace shockstab
