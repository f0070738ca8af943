#include "shockstab/freq_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shockstab/eigensystem.hpp"
#include "shockstab/error.hpp"

namespace shockstab {

TrackingScalars tracking_scalars(const ProfilePoint& pt, const ModelParams& p, double em) {
    const Coefficients c = coefficients(pt, p, em);
    const double G = p.gruneisen, nu = p.nu, v = pt.v;
    TrackingScalars s;
    s.f = c.f;
    s.g = c.g;
    s.h = c.h;
    s.j = ((G * em - (v - 1.0)) * pt.v_x + pt.e_x) / nu;
    s.k = (2.0 * s.f - v) * (v - s.f) - G * s.h + pt.v_x;
    s.l = s.g * (v - s.f) - v * s.h / nu - s.j;
    s.m = v * (v - s.f) - s.k;
    s.n = v * pt.v_x / nu - pt.u_xx;
    s.q = -v * (v - s.f) - G * pt.v_x + pt.v_x;
    return s;
}

std::array<RMat5, 5> theta_matrices(const ProfilePoint& pt, const ModelParams& p, double em) {
    const TrackingScalars s = tracking_scalars(pt, p, em);
    const double G = p.gruneisen, nu = p.nu, v = pt.v, ux = pt.v_x;
    const double d = v - s.f;
    std::array<RMat5, 5> th;
    for (auto& m : th) m.setZero();

    th[0](0, 0) = d;
    th[0](1, 0) = d;
    th[0](2, 0) = -s.h;
    th[0](3, 3) = 2.0 * s.f - v;
    th[0](3, 4) = G;
    th[0](4, 3) = s.g;
    th[0](4, 4) = v / nu;

    th[1](0, 3) = 3.0 * d;
    th[1](0, 4) = -G;
    th[1](1, 3) = d;
    th[1](2, 3) = -s.h;
    th[1](3, 0) = s.k;
    th[1](3, 1) = G * ux;
    th[1](4, 0) = s.l;
    th[1](4, 1) = s.n;

    th[2](0, 0) = s.m;
    th[2](0, 1) = -v * d + pt.v_x - G * ux;
    th[2](1, 1) = -v * d;
    th[2](2, 1) = v * s.h;
    th[2](3, 3) = s.k;
    th[2](4, 3) = s.l;

    th[3](0, 3) = s.m;
    th[3](3, 1) = -v * s.k;
    th[3](4, 1) = -v * s.l;

    th[4](0, 1) = -v * s.m;
    return th;
}

RMat5 balance_transform(const ProfilePoint& pt, const ModelParams& p) {
    const double a1 = std::sqrt(pt.v), a2 = std::sqrt(pt.v / p.nu);
    RMat5 S = RMat5::Zero();
    S(0, 0) = 1.0;
    S(1, 1) = S(1, 3) = 1.0;
    S(2, 2) = S(2, 4) = 1.0;
    S(3, 1) = -a1;
    S(3, 3) = a1;
    S(4, 2) = -a2;
    S(4, 4) = a2;
    return S;
}

RMat5 balance_transform_dx(const ProfilePoint& pt, const ModelParams& p) {
    const double d1 = pt.v_x / (2.0 * std::sqrt(pt.v)), d2 = pt.v_x / (2.0 * std::sqrt(pt.v * p.nu));
    RMat5 S = RMat5::Zero();
    S(3, 1) = -d1;
    S(3, 3) = d1;
    S(4, 2) = -d2;
    S(4, 4) = d2;
    return S;
}

namespace {

RMat5 balance_inverse(const ProfilePoint& pt, const ModelParams& p) {
    const double a1 = std::sqrt(pt.v), a2 = std::sqrt(pt.v / p.nu);
    RMat5 S = RMat5::Zero();
    S(0, 0) = 1.0;
    S(1, 1) = S(3, 1) = 0.5;
    S(2, 2) = S(4, 2) = 0.5;
    S(1, 3) = -0.5 / a1;
    S(3, 3) = 0.5 / a1;
    S(2, 4) = -0.5 / a2;
    S(4, 4) = 0.5 / a2;
    return S;
}

}  // namespace

Eigen::MatrixXd TrackingMatrices::block(const RMat5& M, char row, char col) {
    const int r0 = row == '-' ? 0 : 3, nr = row == '-' ? 3 : 2;
    const int c0 = col == '-' ? 0 : 3, nc = col == '-' ? 3 : 2;
    return M.block(r0, c0, nr, nc);
}

TrackingMatrices tracking_matrices(const ProfilePoint& pt, const ModelParams& p, double em) {
    const auto th = theta_matrices(pt, p, em);
    const RMat5 S = balance_transform(pt, p), Si = balance_inverse(pt, p);
    TrackingMatrices t;
    for (int i = 0; i < 5; ++i) t.F[i] = Si * th[i] * S;
    t.F[0] -= Si * balance_transform_dx(pt, p);
    return t;
}

namespace {

std::array<std::array<double, 4>, 5> block_norms(const TrackingMatrices& t, NormKind norm) {
    static constexpr char rows[4] = {'-', '-', '+', '+'}, cols[4] = {'-', '+', '-', '+'};
    std::array<std::array<double, 4>, 5> out{};
    for (int i = 0; i < 5; ++i)
        for (int b = 0; b < 4; ++b)
            out[i][b] = matrix_norm(TrackingMatrices::block(t.F[i], rows[b], cols[b]).cast<cd>(), norm);
    return out;
}

}  // namespace

std::array<double, 4> weighted_blocks(const TrackingMatrices& t, double Lambda, NormKind norm) {
    const auto n = block_norms(t, norm);
    std::array<double, 4> w{};
    for (int i = 0; i < 5; ++i)
        for (int b = 0; b < 4; ++b) w[b] += n[i][b] / std::pow(Lambda, 0.5 * i);
    return w;
}

CMat5 principal_part(const ProfilePoint& pt, const ModelParams& p, cd lambda) {
    const cd s = std::sqrt(lambda);
    const double a1 = std::sqrt(pt.v), a2 = std::sqrt(pt.v / p.nu);
    CMat5 F = CMat5::Zero();
    F(0, 0) = -lambda;
    F(1, 1) = -s * a1;
    F(2, 2) = -s * a2;
    F(3, 3) = s * a1;
    F(4, 4) = s * a2;
    return F;
}

TrackingTable::TrackingTable(const ShockProfile& prof, NormKind norm, int refine) : norm_(norm), nu_(prof.params().nu) {
    const auto& x = prof.mesh();
    const ModelParams& p = prof.params();
    const double em = prof.endstates().e_minus;
    const int r = std::max(1, refine);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int sub = (i + 1 < x.size()) ? r : 1;
        for (int k = 0; k < sub; ++k) {
            const double xx = (k == 0) ? x[i] : x[i] + (x[i + 1] - x[i]) * k / r;
            const ProfilePoint pt = prof.at(xx);
            v_.push_back(pt.v);
            nrm_.push_back(block_norms(tracking_matrices(pt, p, em), norm));
        }
    }
}

double TrackingTable::lhs(std::size_t idx, double Lambda) const {
    std::array<double, 4> w{};
    for (int i = 0; i < 5; ++i) {
        const double wt = std::pow(Lambda, -0.5 * i);
        for (int b = 0; b < 4; ++b) w[b] += nrm_[idx][i][b] * wt;
    }
    return (w[0] + w[3] + 2.0 * std::sqrt(w[1] * w[2])) / std::sqrt(v_[idx]);
}

double TrackingTable::T(double Lambda) const {
    double worst = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) worst = std::max(worst, lhs(i, Lambda));
    return 2.0 * std::max(1.0, nu_) * worst * worst;
}

double TrackingTable::ricatti_margin(double Lambda) const {
    double worst = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) worst = std::max(worst, lhs(i, Lambda));
    return std::max(1.0, std::sqrt(nu_)) * worst / std::sqrt(Lambda);
}

double T_map(double Lambda, const ShockProfile& prof, NormKind norm) {
    if (!(Lambda > 0)) fail(ErrorKind::domain, "T_map needs Lambda > 0");
    return TrackingTable(prof, norm).T(Lambda);
}

TrackingBound tracking_bound(const TrackingTable& table, double init_Lambda, int max_iter, double rtol) {
    if (!(init_Lambda > 0)) fail(ErrorKind::domain, "tracking_bound needs a positive initial radius");
    TrackingBound b;
    b.norm_used = table.norm();
    double L = init_Lambda;
    b.iterates.push_back(L);
    for (int it = 0; it < max_iter; ++it) {
        const double Ln = table.T(L);
        b.iterates.push_back(Ln);
        if (std::abs(Ln - L) <= rtol * L) {
            b.Lambda_star = Ln;
            b.converged = true;
            return b;
        }
        L = Ln;
    }
    // T is antitone, so the larger of two consecutive iterates is still a bound
    const std::size_t n = b.iterates.size();
    b.Lambda_star = std::max(b.iterates[n - 1], b.iterates[n - 2]);
    return b;
}

TrackingBound tracking_bound(const ShockProfile& prof, double init_Lambda, NormKind norm, int max_iter, double rtol) {
    return tracking_bound(TrackingTable(prof, norm), init_Lambda, max_iter, rtol);
}

double compute_alpha(const ShockProfile& prof) {
    // three-point Gauss-Legendre on every mesh interval
    static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const auto& x = prof.mesh();
    const double sp = std::sqrt(prof.endstates().v_plus);
    double I = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i], b = x[i + 1];
        const double ref = b <= 0.0 ? 1.0 : sp;  // 0 is a mesh node
        double acc = 0;
        for (int q = 0; q < 3; ++q) {
            const double xx = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
            acc += gw[q] * (std::sqrt(prof.state(xx)[0]) - ref);
        }
        I += 0.5 * (b - a) * acc;
    }
    // exponential tails beyond the computational domain
    I += (std::sqrt(prof.values().front()[0]) - 1.0) / prof.theta_minus();
    I += (std::sqrt(prof.values().back()[0]) - sp) / prof.theta_plus();
    return (1.0 + 1.0 / std::sqrt(prof.params().nu)) * I;
}

HFApproximant hf_fit(const RealEvaluator& D, double lambda_max, const FitOptions& opt) {
    if (!(lambda_max > 0)) fail(ErrorKind::domain, "hf_fit needs lambda_max > 0");
    const int n = std::max(opt.with_beta ? 4 : 3, opt.samples);
    const int npar = opt.with_beta ? 3 : 2;
    Eigen::MatrixXd M(n, npar);
    Eigen::VectorXd rhs(n);
    int sign = 0;
    const double z0 = std::sqrt(lambda_max / 4.0), z1 = std::sqrt(lambda_max);
    for (int i = 0; i < n; ++i) {
        const double z = z0 + (z1 - z0) * i / (n - 1);
        const cd d = D(z * z);
        const double re = d.real();
        if (!(std::abs(d.imag()) <= 1e-6 * std::abs(d)))
            fail(ErrorKind::fit, "Evans function is not real on the real axis (imag/abs = " +
                                     std::to_string(std::abs(d.imag()) / std::abs(d)) + ")");
        const int sg = re > 0 ? 1 : (re < 0 ? -1 : 0);
        if (sg == 0 || (sign != 0 && sg != sign)) {
            std::ostringstream os;
            os << "Evans function changes sign or vanishes on the real axis near lambda=" << z * z
               << ": real unstable eigenvalue";
            fail(ErrorKind::fit, os.str());
        }
        sign = sg;
        M(i, 0) = 1.0;
        M(i, 1) = z;
        if (opt.with_beta) M(i, 2) = z * z;
        rhs[i] = std::log(std::abs(re));
    }
    const Eigen::VectorXd c = M.colPivHouseholderQr().solve(rhs);
    HFApproximant a;
    a.C = sign * std::exp(c[0]);
    a.alpha = c[1];
    a.beta = opt.with_beta ? c[2] : 0.0;
    a.fit_residual = (M * c - rhs).cwiseAbs().maxCoeff();
    a.valid_radius = lambda_max;
    return a;
}

double approximant_error(const std::vector<std::pair<cd, cd>>& samples, const HFApproximant& a) {
    double worst = 0;
    for (const auto& [lam, d] : samples) worst = std::max(worst, std::abs(d - a(lam)) / std::abs(d));
    return worst;
}

PracticalRadius practical_radius(const ArcEvaluator& D, const HFApproximant& a, double cap, double tol1,
                                 double start) {
    PracticalRadius out;
    auto err_at = [&](double r) {
        const double e = approximant_error(D(r), a);
        out.trials.emplace_back(r, e);
        return e;
    };
    double lo = 0, hi = 0;
    double r = std::min(start, cap);
    double e = err_at(r);
    while (e > tol1) {
        lo = r;
        if (r >= cap) {
            out.radius = cap;
            out.error = e;
            out.converged = false;
            return out;
        }
        r = std::min(2.0 * r, cap);
        e = err_at(r);
    }
    hi = r;
    double ehi = e;
    // the start radius is the floor: below it the comparison is meaningless
    if (lo == 0.0) lo = hi;
    // bisect the bracket (lo fails, hi passes) to ~3%
    for (int it = 0; it < 8 && hi - lo > 0.03 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double em = err_at(mid);
        if (em <= tol1) {
            hi = mid;
            ehi = em;
        } else {
            lo = mid;
        }
    }
    out.radius = hi;
    out.error = ehi;
    out.converged = true;
    return out;
}

}  // namespace shockstab
