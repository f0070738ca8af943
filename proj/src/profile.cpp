#include "shockstab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <Eigen/Sparse>

#include "shockstab/error.hpp"
#include "shockstab/ode.hpp"

namespace shockstab {

using Eigen::Matrix2d;
using Eigen::Vector2d;

Vector2d profile_rhs(double v, double e, const ModelParams& p, double em) {
    const double G = p.gruneisen;
    return {(v * (v - 1.0) + G * (e - v * em)) / p.mu,
            v / p.nu * (-0.5 * (v - 1.0) * (v - 1.0) + (e - em) + (v - 1.0) * G * em)};
}

Matrix2d profile_rhs_jacobian(double v, double e, const ModelParams& p, double em) {
    const double G = p.gruneisen;
    const double br = -0.5 * (v - 1.0) * (v - 1.0) + (e - em) + (v - 1.0) * G * em;
    Matrix2d J;
    J(0, 0) = (2.0 * v - 1.0 - G * em) / p.mu;
    J(0, 1) = G / p.mu;
    J(1, 0) = br / p.nu + v / p.nu * (1.0 - v + G * em);
    J(1, 1) = v / p.nu;
    return J;
}

ProfilePoint profile_point(double x, double v, double e, const ModelParams& p, double em) {
    const Vector2d f = profile_rhs(v, e, p, em);
    ProfilePoint q;
    q.x = x;
    q.v = v;
    q.u = v - 1.0;
    q.e = e;
    q.v_x = f[0];
    q.e_x = f[1];
    // u_xx = d/dx RHS_1 along the flow
    q.u_xx = ((2.0 * v - 1.0 - p.gruneisen * em) * f[0] + p.gruneisen * f[1]) / p.mu;
    return q;
}

double isocline_v(double v, const ModelParams& p, double em) {
    return v * em - v * (v - 1.0) / p.gruneisen;
}

double isocline_e(double v, const ModelParams& p, double em) {
    return em + 0.5 * (v - 1.0) * (v - 1.0) - (v - 1.0) * p.gruneisen * em;
}

EquilibriumLinearization equilibrium_jacobian(double v, const ModelParams& p) {
    const Endstates s = rankine_hugoniot(p);
    if (p.v_plus == 1.0)
        fail(ErrorKind::degeneracy, "characteristic limit v_plus = 1: endstates are not hyperbolic");
    double e;
    if (v == 1.0)
        e = s.e_minus;
    else if (v == s.v_plus)
        e = s.e_plus;
    else
        fail(ErrorKind::domain, "equilibrium_jacobian expects v = 1 or v = v_plus");

    EquilibriumLinearization lin;
    lin.M = profile_rhs_jacobian(v, e, p, s.e_minus);
    lin.trace = lin.M.trace();
    lin.det = lin.M.determinant();
    const std::complex<double> disc = std::sqrt(std::complex<double>(lin.trace * lin.trace - 4.0 * lin.det));
    lin.eigenvalues = {0.5 * (lin.trace - disc), 0.5 * (lin.trace + disc)};
    for (int k = 0; k < 2; ++k) {
        const std::complex<double> mu = lin.eigenvalues[k];
        Eigen::Vector2cd w(lin.M(0, 1), mu - lin.M(0, 0));
        const Eigen::Vector2cd w2(mu - lin.M(1, 1), lin.M(1, 0));
        if (w2.norm() > w.norm()) w = w2;
        lin.eigenvectors.col(k) = w / w.norm();
    }
    return lin;
}

DecayRates decay_rates(const ModelParams& p) {
    validate(p);
    if (p.v_plus == 1.0) fail(ErrorKind::degeneracy, "characteristic limit v_plus = 1: decay rates vanish");
    const auto lm = equilibrium_jacobian(1.0, p);
    const auto lp = equilibrium_jacobian(p.v_plus, p);
    // U- is a source (both rates positive), the profile leaves along the slower one
    const double tm = std::min(lm.eigenvalues[0].real(), lm.eigenvalues[1].real());
    // U+ is a saddle, the profile enters along the negative eigenvalue
    const double tp = -lp.eigenvalues[0].real();
    if (!(tm > 0.0) || !(tp > 0.0))
        fail(ErrorKind::degeneracy, "endstates are not hyperbolic (theta- = " + std::to_string(tm) +
                                        ", theta+ = " + std::to_string(tp) + ")");
    return {tm, tp};
}

// ---------------------------------------------------------------------------

namespace {

struct Hermite {
    Vector2d p, dp;
};

Hermite hermite(double t, double h, const Vector2d& y0, const Vector2d& f0, const Vector2d& y1,
                const Vector2d& f1) {
    const double t2 = t * t, t3 = t2 * t;
    Hermite r;
    r.p = (2 * t3 - 3 * t2 + 1) * y0 + h * (t3 - 2 * t2 + t) * f0 + (-2 * t3 + 3 * t2) * y1 +
          h * (t3 - t2) * f1;
    r.dp = (6 * t2 - 6 * t) / h * y0 + (3 * t2 - 4 * t + 1) * f0 + (-6 * t2 + 6 * t) / h * y1 +
           (3 * t2 - 2 * t) * f1;
    return r;
}

struct Collocation {
    const ModelParams& p;
    double em;
    Vector2d u_plus;
    Eigen::RowVector2d l_unstable;  // left eigenvector of the unstable mode at U+
    double v_mid;

    Vector2d F(const Vector2d& y) const { return profile_rhs(y[0], y[1], p, em); }
    Matrix2d J(const Vector2d& y) const { return profile_rhs_jacobian(y[0], y[1], p, em); }

    Eigen::VectorXd residual(const std::vector<double>& x, const std::vector<Vector2d>& y,
                             std::size_t i0) const {
        const std::size_t n = x.size();
        Eigen::VectorXd r(2 * n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double h = x[i + 1] - x[i];
            const Vector2d fi = F(y[i]), fj = F(y[i + 1]);
            const Vector2d ym = 0.5 * (y[i] + y[i + 1]) + h / 8.0 * (fi - fj);
            r.segment<2>(2 * i) = y[i + 1] - y[i] - h / 6.0 * (fi + 4.0 * F(ym) + fj);
        }
        r[2 * n - 2] = y[i0][0] - v_mid;
        r[2 * n - 1] = l_unstable.dot(y[n - 1] - u_plus);
        return r;
    }

    Eigen::SparseMatrix<double> jacobian(const std::vector<double>& x, const std::vector<Vector2d>& y,
                                         std::size_t i0) const {
        const std::size_t n = x.size();
        std::vector<Eigen::Triplet<double>> t;
        t.reserve(16 * n + 4);
        const Matrix2d I = Matrix2d::Identity();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double h = x[i + 1] - x[i];
            const Vector2d fi = F(y[i]), fj = F(y[i + 1]);
            const Matrix2d Ji = J(y[i]), Jj = J(y[i + 1]);
            const Vector2d ym = 0.5 * (y[i] + y[i + 1]) + h / 8.0 * (fi - fj);
            const Matrix2d Jm = J(ym);
            const Matrix2d A = -I - h / 6.0 * (Ji + 4.0 * Jm * (0.5 * I + h / 8.0 * Ji));
            const Matrix2d B = I - h / 6.0 * (Jj + 4.0 * Jm * (0.5 * I - h / 8.0 * Jj));
            const int r0 = static_cast<int>(2 * i);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    t.emplace_back(r0 + a, r0 + b, A(a, b));
                    t.emplace_back(r0 + a, r0 + 2 + b, B(a, b));
                }
        }
        const int m = static_cast<int>(2 * n);
        t.emplace_back(m - 2, static_cast<int>(2 * i0), 1.0);
        t.emplace_back(m - 1, m - 2, l_unstable[0]);
        t.emplace_back(m - 1, m - 1, l_unstable[1]);
        Eigen::SparseMatrix<double> S(m, m);
        S.setFromTriplets(t.begin(), t.end());
        return S;
    }
};

double inf_norm(const Eigen::VectorXd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

void newton(const Collocation& c, const std::vector<double>& x, std::vector<Vector2d>& y,
            std::size_t i0, int max_iter, std::vector<std::string>& trace) {
    Eigen::VectorXd r = c.residual(x, y, i0);
    double rn = inf_norm(r);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    for (int it = 0; it < max_iter; ++it) {
        if (rn <= 1e-13) return;
        const Eigen::SparseMatrix<double> Jm = c.jacobian(x, y, i0);
        lu.compute(Jm);
        if (lu.info() != Eigen::Success) {
            trace.push_back("newton " + std::to_string(it) + ": singular collocation Jacobian");
            fail(ErrorKind::solver, "profile collocation: singular Jacobian", trace);
        }
        const Eigen::VectorXd dz = lu.solve(-r);
        const double dn = inf_norm(dz);
        double alpha = 1.0;
        std::vector<Vector2d> yt(y.size());
        double rt = 0;
        Eigen::VectorXd rtrial;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t i = 0; i < y.size(); ++i) yt[i] = y[i] + alpha * dz.segment<2>(2 * i);
            rtrial = c.residual(x, yt, i0);
            rt = inf_norm(rtrial);
            if (std::isfinite(rt) && (rt < (1.0 - 0.25 * alpha) * rn || rt <= 1e-13)) break;
            alpha *= 0.5;
        }
        std::ostringstream os;
        os << "newton " << it << ": |F|=" << rn << " |dz|=" << dn << " alpha=" << alpha
           << " nodes=" << x.size();
        trace.push_back(os.str());
        if (!std::isfinite(rt) || rt >= rn) {
            if (rn <= 1e-10 && dn <= 1e-10) return;  // stagnation at rounding level
            fail(ErrorKind::solver, "profile collocation: Newton line search failed", trace);
        }
        y.swap(yt);
        r = rtrial;
        rn = rt;
        if (alpha == 1.0 && dn <= 1e-12) return;
    }
    if (rn <= 1e-10) return;
    fail(ErrorKind::solver, "profile collocation: Newton did not converge", trace);
}

}  // namespace

ShockProfile solve_profile(const ModelParams& p, const ProfileOptions& opt) {
    validate(p);
    if (p.v_plus == 1.0) fail(ErrorKind::degeneracy, "characteristic limit v_plus = 1: no shock profile");
    const Endstates s = rankine_hugoniot(p);
    const DecayRates rates = decay_rates(p);
    const double em = s.e_minus;
    const double Lm = opt.L_minus > 0 ? opt.L_minus : 17.0 / rates.theta_minus + 10.0;
    const double Lp = opt.L_plus > 0 ? opt.L_plus : 17.0 / rates.theta_plus + 10.0;

    const auto lin_p = equilibrium_jacobian(s.v_plus, p);
    // left eigenvector of the positive eigenvalue: row of the inverse eigenvector matrix
    Eigen::Matrix2d R;
    R << lin_p.eigenvectors(0, 0).real(), lin_p.eigenvectors(0, 1).real(), lin_p.eigenvectors(1, 0).real(),
        lin_p.eigenvectors(1, 1).real();
    const Eigen::Matrix2d Rinv = R.inverse();

    Collocation c{p, em, Vector2d(s.v_plus, s.e_plus), Rinv.row(1), 0.5 * (1.0 + s.v_plus)};

    std::vector<double> x;
    {
        const int nm = std::max(4, static_cast<int>(std::ceil(Lm / opt.initial_step)));
        const int np = std::max(4, static_cast<int>(std::ceil(Lp / opt.initial_step)));
        for (int i = 0; i < nm; ++i) x.push_back(-Lm + Lm * i / nm);
        for (int i = 0; i <= np; ++i) x.push_back(Lp * i / np);
    }
    std::vector<Vector2d> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = x[i] < 0 ? 1.0 - (1.0 - c.v_mid) * std::exp(rates.theta_minus * x[i])
                                  : s.v_plus + (c.v_mid - s.v_plus) * std::exp(-rates.theta_plus * x[i]);
        y[i] = Vector2d(v, 0.5 * (isocline_v(v, p, em) + isocline_e(v, p, em)));
    }

    std::vector<std::string> trace;
    auto phase_index = [&]() {
        return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), 0.0) - x.begin());
    };

    for (int round = 0;; ++round) {
        newton(c, x, y, phase_index(), opt.max_newton, trace);

        // residual of the Hermite interpolant at quarter points
        std::vector<double> nx;
        std::vector<Vector2d> ny;
        nx.reserve(x.size() * 2);
        ny.reserve(x.size() * 2);
        std::size_t refined = 0;
        double worst = 0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const double h = x[i + 1] - x[i];
            const Vector2d f0 = c.F(y[i]), f1 = c.F(y[i + 1]);
            double r = 0;
            for (double t : {0.25, 0.75}) {
                const Hermite q = hermite(t, h, y[i], f0, y[i + 1], f1);
                r = std::max(r, (q.dp - c.F(q.p)).cwiseAbs().maxCoeff());
            }
            worst = std::max(worst, r);
            nx.push_back(x[i]);
            ny.push_back(y[i]);
            if (r > opt.tol) {
                const int pieces = r > 100.0 * opt.tol ? 3 : 2;
                for (int k = 1; k < pieces; ++k) {
                    const double t = static_cast<double>(k) / pieces;
                    nx.push_back(x[i] + t * h);
                    ny.push_back(hermite(t, h, y[i], f0, y[i + 1], f1).p);
                }
                ++refined;
            }
        }
        nx.push_back(x.back());
        ny.push_back(y.back());
        {
            std::ostringstream os;
            os << "mesh round " << round << ": nodes=" << x.size() << " max residual=" << worst
               << " refined=" << refined;
            trace.push_back(os.str());
        }
        if (refined == 0) break;
        if (round >= opt.max_refinements || nx.size() > opt.max_nodes)
            fail(ErrorKind::solver, "profile collocation: mesh refinement did not reach tolerance", trace);
        x.swap(nx);
        y.swap(ny);
    }

    const Vector2d um(1.0, em), up(s.v_plus, s.e_plus);
    const double end_err = std::max((y.front() - um).cwiseAbs().maxCoeff(), (y.back() - up).cwiseAbs().maxCoeff());
    if (!(end_err <= 1e-3))
        fail(ErrorKind::solver, "profile endpoints miss the endstates by " + std::to_string(end_err), trace);
    return ShockProfile(p, s, rates, std::move(x), std::move(y));
}

// ---------------------------------------------------------------------------

ShockProfile::ShockProfile(ModelParams p, Endstates s, DecayRates rates, std::vector<double> x,
                           std::vector<Vector2d> y)
    : params_(p), ends_(s), rates_(rates), x_(std::move(x)), y_(std::move(y)) {
    f_.resize(y_.size());
    for (std::size_t i = 0; i < y_.size(); ++i) f_[i] = profile_rhs(y_[i][0], y_[i][1], params_, ends_.e_minus);
}

std::size_t ShockProfile::interval(double x) const {
    if (!(x >= x_.front() && x <= x_.back())) {
        std::ostringstream os;
        os << "profile evaluated at x=" << x << " outside [" << x_.front() << ", " << x_.back() << "]";
        fail(ErrorKind::evaluation, os.str());
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) i = 1;
    if (i >= x_.size()) i = x_.size() - 1;
    return i - 1;
}

Vector2d ShockProfile::state(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    return hermite((x - x_[i]) / h, h, y_[i], f_[i], y_[i + 1], f_[i + 1]).p;
}

ProfilePoint ShockProfile::at(double x) const {
    const Vector2d y = state(x);
    return profile_point(x, y[0], y[1], params_, ends_.e_minus);
}

double ShockProfile::max_residual() const {
    double worst = 0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double h = x_[i + 1] - x_[i];
        for (double t : {0.25, 0.5, 0.75}) {
            const Hermite q = hermite(t, h, y_[i], f_[i], y_[i + 1], f_[i + 1]);
            worst = std::max(worst, (q.dp - profile_rhs(q.p[0], q.p[1], params_, ends_.e_minus)).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double ShockProfile::midpoint_residual() const {
    double worst = 0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double h = x_[i + 1] - x_[i];
        const Hermite q = hermite(0.5, h, y_[i], f_[i], y_[i + 1], f_[i + 1]);
        worst = std::max(worst, (q.dp - profile_rhs(q.p[0], q.p[1], params_, ends_.e_minus)).cwiseAbs().maxCoeff());
    }
    return worst;
}

void ShockProfile::write(std::ostream& os) const {
    os << std::setprecision(17);
    os << "# gamma=" << params_.gruneisen << " nu=" << params_.nu << " mu=" << params_.mu
       << " v_plus=" << params_.v_plus << " theta_minus=" << rates_.theta_minus
       << " theta_plus=" << rates_.theta_plus << "\n";
    os << "# x v u e v_x e_x u_xx\n";
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const ProfilePoint q = profile_point(x_[i], y_[i][0], y_[i][1], params_, ends_.e_minus);
        os << q.x << ' ' << q.v << ' ' << q.u << ' ' << q.e << ' ' << q.v_x << ' ' << q.e_x << ' ' << q.u_xx
           << '\n';
    }
}

// ---------------------------------------------------------------------------

ShotTrajectory shoot_profile(const ModelParams& p, double delta, double x_extent) {
    const Endstates s = rankine_hugoniot(p);
    const DecayRates rates = decay_rates(p);
    const auto lin = equilibrium_jacobian(s.v_plus, p);
    Vector2d r(lin.eigenvectors(0, 0).real(), lin.eigenvectors(1, 0).real());
    if (r[0] < 0) r = -r;  // the profile sits above v+
    if (x_extent <= 0) x_extent = 30.0 / rates.theta_minus + 30.0 / rates.theta_plus + 20.0;

    const double em = s.e_minus;
    const double v_mid = 0.5 * (1.0 + s.v_plus);
    auto rhs = [&](double, const Vector2d& y) { return profile_rhs(y[0], y[1], p, em); };

    OdeOptions o;
    o.abs_tol = 1e-14;
    o.rel_tol = 1e-12;
    o.max_steps = 2000000;

    ShotTrajectory out;
    Vector2d y = Vector2d(s.v_plus, s.e_plus) + delta * r;
    out.x.push_back(0.0);
    out.y.push_back(y);
    double x_cross = std::numeric_limits<double>::quiet_NaN();
    integrate_dopri5(rhs, 0.0, -x_extent, y, o, nullptr, [&](double x, Vector2d& yy) {
        const double xp = out.x.back();
        const Vector2d yp = out.y.back();
        if (std::isnan(x_cross) && (yp[0] - v_mid) * (yy[0] - v_mid) <= 0.0 && yy[0] != yp[0]) {
            // refine the crossing by secant iterations on short re-integrations
            double a = xp, b = x;
            Vector2d ya = yp;
            double fa = yp[0] - v_mid, fb = yy[0] - v_mid;
            for (int it = 0; it < 60 && std::abs(b - a) > 1e-15 * (1 + std::abs(a)); ++it) {
                const double m = (fb - fa) != 0.0 ? a - fa * (b - a) / (fb - fa) : 0.5 * (a + b);
                Vector2d ym = ya;
                integrate_dopri5(rhs, a, m, ym, o);
                const double fm = ym[0] - v_mid;
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    ya = ym;
                    fa = fm;
                } else {
                    b = m;
                    fb = fm;
                }
                if (std::abs(fm) < 1e-15) {
                    a = b = m;
                    break;
                }
            }
            x_cross = 0.5 * (a + b);
        }
        out.x.push_back(x);
        out.y.push_back(yy);
        return (yy - Vector2d(1.0, em)).cwiseAbs().maxCoeff() > 1e-12;
    });
    if (std::isnan(x_cross)) fail(ErrorKind::solver, "shooting trajectory never reached the phase point");
    for (double& xx : out.x) xx -= x_cross;
    std::reverse(out.x.begin(), out.x.end());
    std::reverse(out.y.begin(), out.y.end());
    out.distance_to_minus = (out.y.front() - Vector2d(1.0, em)).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace shockstab
