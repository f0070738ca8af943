#include "shockstab/evans.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "shockstab/error.hpp"
#include "shockstab/linalg.hpp"

namespace shockstab {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

// ---------------------------------------------------------------------------
// contour

ContourPath::ContourPath(ContourSpec spec) : spec_(spec) {
    if (!(spec.radius > 0)) fail(ErrorKind::domain, "contour radius must be positive");
    if (spec.n_points < 8 || spec.n_points % 2 != 0)
        fail(ErrorKind::domain, "contour needs an even number of at least 8 intervals");
    m_ = spec.n_points / 2;
    na_ = std::max(1, m_ / 2);
    K_ = m_ - na_;
    r_min_ = spec.radius / (double(K_) * K_);
}

cd ContourPath::upper_point(double s) const {
    const double R = spec_.radius;
    if (s <= na_) return std::polar(R, 0.5 * pi * s / na_);
    if (s <= na_ + K_ - 1) {
        const double tau = (K_ - (s - na_)) / K_;
        return {0.0, R * tau * tau};
    }
    return std::polar(r_min_, 0.5 * pi * (m_ - s));
}

cd ContourPath::upper_tangent(double s) const {
    const double R = spec_.radius;
    if (s < na_) return cd(0, 0.5 * pi / na_) * upper_point(s);
    if (s < na_ + K_ - 1) {
        const double tau = (K_ - (s - na_)) / K_;
        return {0.0, -2.0 * R * tau / K_};
    }
    return cd(0, -0.5 * pi) * upper_point(s);
}

cd ContourPath::point(double t) const {
    if (t < 0 || t > period()) fail(ErrorKind::domain, "contour parameter out of range");
    return upper(t) ? upper_point(t) : std::conj(upper_point(mirror(t)));
}

cd ContourPath::tangent(double t) const {
    return upper(t) ? upper_tangent(t) : -std::conj(upper_tangent(mirror(t)));
}

std::vector<double> ContourPath::breaks() const { return {double(na_), double(na_ + K_ - 1)}; }

std::vector<cd> ContourPath::nodes() const {
    std::vector<cd> z;
    for (int i = 0; i <= 2 * m_; ++i) z.push_back(point(i));
    z.back() = z.front();
    return z;
}

std::vector<cd> contour_points(const ContourSpec& spec) { return ContourPath(spec).nodes(); }

LambdaPath polyline_path(const std::vector<cd>& pts) {
    if (pts.size() < 2) fail(ErrorKind::domain, "a path needs at least two points");
    LambdaPath p;
    const auto seg = [n = pts.size()](double s) {
        return std::clamp<std::size_t>(std::size_t(std::max(0.0, s)), 0, n - 2);
    };
    p.lambda = [pts, seg](double s) {
        const std::size_t i = seg(s);
        return pts[i] + (s - double(i)) * (pts[i + 1] - pts[i]);
    };
    p.dlambda = [pts, seg](double s) {
        const std::size_t i = seg(s);
        return pts[i + 1] - pts[i];
    };
    p.s0 = 0;
    p.s1 = double(pts.size() - 1);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) p.breaks.push_back(double(i));
    return p;
}

// ---------------------------------------------------------------------------
// Kato continuation

CMatX kato_initial_basis(double lambda, Side side, const AffineMatrix& limit) {
    const SubspaceBasis b = endstate_splitting(cd(lambda, 0), side, limit);
    const int k = subspace_dim(side);
    const Eigen::MatrixXd P = b.projector.real();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(P);
    if (qr.rank() < k) fail(ErrorKind::splitting, "projector rank deficient at the base point");
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(5, k);
    return Q.cast<cd>();
}

KatoContinuation::KatoContinuation(AffineMatrix limit, Side side, LambdaPath path, CMatX V0, KatoOptions opt)
    : limit_(std::move(limit)), side_(side), path_(std::move(path)), opt_(opt) {
    if (V0.rows() != 5 || V0.cols() != subspace_dim(side))
        fail(ErrorKind::domain, "initial Kato basis has the wrong shape");
    cache_.emplace(path_.s0, std::move(V0));
}

CMatX KatoContinuation::integrate(double from, double to, CMatX V) {
    if (from == to) return V;
    std::vector<double> cuts{from};
    const double lo = std::min(from, to), hi = std::max(from, to);
    std::vector<double> inner;
    for (double b : path_.breaks)
        if (b > lo && b < hi) inner.push_back(b);
    if (to < from) std::reverse(inner.begin(), inner.end());
    cuts.insert(cuts.end(), inner.begin(), inner.end());
    cuts.push_back(to);

    const int k = int(V.cols());
    OdeOptions o;
    o.abs_tol = opt_.abs_tol;
    o.rel_tol = opt_.rel_tol;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        const double plo = std::min(a, b), phi = std::max(a, b), w = phi - plo;
        auto rhs = [&](double s, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
            // keep tangent evaluations inside the current smooth piece
            const double ss = std::clamp(s, plo + 1e-12 * w, phi - 1e-12 * w);
            const cd lam = path_.lambda(s);
            const ProjectorDerivative pd = projector_derivative(lam, side_, limit_);
            const CMat5 K = path_.dlambda(ss) * (pd.dP * pd.P - pd.P * pd.dP);
            Eigen::Map<const CMatX> Y(y.data(), 5, k);
            CMatX out = K * Y;
            return Eigen::Map<Eigen::VectorXcd>(out.data(), out.size());
        };
        Eigen::VectorXcd y = Eigen::Map<Eigen::VectorXcd>(V.data(), V.size());
        integrate_dopri5(rhs, a, b, y, o, &stats_);
        V = Eigen::Map<CMatX>(y.data(), 5, k);
    }
    return V;
}

CMatX KatoContinuation::basis(double s) {
    auto it = cache_.lower_bound(s);
    if (it != cache_.end() && it->first == s) return it->second;
    // nearest cached parameter
    auto best = it;
    if (it == cache_.end() || (it != cache_.begin() && std::abs(std::prev(it)->first - s) <= std::abs(it->first - s)))
        best = std::prev(it);
    CMatX V = integrate(best->first, s, best->second);
    cache_.emplace(s, V);
    return V;
}

std::vector<SubspaceBasis> kato_basis(const std::vector<cd>& pts, Side side, const ModelParams& p,
                                      const KatoOptions& opt) {
    require_spectral_params(p);
    if (pts.empty()) return {};
    if (pts.front().imag() != 0.0) fail(ErrorKind::domain, "Kato path must start on the real axis");
    const AffineMatrix lim = limit_affine(side, p, rankine_hugoniot(p));
    const CMatX V0 = kato_initial_basis(pts.front().real(), side, lim);
    std::vector<SubspaceBasis> out;
    if (pts.size() == 1) {
        SubspaceBasis b = endstate_splitting(pts[0], side, lim);
        b.vectors = V0;
        out.push_back(b);
        return out;
    }
    KatoContinuation kc(lim, side, polyline_path(pts), V0, opt);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        SubspaceBasis b = endstate_splitting(pts[i], side, lim);
        b.vectors = kc.basis(double(i));
        out.push_back(std::move(b));
    }
    return out;
}

CMatX kato_projector_difference(const LambdaPath& path, Side side, const AffineMatrix& limit, const CMatX& V0,
                                int steps) {
    auto run = [&](int n) {
        CMatX V = V0;
        for (int j = 1; j <= n; ++j) {
            const double s = path.s0 + (path.s1 - path.s0) * j / n;
            V = endstate_splitting(path.lambda(s), side, limit).projector * V;
        }
        return V;
    };
    return 2.0 * run(2 * steps) - run(steps);
}

// ---------------------------------------------------------------------------
// x-integration

EvansSystem::EvansSystem(const ShockProfile& prof, double L_minus, double L_plus, EvansOptions opt)
    : L_minus_(L_minus), L_plus_(L_plus), opt_(opt) {
    const ModelParams& p = prof.params();
    require_spectral_params(p);
    if (!(L_minus > 0 && L_plus > 0)) fail(ErrorKind::domain, "truncation lengths must be positive");
    if (L_minus > prof.L_minus() * (1 + 1e-12) || L_plus > prof.L_plus() * (1 + 1e-12))
        fail(ErrorKind::evaluation, "truncation lengths exceed the profile domain");
    const Endstates& s = prof.endstates();
    lim_minus_ = limit_affine(Side::minus, p, s);
    lim_plus_ = limit_affine(Side::plus, p, s);
    const double em = s.e_minus;
    field_ = [&prof, p, em](double x) { return assemble_affine(prof.at(x), p, em); };
}

EvansSystem::EvansSystem(MatrixField field, AffineMatrix lm, AffineMatrix lp, double L_minus, double L_plus,
                         EvansOptions opt)
    : field_(std::move(field)), lim_minus_(lm), lim_plus_(lp), L_minus_(L_minus), L_plus_(L_plus), opt_(opt) {}

cd EvansSystem::eigen_sum(cd lambda, Side side) const {
    return endstate_splitting(lambda, side, limit(side)).eigen_sum;
}

namespace {

// Hodge pairing of 3-forms with 2-forms on C^5: complement index and sign.
struct StarTable {
    std::array<int, 10> comp{};  // 2-subset index -> complementary 3-subset index
    std::array<int, 10> sign{};
};

const StarTable& star_table() {
    static const StarTable t = [] {
        StarTable s;
        const auto& b2 = wedge_basis(5, 2);
        const auto& b3 = wedge_basis(5, 3);
        for (std::size_t j = 0; j < b2.size(); ++j) {
            std::vector<int> I;
            for (int i = 0; i < 5; ++i)
                if (std::find(b2[j].begin(), b2[j].end(), i) == b2[j].end()) I.push_back(i);
            const auto pos = std::find(b3.begin(), b3.end(), I) - b3.begin();
            s.comp[j] = int(pos);
            s.sign[j] = shuffle_sign(I, b2[j]);
        }
        return s;
    }();
    return t;
}

std::string describe(cd lambda, const char* what) {
    std::ostringstream os;
    os << what << " at lambda=" << lambda.real() << (lambda.imag() < 0 ? "" : "+") << lambda.imag() << "i";
    return os.str();
}

template <class F, class V>
void run_x(F&& f, double a, double b, V& y, const OdeOptions& o, cd lambda, const char* what) {
    try {
        integrate_dopri5(f, a, b, y, o);
    } catch (const Error& e) {
        std::vector<std::string> tr = e.trace();
        tr.push_back(describe(lambda, what));
        fail(e.kind(), describe(lambda, what) + ": " + e.what(), tr);
    }
}

}  // namespace

cd EvansSystem::exterior(cd lambda, const CMatX& Vm, const CMatX& Vp) const {
    const cd mu_m = eigen_sum(lambda, Side::minus), mu_p = eigen_sum(lambda, Side::plus);
    using V10 = CVec10;

    V10 y = wedge(Vm);
    auto fm = [&](double x, const V10& w) -> V10 {
        const CMat5 A = coeffs(x)(lambda);
        return lift2(A) * w - mu_m * w;
    };
    run_x(fm, -L_minus_, 0.0, y, opt_.ode, lambda, "unstable wedge from -L");

    const StarTable& st = star_table();
    const CVec10 wp = wedge(Vp);
    if (opt_.direct_wedge) {
        V10 z = wp;
        auto fp = [&](double x, const V10& w) -> V10 {
            const CMat5 A = coeffs(x)(lambda);
            return lift3(A) * w - mu_p * w;
        };
        run_x(fp, L_plus_, 0.0, z, opt_.ode, lambda, "stable wedge from +L");
        cd D = 0;
        for (int j = 0; j < 10; ++j) D += double(st.sign[j]) * z[st.comp[j]] * y[j];
        return D;
    }
    V10 eta;
    for (int j = 0; j < 10; ++j) eta[j] = double(st.sign[j]) * wp[st.comp[j]];
    auto fa = [&](double x, const V10& w) -> V10 {
        const CMat5 A = coeffs(x)(lambda);
        return (A.trace() - mu_p) * w - lift2(A).transpose() * w;
    };
    run_x(fa, L_plus_, 0.0, eta, opt_.ode, lambda, "adjoint wedge from +L");
    return eta.cwiseProduct(y).sum();
}

cd EvansSystem::polar(cd lambda, const CMatX& Vm, const CMatX& Vp) const {
    auto frame = [&](const CMatX& V, Side side, double x0) {
        const int k = int(V.cols());
        const cd mu = eigen_sum(lambda, side);
        Eigen::HouseholderQR<CMatX> qr(V);
        const CMatX Q = qr.householderQ() * CMatX::Identity(5, k);
        const CMatX R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        Eigen::VectorXcd y(5 * k + 1);
        Eigen::Map<CMatX>(y.data(), 5, k) = Q;
        y[5 * k] = std::log(R.determinant());  // log of the radius keeps its scale O(1)
        auto f = [&](double x, const Eigen::VectorXcd& s) -> Eigen::VectorXcd {
            const CMat5 A = coeffs(x)(lambda);
            Eigen::Map<const CMatX> W(s.data(), 5, k);
            const CMatX B = A * W;
            const CMatX G = W.adjoint() * B;
            Eigen::VectorXcd out(5 * k + 1);
            Eigen::Map<CMatX>(out.data(), 5, k) = B - W * G;
            out[5 * k] = G.trace() - mu;
            return out;
        };
        auto obs = [&](double, Eigen::VectorXcd& s) {
            Eigen::Map<CMatX> W(s.data(), 5, k);
            const double drift = (W.adjoint() * W - CMatX::Identity(k, k)).cwiseAbs().maxCoeff();
            if (drift > opt_.orth_tolerance) {
                Eigen::HouseholderQR<CMatX> q2(W);
                const CMatX R2 = q2.matrixQR().topRows(k).triangularView<Eigen::Upper>();
                const CMatX Q2 = q2.householderQ() * CMatX::Identity(5, k);
                W = Q2;
                s[5 * k] += std::log(R2.determinant());
                ++reorth_;
            }
            return true;
        };
        try {
            integrate_dopri5(f, x0, 0.0, y, opt_.ode, nullptr, obs);
        } catch (const Error& e) {
            const char* what = side == Side::minus ? "polar frame from -L" : "polar frame from +L";
            fail(e.kind(), describe(lambda, what) + ": " + e.what(), e.trace());
        }
        return y;
    };
    const Eigen::VectorXcd ym = frame(Vm, Side::minus, -L_minus_);
    const Eigen::VectorXcd yp = frame(Vp, Side::plus, L_plus_);
    CMat5 M;
    M.leftCols(3) = Eigen::Map<const CMatX>(yp.data(), 5, 3);
    M.rightCols(2) = Eigen::Map<const CMatX>(ym.data(), 5, 2);
    return std::exp(yp[15] + ym[10]) * M.determinant();
}

cd evans_exterior(cd lambda, const EvansSystem& sys, const CMatX& Vm, const CMatX& Vp) {
    return sys.exterior(lambda, Vm, Vp);
}

cd evans_polar(cd lambda, const EvansSystem& sys, const CMatX& Vm, const CMatX& Vp) {
    return sys.polar(lambda, Vm, Vp);
}

// ---------------------------------------------------------------------------
// winding

namespace {

double arg_step(cd a, cd b) { return std::arg(b / a); }

}  // namespace

WindingResult winding_from_samples(const std::vector<cd>& D) {
    WindingResult r;
    double total = 0;
    for (std::size_t i = 0; i + 1 < D.size(); ++i) {
        const double s = arg_step(D[i], D[i + 1]);
        total += s;
        r.max_arg_step = std::max(r.max_arg_step, std::abs(s));
    }
    r.winding = int(std::lround(total / (2 * pi)));
    return r;
}

WindingResult winding_number(const ContourPath& path, const std::function<cd(double)>& D, const WindingOptions& opt,
                             int* depth_used) {
    auto eval = [&](double t) {
        const cd d = D(t);
        if (!(std::abs(d) >= opt.zero_threshold)) {
            std::ostringstream os;
            const cd lam = path.point(t);
            os << "Evans function vanishes (|D|=" << std::abs(d) << ") on the contour at lambda=" << lam.real()
               << (lam.imag() < 0 ? "" : "+") << lam.imag() << "i";
            fail(ErrorKind::zero_on_contour, os.str());
        }
        return d;
    };
    WindingResult r;
    int depth_max = 0;
    double total = 0;
    std::function<void(double, cd, double, cd, int)> seg = [&](double ta, cd da, double tb, cd db, int depth) {
        const double s = arg_step(da, db);
        if (std::abs(s) <= opt.max_step) {
            total += s;
            r.max_arg_step = std::max(r.max_arg_step, std::abs(s));
            depth_max = std::max(depth_max, depth);
            return;
        }
        if (depth >= opt.max_depth) {
            std::ostringstream os;
            os << "argument step " << s << " unresolved after " << depth << " bisections near lambda="
               << path.point(ta);
            fail(ErrorKind::unresolved_winding, os.str());
        }
        const double tm = 0.5 * (ta + tb);
        const cd dm = eval(tm);
        seg(ta, da, tm, dm, depth + 1);
        seg(tm, dm, tb, db, depth + 1);
    };
    const int n = int(std::lround(path.period()));
    cd prev = eval(0.0);
    const cd first = prev;
    for (int i = 1; i <= n; ++i) {
        const cd cur = i == n ? first : eval(double(i));
        seg(double(i - 1), prev, double(i), cur, 0);
        prev = cur;
    }
    r.winding = int(std::lround(total / (2 * pi)));
    if (depth_used) *depth_used = depth_max;
    return r;
}

// ---------------------------------------------------------------------------
// contour evaluation

EvansContour evans_contour(const EvansSystem& sys, const ContourSpec& spec, const ContourOptions& opt) {
    const ContourPath cp(spec);
    const double R = spec.radius, b = opt.base_lambda;

    // real segment from the base point (s in [-1, 0]) followed by the upper half
    LambdaPath path;
    path.lambda = [cp, R, b](double s) { return s < 0 ? cd(b + (R - b) * (s + 1.0), 0.0) : cp.point(s); };
    path.dlambda = [cp, R, b](double s) { return s < 0 ? cd(R - b, 0.0) : cp.tangent(s); };
    path.s0 = -1.0;
    path.s1 = cp.half();
    path.breaks = cp.breaks();
    path.breaks.insert(path.breaks.begin(), 0.0);

    KatoContinuation km(sys.limit(Side::minus), Side::minus, path,
                        kato_initial_basis(b, Side::minus, sys.limit(Side::minus)), opt.kato);
    KatoContinuation kp(sys.limit(Side::plus), Side::plus, path,
                        kato_initial_basis(b, Side::plus, sys.limit(Side::plus)), opt.kato);

    std::map<double, ContourSample> upper;
    auto sample_upper = [&](double s) -> const ContourSample& {
        auto it = upper.find(s);
        if (it != upper.end()) return it->second;
        ContourSample smp;
        smp.t = s;
        smp.lambda = cp.point(s);
        const CMatX Vm = km.basis(s), Vp = kp.basis(s);
        smp.D_exterior = sys.exterior(smp.lambda, Vm, Vp);
        smp.D_polar = opt.polar ? sys.polar(smp.lambda, Vm, Vp) : cd(NAN, NAN);
        return upper.emplace(s, smp).first->second;
    };
    auto D = [&](double t) {
        if (cp.upper(t)) return sample_upper(t).D_exterior;
        return std::conj(sample_upper(cp.mirror(t)).D_exterior);
    };

    EvansContour out;
    out.spec = spec;
    int depth = 0;
    const WindingResult w = winding_number(cp, D, opt.winding, &depth);
    out.winding = w.winding;
    out.max_arg_step = w.max_arg_step;
    out.refinement_depth = depth;

    // closed list of samples ordered by t, lower half mirrored
    for (const auto& [s, smp] : upper) out.samples.push_back(smp);
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        if (it->first >= cp.half()) continue;
        ContourSample m = it->second;
        m.t = cp.mirror(it->first);
        m.lambda = std::conj(m.lambda);
        m.D_exterior = std::conj(m.D_exterior);
        m.D_polar = std::conj(m.D_polar);
        out.samples.push_back(m);
    }
    out.samples.back().lambda = out.samples.front().lambda;

    double agree = 0;
    if (opt.polar)
        for (const auto& s : out.samples)
            agree = std::max(agree, std::abs(s.D_exterior - s.D_polar) / std::abs(s.D_exterior));
    out.method_agreement = opt.polar ? agree : NAN;
    return out;
}

EvansEvaluator::EvansEvaluator(const EvansSystem& sys, ContourOptions opt)
    : sys_(sys),
      opt_(opt),
      km_(sys.limit(Side::minus), Side::minus,
          LambdaPath{[](double s) { return cd(s, 0); }, [](double) { return cd(1, 0); }, opt.base_lambda,
                     opt.base_lambda, {}},
          kato_initial_basis(opt.base_lambda, Side::minus, sys.limit(Side::minus)), opt.kato),
      kp_(sys.limit(Side::plus), Side::plus,
          LambdaPath{[](double s) { return cd(s, 0); }, [](double) { return cd(1, 0); }, opt.base_lambda,
                     opt.base_lambda, {}},
          kato_initial_basis(opt.base_lambda, Side::plus, sys.limit(Side::plus)), opt.kato) {}

std::pair<CMatX, CMatX> EvansEvaluator::real_bases(double lambda) {
    if (!(lambda > 0)) fail(ErrorKind::domain, "real-axis evaluation needs lambda > 0");
    return {km_.basis(lambda), kp_.basis(lambda)};
}

cd EvansEvaluator::real(double lambda) {
    const auto [Vm, Vp] = real_bases(lambda);
    return sys_.exterior(cd(lambda, 0), Vm, Vp);
}

std::vector<std::pair<cd, cd>> EvansEvaluator::quarter_arc(double r, int n) {
    const auto [Vm, Vp] = real_bases(r);
    LambdaPath arc{[r](double phi) { return std::polar(r, phi); },
                   [r](double phi) { return cd(0, 1) * std::polar(r, phi); }, 0.0, 0.5 * pi, {}};
    KatoContinuation am(sys_.limit(Side::minus), Side::minus, arc, Vm, opt_.kato);
    KatoContinuation ap(sys_.limit(Side::plus), Side::plus, arc, Vp, opt_.kato);
    std::vector<std::pair<cd, cd>> out;
    for (int i = 0; i <= n; ++i) {
        const double phi = 0.5 * pi * i / n;
        const cd lam = std::polar(r, phi);
        out.emplace_back(lam, sys_.exterior(lam, am.basis(phi), ap.basis(phi)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// output

void write_contour(std::ostream& os, const EvansContour& c) {
    os << "# re_lambda im_lambda re_D im_D method\n";
    os << std::setprecision(17);
    for (const auto& s : c.samples) {
        os << s.lambda.real() << ' ' << s.lambda.imag() << ' ' << s.D_exterior.real() << ' ' << s.D_exterior.imag()
           << " exterior\n";
        if (std::isfinite(s.D_polar.real()))
            os << s.lambda.real() << ' ' << s.lambda.imag() << ' ' << s.D_polar.real() << ' ' << s.D_polar.imag()
               << " polar\n";
    }
}

std::string contour_svg(const EvansContour& c, const std::string& title) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& s : c.samples) {
        xmin = std::min(xmin, s.D_exterior.real());
        xmax = std::max(xmax, s.D_exterior.real());
        ymin = std::min(ymin, s.D_exterior.imag());
        ymax = std::max(ymax, s.D_exterior.imag());
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
    const double pad = 0.08 * span;
    xmin -= pad;
    ymin -= pad;
    const double W = 480, H = 480, sc = W / (span + 2 * pad);
    auto X = [&](double x) { return (x - xmin) * sc; };
    auto Y = [&](double y) { return H - (y - ymin) * sc; };

    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H + 30 << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"8\" y=\"" << H + 20 << "\" font-family=\"sans-serif\" font-size=\"12\">" << title
       << " (winding " << c.winding << ")</text>\n";
    os << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << W << "\" y2=\"" << Y(0)
       << "\" stroke=\"#bbb\"/>\n<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << H
       << "\" stroke=\"#bbb\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.3\" points=\"";
    for (const auto& s : c.samples) os << X(s.D_exterior.real()) << ',' << Y(s.D_exterior.imag()) << ' ';
    os << "\"/>\n<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"3\" fill=\"#c0392b\"/>\n</svg>\n";
    return os.str();
}

}  // namespace shockstab
