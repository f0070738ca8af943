#include <doctest.h>

#include <cmath>
#include <random>

#include "chain_oracle.hpp"
#include "shockstab/error.hpp"
#include "shockstab/freq_bounds.hpp"

using namespace shockstab;

namespace {

ModelParams point(double G, double nu, double vp) {
    ModelParams p;
    p.gruneisen = G;
    p.nu = nu;
    p.v_plus = vp;
    return p;
}

}  // namespace

TEST_CASE("coordinate chain reproduces the standard-coordinate matrix") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (const ModelParams& p : {point(2.0 / 3.0, 1.0, 0.3), point(0.2, 5.0, v_star(0.2))}) {
        const ShockProfile prof = solve_profile(p);
        const double em = prof.endstates().e_minus;
        double wb = 0, wf = 0;
        for (int i = 0; i < 40; ++i) {
            const double x = -prof.L_minus() + (prof.L_minus() + prof.L_plus()) * U(rng);
            const cd l = std::polar(1.0 + 200.0 * U(rng), (U(rng) - 0.5) * 3.14159);
            const auto e = oracle::chain_error(prof.at(x), p, em, l);
            wb = std::max(wb, e.B);
            wf = std::max(wf, e.F);
        }
        CHECK(wb < 1e-12);
        CHECK(wf < 1e-12);
    }
}

TEST_CASE("tracking scalars at an equilibrium point") {
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.4);
    const Endstates s = rankine_hugoniot(p);
    for (double v : {1.0, 0.4}) {
        const double e = v == 1.0 ? s.e_minus : s.e_plus;
        const ProfilePoint q = profile_point(0.0, v, e, p, s.e_minus);
        CHECK(std::abs(q.v_x) < 1e-14);
        const TrackingScalars t = tracking_scalars(q, p, s.e_minus);
        CHECK(t.h == 0.0);
        CHECK(t.j == doctest::Approx(0.0));
        CHECK(t.n == doctest::Approx(0.0));
        const double f = 2 * v - 1 - p.gruneisen * s.e_minus;
        const double k = (2 * f - v) * (v - f);
        CHECK(t.k == doctest::Approx(k));
        CHECK(t.m == doctest::Approx(v * (v - f) - k));
        const double g = p.gruneisen * e / p.nu;
        CHECK(t.l == doctest::Approx(g * (v - f)));
    }
}

TEST_CASE("tracking blocks have the 3+2 shape") {
    const ModelParams p = point(1.0, 2.0, 0.5);
    const ShockProfile prof = solve_profile(p);
    const TrackingMatrices t = tracking_matrices(prof.at(0.0), p, prof.endstates().e_minus);
    CHECK(TrackingMatrices::block(t.F[0], '-', '-').rows() == 3);
    CHECK(TrackingMatrices::block(t.F[0], '-', '+').cols() == 2);
    CHECK(TrackingMatrices::block(t.F[0], '+', '+').size() == 4);
}

TEST_CASE("T is antitone and the bound is a fixed point") {
    const ModelParams p = point(2.0 / 3.0, 1.0, v_star(2.0 / 3.0));
    const ShockProfile prof = solve_profile(p);
    const TrackingTable tab(prof, NormKind::l2);
    double prev = INFINITY;
    for (double L = 1; L < 1e5; L *= 1.7) {
        const double t = tab.T(L);
        CHECK(t <= prev);
        prev = t;
    }
    const TrackingBound b = tracking_bound(tab);
    CHECK(b.converged);
    CHECK(tab.T(b.Lambda_star) == doctest::Approx(b.Lambda_star).epsilon(1e-5));
    CHECK(tab.ricatti_margin(b.Lambda_star) > 0);
    CHECK(T_map(b.Lambda_star, prof, NormKind::l2) == doctest::Approx(b.Lambda_star).epsilon(1e-5));
    CHECK_THROWS_AS(T_map(-1, prof, NormKind::l2), Error);
    // the iteration converges from either side
    CHECK(tracking_bound(tab, 5000.0).Lambda_star == doctest::Approx(b.Lambda_star).epsilon(1e-4));
}

TEST_CASE("high-frequency fit of a synthetic function") {
    const double C = -2.5, a = 0.7;
    const HFApproximant f = hf_fit([&](double l) { return cd(C * std::exp(a * std::sqrt(l)), 0); }, 400.0);
    CHECK(f.C == doctest::Approx(C).epsilon(1e-10));
    CHECK(f.alpha == doctest::Approx(a).epsilon(1e-10));
    CHECK(f.fit_residual < 1e-10);
    FitOptions o;
    o.with_beta = true;
    const HFApproximant g = hf_fit([&](double l) { return cd(std::exp(0.3 * std::sqrt(l) + 0.01 * l), 0); }, 400.0, o);
    CHECK(g.beta == doctest::Approx(0.01).epsilon(1e-8));
    try {
        hf_fit([](double l) { return cd(l - 150.0, 0); }, 400.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::fit);
    }
    CHECK_THROWS_AS(hf_fit([](double l) { return cd(1, l); }, 400.0), Error);
}

TEST_CASE("practical radius on synthetic data") {
    // D = C e^{a sqrt(lambda)} (1 + 3/lambda): relative error 3/r on the arc
    HFApproximant a;
    a.C = 1.0;
    a.alpha = 0.5;
    auto arc = [&](double r) {
        std::vector<std::pair<cd, cd>> s;
        for (int i = 0; i <= 16; ++i) {
            const cd l = std::polar(r, 0.5 * 3.141592653589793 * i / 16);
            s.emplace_back(l, a(l) * (1.0 + 3.0 / l));
        }
        return s;
    };
    const PracticalRadius pr = practical_radius(arc, a, 1000.0);
    CHECK(pr.converged);
    CHECK(pr.error <= 0.1);
    CHECK(pr.radius >= 30.0);
    CHECK(pr.radius <= 30.0 * 1.03 + 1e-9);
    const PracticalRadius capped = practical_radius(arc, a, 12.0);
    CHECK_FALSE(capped.converged);
    CHECK(capped.radius == 12.0);
    // passing at the start radius returns the start
    CHECK(practical_radius(arc, a, 1000.0, 0.1, 40.0).radius == 40.0);
}

TEST_CASE("alpha from the profile") {
    const ModelParams p = point(2.0 / 3.0, 1.0, 0.5);
    const ShockProfile prof = solve_profile(p);
    // (1 + nu^{-1/2}) * integral of sqrt(v) minus its endstate values, by the trapezoid rule on a fine grid
    double I = 0;
    const double a = -prof.L_minus(), b = prof.L_plus();
    const int n = 200000;
    const double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) {
        const double x = a + i * h;
        const double ref = x <= 0 ? 1.0 : std::sqrt(0.5);
        I += (i == 0 || i == n ? 0.5 : 1.0) * h * (std::sqrt(prof.state(x)[0]) - ref);
    }
    CHECK(compute_alpha(prof) == doctest::Approx(2.0 * I).epsilon(1e-5));
}
