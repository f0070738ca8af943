#include <doctest.h>

#include <cmath>
#include <random>

#include "shockstab/error.hpp"
#include "shockstab/gas_model.hpp"

using namespace shockstab;

namespace {

ModelParams point(double G, double vp) {
    ModelParams p;
    p.gruneisen = G;
    p.nu = 1.0;
    p.v_plus = vp;
    return p;
}

ErrorKind kind_of(const ModelParams& p) {
    try {
        validate(p);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::io;  // no error
}

}  // namespace

TEST_CASE("jump conditions hold on a random grid") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 2000; ++i) {
        const double G = 0.2 + 1.8 * U(rng);
        const double vs = v_star(G);
        const Endstates s = rankine_hugoniot(point(G, vs + (1.0 - vs) * U(rng)));
        worst = std::max(worst, jump_residuals(s, G).max_abs());
        CHECK(s.e_minus >= 0.0);
        CHECK(s.e_plus > 0.0);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("strong-shock limit") {
    CHECK(v_star(2.0 / 3.0) == doctest::Approx(0.25));
    CHECK(v_star(0.4) == doctest::Approx(1.0 / 6.0));
    const Endstates s = rankine_hugoniot(point(0.4, v_star(0.4)));
    CHECK(s.e_minus == 0.0);
    CHECK(std::isinf(mach_number(point(0.4, v_star(0.4)))));
}

TEST_CASE("Mach number two ways and its inverse") {
    for (double G : {0.2, 0.4, 2.0 / 3.0, 1.0, 2.0}) {
        for (double t : {0.05, 0.3, 0.7, 0.99}) {
            const double vs = v_star(G), vp = vs + t * (1.0 - vs);
            const ModelParams p = point(G, vp);
            const double M = mach_number(p);
            CHECK(M > 1.0 - 1e-12);
            CHECK(M == doctest::Approx(mach_from_sound_speed(rankine_hugoniot(p), G)).epsilon(1e-12));
            CHECK(v_plus_for_mach(G, M) == doctest::Approx(vp).epsilon(1e-12));
        }
    }
    // weak-shock limit
    for (double G : {0.2, 0.4, 2.0 / 3.0, 1.0, 1.7, 2.0}) CHECK(mach_number(point(G, 1.0)) == 1.0);
    // Mach 2 iso-curve at Gamma = 2/3: 1/4 + 2/(8/3 * 4)
    CHECK(v_plus_for_mach(2.0 / 3.0, 2.0) == doctest::Approx(0.4375));
}

TEST_CASE("Mach number decreases with v+") {
    double prev = INFINITY;
    for (int i = 0; i <= 50; ++i) {
        const double vp = v_star(1.0) + (1.0 - v_star(1.0)) * i / 50.0;
        const double M = mach_number(point(1.0, vp));
        CHECK(M <= prev);
        prev = M;
    }
}

TEST_CASE("Eucken ratio") {
    CHECK(eucken_nu_over_mu(1.4) == doctest::Approx(0.75 * (9 * 1.4 - 5) / 4));
    CHECK(eucken_nu_over_mu(1.0) == doctest::Approx(0.75));
    CHECK_THROWS_AS(eucken_nu_over_mu(0.9), Error);
}

TEST_CASE("parameter validation") {
    CHECK(kind_of(point(2.0 / 3.0, 0.1)) == ErrorKind::physicality);
    CHECK(kind_of(point(2.0 / 3.0, 1.2)) == ErrorKind::domain);
    CHECK(kind_of(point(-1.0, 0.5)) == ErrorKind::domain);
    CHECK(kind_of(point(2.0 / 3.0, NAN)) == ErrorKind::domain);
    ModelParams p = point(2.0 / 3.0, 0.5);
    p.nu = 0;
    CHECK(kind_of(p) == ErrorKind::domain);
    CHECK(kind_of(point(2.0 / 3.0, 0.25)) == ErrorKind::io);
    CHECK(std::isnan(air_defaults().v_plus));
}
