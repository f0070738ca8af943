#include <doctest.h>

#include <random>

#include "shockstab/error.hpp"
#include "shockstab/linalg.hpp"

using namespace shockstab;

namespace {

CMatX random_matrix(std::mt19937_64& rng, int r, int c) {
    std::normal_distribution<double> N;
    CMatX M(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) M(i, j) = cd(N(rng), N(rng));
    return M;
}

// M^(k) w(V) by multilinearity: sum over columns of w(V with column j -> M v_j).
CMatX lift_applied(const CMatX& M, const CMatX& V) {
    CMatX out = CMatX::Zero(wedge(V).rows(), 1);
    for (int j = 0; j < V.cols(); ++j) {
        CMatX W = V;
        W.col(j) = M * V.col(j);
        out += wedge(W);
    }
    return out;
}

}  // namespace

TEST_CASE("lifted matrices act as derivations on wedges") {
    std::mt19937_64 rng(3);
    for (int k = 1; k <= 4; ++k) {
        for (int trial = 0; trial < 5; ++trial) {
            const CMatX M = random_matrix(rng, 5, 5), V = random_matrix(rng, 5, k);
            CHECK((lift(M, k) * wedge(V) - lift_applied(M, V)).norm() < 1e-11 * lift_applied(M, V).norm());
        }
    }
    const CMat5 M = random_matrix(rng, 5, 5);
    CHECK((lift2(M) - lift(M, 2)).norm() == 0.0);
    CHECK((lift3(M) - lift(M, 3)).norm() == 0.0);
    CHECK(std::abs(lift(M, 5)(0, 0) - M.trace()) < 1e-13 * M.norm());
}

TEST_CASE("lift preserves commutators") {
    std::mt19937_64 rng(4);
    const CMatX A = random_matrix(rng, 5, 5), B = random_matrix(rng, 5, 5);
    const CMatX lhs = lift(A * B - B * A, 2);
    const CMatX rhs = lift(A, 2) * lift(B, 2) - lift(B, 2) * lift(A, 2);
    CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
}

TEST_CASE("lifted norm bound on random matrices") {
    std::mt19937_64 rng(5);
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        const CMatX M = random_matrix(rng, 5, 5);
        for (int k = 2; k <= 3; ++k)
            for (NormKind n : {NormKind::l1, NormKind::l2, NormKind::linf}) failures += !lifted_norm_check(M, k, n);
    }
    CHECK(failures == 0);
}

TEST_CASE("matrix norms") {
    CMatX M(2, 2);
    M << cd(1, 0), cd(-2, 0), cd(3, 0), cd(0, 4);
    CHECK(matrix_norm(M, NormKind::l1) == doctest::Approx(6.0));
    CHECK(matrix_norm(M, NormKind::linf) == doctest::Approx(7.0));
    Eigen::JacobiSVD<CMatX> svd(M);
    CHECK(matrix_norm(M, NormKind::l2) == doctest::Approx(svd.singularValues()[0]));
    CHECK(parse_norm("linf") == NormKind::linf);
    CHECK_THROWS_AS(parse_norm("l3"), Error);
}

TEST_CASE("wedge basis and shuffle signs") {
    CHECK(wedge_basis(5, 2).size() == 10);
    CHECK(wedge_basis(5, 3).size() == 10);
    CHECK(wedge_basis(5, 2).front() == std::vector<int>{0, 1});
    CHECK(wedge_basis(5, 2).back() == std::vector<int>{3, 4});
    CHECK(shuffle_sign({0, 1}, {2, 3, 4}) == 1);
    CHECK(shuffle_sign({1, 0}, {2, 3, 4}) == -1);
    CHECK(shuffle_sign({0, 2}, {1, 3, 4}) == -1);
    CHECK(shuffle_sign({3, 4}, {0, 1, 2}) == 1);
    CHECK(shuffle_sign({0, 1}, {1, 3, 4}) == 0);
}

TEST_CASE("wedge pairing is the 5x5 determinant") {
    std::mt19937_64 rng(6);
    const CMatX A = random_matrix(rng, 5, 2), B = random_matrix(rng, 5, 3);
    CMatX full(5, 5);
    full << A, B;
    const CMatX wa = wedge(A), wb = wedge(B);
    const auto& I2 = wedge_basis(5, 2);
    const auto& I3 = wedge_basis(5, 3);
    cd sum = 0;
    for (std::size_t i = 0; i < I2.size(); ++i)
        for (std::size_t j = 0; j < I3.size(); ++j) sum += double(shuffle_sign(I2[i], I3[j])) * wa(i, 0) * wb(j, 0);
    CHECK(std::abs(sum - full.determinant()) < 1e-12 * std::abs(full.determinant()));
}

TEST_CASE("ordered Schur form") {
    std::mt19937_64 rng(8);
    for (bool desc : {true, false}) {
        const CMat5 A = random_matrix(rng, 5, 5);
        const OrderedSchur s = ordered_schur(A, desc);
        CHECK((s.Q * s.T * s.Q.adjoint() - A).norm() < 1e-12 * A.norm());
        CHECK((s.Q.adjoint() * s.Q - CMat5::Identity()).norm() < 1e-12);
        CHECK(s.T.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm() < 1e-12 * A.norm());
        for (int i = 0; i + 1 < 5; ++i) {
            if (desc) CHECK(s.T(i, i).real() >= s.T(i + 1, i + 1).real() - 1e-12);
            else CHECK(s.T(i, i).real() <= s.T(i + 1, i + 1).real() + 1e-12);
        }
    }
}

TEST_CASE("Sylvester solve") {
    std::mt19937_64 rng(9);
    CMatX A = random_matrix(rng, 2, 2), B = random_matrix(rng, 3, 3), C = random_matrix(rng, 2, 3);
    A += CMatX::Identity(2, 2) * 6.0;  // separate the spectra
    const CMatX X = solve_sylvester(A, B, C);
    CHECK((A * X - X * B - C).norm() < 1e-12 * C.norm());
}
