#include "shockstab/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "shockstab/error.hpp"

namespace shockstab {

void schur_swap(CMat5& T, CMat5& Q, int j) {
    const int n = 5;
    const cd t11 = T(j, j), t22 = T(j + 1, j + 1);
    // plane rotation G with G^* (T(j,j+1), t22 - t11)^T = (r, 0)^T
    const cd f = T(j, j + 1), g = t22 - t11;
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) return;  // equal eigenvalues, nothing to do
    double c;
    cd s;
    if (af == 0.0) {
        c = 0.0;
        s = std::conj(g) / ag;
    } else {
        const double r = std::hypot(af, ag);
        c = af / r;
        s = (f / af) * std::conj(g) / r;
    }
    for (int k = j + 2; k < n; ++k) {
        const cd x = T(j, k), y = T(j + 1, k);
        T(j, k) = c * x + s * y;
        T(j + 1, k) = c * y - std::conj(s) * x;
    }
    for (int k = 0; k < j; ++k) {
        const cd x = T(k, j), y = T(k, j + 1);
        T(k, j) = c * x + std::conj(s) * y;
        T(k, j + 1) = c * y - s * x;
    }
    T(j, j) = t22;
    T(j + 1, j + 1) = t11;
    for (int k = 0; k < n; ++k) {
        const cd x = Q(k, j), y = Q(k, j + 1);
        Q(k, j) = c * x + std::conj(s) * y;
        Q(k, j + 1) = c * y - s * x;
    }
}

OrderedSchur ordered_schur(const CMat5& A, bool descending) {
    Eigen::ComplexSchur<CMat5> cs(A);
    if (cs.info() != Eigen::Success) fail(ErrorKind::splitting, "complex Schur decomposition failed");
    OrderedSchur s{cs.matrixU(), cs.matrixT()};
    // bubble sort on the real parts of the diagonal
    for (int pass = 0; pass < 5; ++pass) {
        bool swapped = false;
        for (int j = 0; j + 1 < 5; ++j) {
            const double a = s.T(j, j).real(), b = s.T(j + 1, j + 1).real();
            if (descending ? (b > a) : (b < a)) {
                schur_swap(s.T, s.Q, j);
                swapped = true;
            }
        }
        if (!swapped) break;
    }
    return s;
}

CMatX solve_sylvester(const CMatX& A, const CMatX& B, const CMatX& C) {
    const Eigen::Index k = A.rows(), m = B.rows();
    // vec(AX - XB) = (I_m (x) A - B^T (x) I_k) vec(X)
    CMatX K = CMatX::Zero(k * m, k * m);
    for (Eigen::Index j = 0; j < m; ++j) {
        K.block(j * k, j * k, k, k) += A;
        for (Eigen::Index l = 0; l < m; ++l) K.block(l * k, j * k, k, k) -= B(j, l) * CMatX::Identity(k, k);
    }
    const Eigen::Map<const Eigen::VectorXcd> c(C.data(), k * m);
    Eigen::VectorXcd x = K.partialPivLu().solve(Eigen::VectorXcd(c));
    return Eigen::Map<CMatX>(x.data(), k, m);
}

namespace {

struct LiftTerm {
    int row, col, i, j, sign;
};

std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int p = k - 1;
        while (p >= 0 && cur[p] == n - k + p) --p;
        if (p < 0) break;
        ++cur[p];
        for (int q = p + 1; q < k; ++q) cur[q] = cur[q - 1] + 1;
    }
    return out;
}

std::mutex cache_mutex;

const std::vector<LiftTerm>& lift_terms(int n, int k) {
    static std::map<std::pair<int, int>, std::vector<LiftTerm>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    const auto basis = subsets(n, k);
    std::map<std::vector<int>, int> index;
    for (std::size_t r = 0; r < basis.size(); ++r) index[basis[r]] = static_cast<int>(r);
    std::vector<LiftTerm> terms;
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto& J = basis[col];
        for (int pos = 0; pos < k; ++pos) {
            for (int i = 0; i < n; ++i) {
                // replace e_{J[pos]} by e_i
                if (i != J[pos] && std::find(J.begin(), J.end(), i) != J.end()) continue;
                std::vector<int> I = J;
                I[pos] = i;
                // sort while counting transpositions
                int sign = 1;
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b + 1 < k - a; ++b)
                        if (I[b] > I[b + 1]) {
                            std::swap(I[b], I[b + 1]);
                            sign = -sign;
                        }
                terms.push_back({index[I], static_cast<int>(col), i, J[pos], sign});
            }
        }
    }
    return cache.emplace(std::make_pair(n, k), std::move(terms)).first->second;
}

}  // namespace

const std::vector<std::vector<int>>& wedge_basis(int n, int k) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    return cache.emplace(std::make_pair(n, k), subsets(n, k)).first->second;
}

CMatX lift(const CMatX& M, int k) {
    const int n = static_cast<int>(M.rows());
    if (M.cols() != n || k < 1 || k > n) fail(ErrorKind::domain, "lift expects a square matrix and 1 <= k <= n");
    const auto& terms = lift_terms(n, k);
    const auto N = static_cast<Eigen::Index>(wedge_basis(n, k).size());
    CMatX L = CMatX::Zero(N, N);
    for (const auto& t : terms) L(t.row, t.col) += static_cast<double>(t.sign) * M(t.i, t.j);
    return L;
}

CMat10 lift2(const CMat5& M) {
    static const std::vector<LiftTerm> terms = lift_terms(5, 2);
    CMat10 L = CMat10::Zero();
    for (const auto& t : terms) L(t.row, t.col) += static_cast<double>(t.sign) * M(t.i, t.j);
    return L;
}

CMat10 lift3(const CMat5& M) {
    static const std::vector<LiftTerm> terms = lift_terms(5, 3);
    CMat10 L = CMat10::Zero();
    for (const auto& t : terms) L(t.row, t.col) += static_cast<double>(t.sign) * M(t.i, t.j);
    return L;
}

CMatX wedge(const CMatX& V) {
    const int n = static_cast<int>(V.rows()), k = static_cast<int>(V.cols());
    const auto& basis = wedge_basis(n, k);
    CMatX w(basis.size(), 1);
    CMatX minor(k, k);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        for (int a = 0; a < k; ++a) minor.row(a) = V.row(basis[r][a]);
        w(static_cast<Eigen::Index>(r), 0) = minor.determinant();
    }
    return w;
}

bool lifted_norm_check(const CMatX& M, int k, NormKind p) {
    const double lhs = matrix_norm(lift(M, k), p);
    const double rhs = k * matrix_norm(M, p);
    return lhs <= rhs * (1.0 + 1e-12) + 1e-14;
}

int shuffle_sign(const std::vector<int>& I, const std::vector<int>& J) {
    std::vector<int> all(I);
    all.insert(all.end(), J.begin(), J.end());
    int sign = 1;
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b)
            if (all[a] > all[b]) sign = -sign;
            else if (all[a] == all[b]) return 0;
    return sign;
}

}  // namespace shockstab
