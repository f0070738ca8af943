#pragma once

#include <vector>

#include "shockstab/types.hpp"

namespace shockstab {

// Complex Schur form A = Q T Q^* whose leading k diagonal entries are the k
// eigenvalues of largest real part (descending = true) or smallest real part.
struct OrderedSchur {
    CMat5 Q;
    CMat5 T;
};

OrderedSchur ordered_schur(const CMat5& A, bool descending);

// Swap the adjacent diagonal entries (j, j+1) of an upper-triangular T,
// updating Q so that Q T Q^* is unchanged.
void schur_swap(CMat5& T, CMat5& Q, int j);

// X with A X - X B = C (A: k x k, B: m x m, disjoint spectra).
CMatX solve_sylvester(const CMatX& A, const CMatX& B, const CMatX& C);

// Lexicographically ordered k-subsets of {0..n-1}.
const std::vector<std::vector<int>>& wedge_basis(int n, int k);

// Induced action of M on the k-th exterior power:
// M^(k)(v1 ^ ... ^ vk) = sum_j v1 ^ ... ^ M vj ^ ... ^ vk.
CMatX lift(const CMatX& M, int k);
CMat10 lift2(const CMat5& M);
CMat10 lift3(const CMat5& M);

// Coordinates of v1 ^ ... ^ vk in the lexicographic basis (k x k minors).
CMatX wedge(const CMatX& V);

bool lifted_norm_check(const CMatX& M, int k, NormKind p);

// Sign of the permutation sending (I, J) (concatenated, I then J) to sorted order.
int shuffle_sign(const std::vector<int>& I, const std::vector<int>& J);

}  // namespace shockstab
