#pragma once

#include <complex>

#include <Eigen/Dense>

namespace shockstab {

using cd = std::complex<double>;

using RMat2 = Eigen::Matrix2d;
using RMat5 = Eigen::Matrix<double, 5, 5>;
using CMat5 = Eigen::Matrix<cd, 5, 5>;
using CVec5 = Eigen::Matrix<cd, 5, 1>;
using CMat10 = Eigen::Matrix<cd, 10, 10>;
using CVec10 = Eigen::Matrix<cd, 10, 1>;
using CMatX = Eigen::MatrixXcd;

// -inf side carries the 2-dim unstable subspace, +inf side the 3-dim stable one
enum class Side { minus, plus };

inline int subspace_dim(Side s) { return s == Side::minus ? 2 : 3; }

enum class NormKind { l1, l2, linf };

const char* norm_name(NormKind n);
NormKind parse_norm(const char* s);

double matrix_norm(const Eigen::MatrixXcd& m, NormKind n);

}  // namespace shockstab
