#pragma once

#include "shockstab/profile.hpp"
#include "shockstab/types.hpp"

namespace shockstab {

struct TruncationOptions {
    double C_star = 100.0;
    double k = 2.0;
    double tol = 1e-3;
    double step = 5.0;
    double start_tol = 1e-3;  // ladder starts where the profile is within this of U+-
    NormKind norm = NormKind::l2;
};

struct TruncationLengths {
    double L_minus = 0, L_plus = 0;
    double start_minus = 0, start_plus = 0;
    double excess_minus = 0, excess_plus = 0;  // lhs / rhs at the returned length
};

// Left side of the truncation condition at x: |A0(x)-A0,+-| + Lambda |A1(x)-A1,+-|.
double truncation_defect(const ShockProfile& prof, double x, double Lambda, NormKind norm);

TruncationLengths truncation_lengths(const ShockProfile& prof, double Lambda, const TruncationOptions& opt = {});

}  // namespace shockstab
