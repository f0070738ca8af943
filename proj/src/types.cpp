#include "shockstab/types.hpp"

#include <cstring>
#include <string>

#include "shockstab/error.hpp"

namespace shockstab {

const char* norm_name(NormKind n) {
    switch (n) {
        case NormKind::l1: return "l1";
        case NormKind::l2: return "l2";
        case NormKind::linf: return "linf";
    }
    return "?";
}

NormKind parse_norm(const char* s) {
    if (!std::strcmp(s, "l1") || !std::strcmp(s, "1")) return NormKind::l1;
    if (!std::strcmp(s, "l2") || !std::strcmp(s, "2")) return NormKind::l2;
    if (!std::strcmp(s, "linf") || !std::strcmp(s, "inf")) return NormKind::linf;
    fail(ErrorKind::config, std::string("unknown norm '") + s + "' (expected l1, l2 or linf)");
}

double matrix_norm(const Eigen::MatrixXcd& m, NormKind n) {
    if (m.size() == 0) return 0.0;
    switch (n) {
        case NormKind::l1: return m.cwiseAbs().colwise().sum().maxCoeff();
        case NormKind::linf: return m.cwiseAbs().rowwise().sum().maxCoeff();
        case NormKind::l2: {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            return svd.singularValues()(0);
        }
    }
    return 0.0;
}

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::physicality: return "physicality";
        case ErrorKind::degeneracy: return "degeneracy";
        case ErrorKind::solver: return "solver";
        case ErrorKind::splitting: return "splitting";
        case ErrorKind::evaluation: return "evaluation";
        case ErrorKind::numerical: return "numerical";
        case ErrorKind::zero_on_contour: return "zero_on_contour";
        case ErrorKind::unresolved_winding: return "unresolved_winding";
        case ErrorKind::fit: return "fit";
        case ErrorKind::config: return "config";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace shockstab
