#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shockstab/profile.hpp"
#include "shockstab/types.hpp"

namespace shockstab {

// Auxiliary profile scalars of the high-frequency coordinate chain.
struct TrackingScalars {
    double f, g, h, j, k, l, m, n, q;
};

TrackingScalars tracking_scalars(const ProfilePoint& pt, const ModelParams& p, double e_minus);

// Theta_{-i/2}, i = 0..4, the lambda^{-i/2} coefficients of E minus its principal part.
std::array<RMat5, 5> theta_matrices(const ProfilePoint& pt, const ModelParams& p, double e_minus);

// Balancing transform S~ = diag(1, [[I, I], [-A, A]]) with A = diag(sqrt v, sqrt(v/nu)).
RMat5 balance_transform(const ProfilePoint& pt, const ModelParams& p);
RMat5 balance_transform_dx(const ProfilePoint& pt, const ModelParams& p);

struct TrackingMatrices {
    std::array<RMat5, 5> F;  // F[i] multiplies lambda^{-i/2}

    // 3+2 splitting X- = (X1, X2, X3), X+ = (X4, X5)
    static Eigen::MatrixXd block(const RMat5& M, char row, char col);
};

TrackingMatrices tracking_matrices(const ProfilePoint& pt, const ModelParams& p, double e_minus);

// |F*_kl|(x, Lambda) for kl in (--, -+, +-, ++).
std::array<double, 4> weighted_blocks(const TrackingMatrices& t, double Lambda, NormKind norm);

// Principal diagonal part of the X system at lambda.
CMat5 principal_part(const ProfilePoint& pt, const ModelParams& p, cd lambda);

// Block norms at every evaluation abscissa; T(Lambda) is then a cheap reduction.
class TrackingTable {
public:
    TrackingTable(const ShockProfile& prof, NormKind norm, int refine = 4);
    double T(double Lambda) const;
    double ricatti_margin(double Lambda) const;  // max_x lhs / Re sqrt(Lambda)
    NormKind norm() const { return norm_; }
    double nu() const { return nu_; }
    std::size_t size() const { return v_.size(); }

private:
    NormKind norm_;
    double nu_;
    std::vector<double> v_;
    std::vector<std::array<std::array<double, 4>, 5>> nrm_;  // [point][i][block]
    double lhs(std::size_t idx, double Lambda) const;
};

double T_map(double Lambda, const ShockProfile& prof, NormKind norm);

struct TrackingBound {
    double Lambda_star = 0;
    std::vector<double> iterates;
    bool converged = false;
    NormKind norm_used = NormKind::l2;
};

TrackingBound tracking_bound(const ShockProfile& prof, double init_Lambda = 100.0, NormKind norm = NormKind::l2,
                             int max_iter = 200, double rtol = 1e-6);
TrackingBound tracking_bound(const TrackingTable& table, double init_Lambda = 100.0, int max_iter = 200,
                             double rtol = 1e-6);

// (1 + nu^{-1/2}) times the integrated deviation of sqrt(v) from its endstate values.
double compute_alpha(const ShockProfile& prof);

struct HFApproximant {
    double C = 0;
    double alpha = 0;
    double beta = 0;  // only with the three-parameter model
    double fit_residual = 0;
    double valid_radius = 0;
    bool flagged = false;  // practical radius hit the cap without converging
    cd operator()(cd lambda) const { return C * std::exp(alpha * std::sqrt(lambda) + beta * lambda); }
};

using RealEvaluator = std::function<cd(double)>;
// D sampled on the upper quarter arc of radius r: (lambda, D) pairs.
using ArcEvaluator = std::function<std::vector<std::pair<cd, cd>>(double)>;

struct FitOptions {
    int samples = 16;
    bool with_beta = false;
};

HFApproximant hf_fit(const RealEvaluator& D, double lambda_max, const FitOptions& opt = {});

double approximant_error(const std::vector<std::pair<cd, cd>>& samples, const HFApproximant& a);

struct PracticalRadius {
    double radius = 0;
    double error = 0;
    bool converged = false;  // false: capped at the tracking radius
    std::vector<std::pair<double, double>> trials;  // (radius, max relative error)
};

PracticalRadius practical_radius(const ArcEvaluator& D, const HFApproximant& a, double cap, double tol1 = 0.1,
                                 double start = 5.0);

}  // namespace shockstab
