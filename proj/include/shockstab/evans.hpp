#pragma once

#include <functional>
#include <map>
#include <limits>
#include <string>
#include <vector>

#include "shockstab/eigensystem.hpp"
#include "shockstab/ode.hpp"
#include "shockstab/profile.hpp"
#include "shockstab/types.hpp"

namespace shockstab {

// Boundary of {Re lambda >= 0, |lambda| <= radius}, counterclockwise from
// lambda = radius.  The upper half is an arc of n/4 intervals followed by the
// imaginary axis with moduli radius * tau^2 and a quarter circle of radius
// r_min = radius / K^2 around the origin; the lower half is its mirror image.
struct ContourSpec {
    double radius = 10.0;
    int n_points = 180;  // intervals on the closed contour
};

class ContourPath {
public:
    explicit ContourPath(ContourSpec spec);

    const ContourSpec& spec() const { return spec_; }
    // Parameter t runs over [0, 2 half()]; integers are the mesh nodes.
    double half() const { return m_; }
    double period() const { return 2.0 * m_; }
    double r_min() const { return r_min_; }
    cd point(double t) const;
    cd tangent(double t) const;  // d lambda / dt
    // Upper half in [0, half()]; the parameter of the mirrored point otherwise.
    bool upper(double t) const { return t <= m_; }
    double mirror(double t) const { return period() - t; }
    // Nodes where the upper half path is not smooth.
    std::vector<double> breaks() const;
    std::vector<cd> nodes() const;

private:
    cd upper_point(double s) const;
    cd upper_tangent(double s) const;

    ContourSpec spec_;
    int m_ = 0, na_ = 0, K_ = 0;
    double r_min_ = 0;
};

std::vector<cd> contour_points(const ContourSpec& spec);

// Piecewise smooth path in the spectral parameter.
struct LambdaPath {
    std::function<cd(double)> lambda;
    std::function<cd(double)> dlambda;
    double s0 = 0, s1 = 1;
    std::vector<double> breaks;  // interior points where dlambda may jump
};

LambdaPath polyline_path(const std::vector<cd>& points);

struct KatoOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
};

// Real orthonormal basis of the endstate subspace at a real base point.
CMatX kato_initial_basis(double lambda, Side side, const AffineMatrix& limit);

// Solves V' = (P'P - PP')V along a path.  Bases are cached at every queried
// parameter so sequential queries only integrate the increment.
class KatoContinuation {
public:
    KatoContinuation(AffineMatrix limit, Side side, LambdaPath path, CMatX V0, KatoOptions opt = {});

    CMatX basis(double s);
    const LambdaPath& path() const { return path_; }
    Side side() const { return side_; }
    std::size_t evaluations() const { return stats_.evaluations; }

private:
    CMatX integrate(double from, double to, CMatX V);

    AffineMatrix limit_;
    Side side_;
    LambdaPath path_;
    KatoOptions opt_;
    std::map<double, CMatX> cache_;
    OdeStats stats_;
};

// Kato bases at the vertices of a polyline starting at a real point.
std::vector<SubspaceBasis> kato_basis(const std::vector<cd>& lambda_path, Side side, const ModelParams& p,
                                      const KatoOptions& opt = {});

// First-order projector-difference transport V_{j+1} = P_{j+1} V_j with
// Richardson extrapolation; an independent check of the Kato integrator.
CMatX kato_projector_difference(const LambdaPath& path, Side side, const AffineMatrix& limit, const CMatX& V0,
                                int steps);

struct EvansOptions {
    OdeOptions ode{1e-6, 1e-8, 0.0, std::numeric_limits<double>::infinity(), 200000, true};
    bool direct_wedge = false;      // pair two lifted wedges instead of using the adjoint
    double orth_tolerance = 1e-8;   // polar frame re-orthonormalization threshold
};

// x-integration of the eigenvalue ODE for one parameter point.  The
// coefficient matrix can be replaced for synthetic tests.
class EvansSystem {
public:
    using MatrixField = std::function<AffineMatrix(double x)>;

    EvansSystem(const ShockProfile& prof, double L_minus, double L_plus, EvansOptions opt = {});
    EvansSystem(MatrixField field, AffineMatrix limit_minus, AffineMatrix limit_plus, double L_minus,
                double L_plus, EvansOptions opt = {});

    const AffineMatrix& limit(Side s) const { return s == Side::minus ? lim_minus_ : lim_plus_; }
    double L_minus() const { return L_minus_; }
    double L_plus() const { return L_plus_; }
    const EvansOptions& options() const { return opt_; }

    cd exterior(cd lambda, const CMatX& Vminus, const CMatX& Vplus) const;
    cd polar(cd lambda, const CMatX& Vminus, const CMatX& Vplus) const;

    // Number of polar re-orthonormalizations performed so far.
    std::size_t reorthonormalizations() const { return reorth_; }

private:
    AffineMatrix coeffs(double x) const { return field_(x); }
    cd eigen_sum(cd lambda, Side side) const;

    MatrixField field_;
    AffineMatrix lim_minus_, lim_plus_;
    double L_minus_, L_plus_;
    EvansOptions opt_;
    mutable std::size_t reorth_ = 0;
};

cd evans_exterior(cd lambda, const EvansSystem& sys, const CMatX& Vminus, const CMatX& Vplus);
cd evans_polar(cd lambda, const EvansSystem& sys, const CMatX& Vminus, const CMatX& Vplus);

struct ContourSample {
    double t = 0;
    cd lambda;
    cd D_exterior;
    cd D_polar;
};

struct EvansContour {
    ContourSpec spec;
    std::vector<ContourSample> samples;  // closed: first and last lambda coincide
    int winding = 0;
    double max_arg_step = 0;
    int refinement_depth = 0;
    double method_agreement = 0;  // max relative difference of the two backends
};

// Argument-principle count from samples of a closed curve.
struct WindingResult {
    int winding = 0;
    double max_arg_step = 0;
};

WindingResult winding_from_samples(const std::vector<cd>& D);

struct WindingOptions {
    double max_step = 3.141592653589793 / 8;
    int max_depth = 8;
    double zero_threshold = 1e-12;
};

// Generic adaptive winding count of D around a contour; D(t) is sampled at
// the mesh nodes and bisected where the argument jumps too much.
WindingResult winding_number(const ContourPath& path, const std::function<cd(double t)>& D,
                             const WindingOptions& opt = {}, int* depth_used = nullptr);

struct ContourOptions {
    KatoOptions kato;
    WindingOptions winding;
    bool polar = true;         // also evaluate the polar backend
    double base_lambda = 1.0;  // real point where the Kato bases are initialized
};

// Evans function along the contour with adaptive refinement and winding count.
EvansContour evans_contour(const EvansSystem& sys, const ContourSpec& spec, const ContourOptions& opt = {});

// Evans function evaluators sharing one normalization (Kato from base_lambda).
class EvansEvaluator {
public:
    EvansEvaluator(const EvansSystem& sys, ContourOptions opt = {});
    // Real axis, continued from the base point.
    cd real(double lambda);
    // Upper quarter arc of radius r with n intervals (lambda, D_exterior).
    std::vector<std::pair<cd, cd>> quarter_arc(double r, int n = 24);

private:
    std::pair<CMatX, CMatX> real_bases(double lambda);

    const EvansSystem& sys_;
    ContourOptions opt_;
    KatoContinuation km_, kp_;
};

// Contour images as columnar text: re_lambda im_lambda re_D im_D method.
void write_contour(std::ostream& os, const EvansContour& c);

// Image of the contour under D in the complex plane.
std::string contour_svg(const EvansContour& c, const std::string& title);

}  // namespace shockstab
