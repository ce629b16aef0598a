#pragma once

#include "swlab/grid.hpp"
#include "swlab/exponents.hpp"

#include <array>
#include <memory>
#include <vector>

namespace swlab {

/// Sup-relative deviation of a field from reflection symmetry x -> -x
/// (both spatial axes for n = 2). Zero for even profiles.
double symmetry_residual(const Field& f);

/// Largest positive increment of |f| along increasing |x| within a t-layer,
/// relative to sup |f|. Zero for profiles radially decreasing in x.
double monotonicity_violation(const Field& f);

/// Fit of the bottom t-layer against the boundary profile
///   c * (1 / (|y - y0|^2 + d^2))^e
/// with the decay exponent e held fixed. Log-space Gauss-Newton with
/// Levenberg damping and a small multistart over (d, y0); the reported
/// residual is the relative l2 misfit in linear scale.
struct BubbleFit {
    double amplitude = 0.0;
    double d = 1.0;
    std::array<double, 2> y0{0.0, 0.0};
    double exponent = 1.0;
    double rel_residual = 0.0;
    bool converged = false;
};

BubbleFit fit_boundary_bubble(const Field& f, double exponent);

/// Polar grid on the unit ball B(center, 1) with center (0, ..., 0, -1),
/// radial cells graded toward the boundary r = 1 (edges 1 - (1 - i/nr)^g).
/// Cell weights are the exact polar cell volumes; n is the boundary
/// dimension of the matching half space (ambient ball dimension n+1).
struct BallNode {
    HalfPoint xi;      // ambient coordinates (last slot may be negative)
    double r = 0.0;    // distance from the ball center
    double weight = 0.0;
};

class BallGrid {
  public:
    int n = 1;
    std::vector<BallNode> nodes;
    std::size_t size() const { return nodes.size(); }
};

BallGrid build_ball_grid(int n, int nr, int nang, double grading);

/// Inversion about x0 = (0,...,0,-2) with radius 2, mapping the unit ball
/// B((0,...,0,-1), 1) onto the upper half space.
HalfPoint kelvin_inversion(const HalfPoint& xi);

/// Conformal transport check at the conformal exponents
/// p_a = 2(n+1)/mu1, r_b = 2(n+1)/mu2, mu1 = 2(n+1)-lambda-2 alpha,
/// mu2 = 2(n+1)-lambda-2 beta. With the transported functions
///   F(xi) = (2/|xi - x0|)^{mu1} f(inversion(xi)),
///   G(xi) = (2/|xi - x0|)^{mu2} g(inversion(xi)),
/// the change of variables gives three exact continuum identities:
///   ||f||_{p_a, half space} = ||F||_{p_a, ball},
///   ||g||_{r_b, half space} = ||G||_{r_b, ball},
///   int int f g / (t^a |X-Y|^l z^b)
///     = int int (2/(1-|xi-x1|^2))^a (2/(1-|eta-x1|^2))^b F G / |xi-eta|^l.
/// Each pair is evaluated by quadrature on its own grid, so the mismatches
/// are pure quadrature/truncation error and shrink under refinement.
struct KelvinReport {
    double half_norm_f = 0.0, ball_norm_f = 0.0;
    double half_norm_g = 0.0, ball_norm_g = 0.0;
    double half_functional = 0.0, ball_functional = 0.0;
    double norm_mismatch_f = 0.0;
    double norm_mismatch_g = 0.0;
    double functional_mismatch = 0.0;
    double rel_mismatch = 0.0;  // max of the three
    double p_alpha = 0.0, r_beta = 0.0;
    double mu1 = 0.0, mu2 = 0.0;
};

KelvinReport kelvin_check(const FuncSpec& f, const FuncSpec& g, int n,
                          double lambda, double alpha, double beta,
                          std::shared_ptr<const HalfSpaceGrid> half_grid,
                          const BallGrid& ball_grid);

/// Dilation invariance of the normalized unweighted-kernel functional
///   I(f, g) / (||t^alpha f||_p ||z^beta g||_r),
///   I = int int f(X) g(Y) |X - Y|^{-lambda},
/// under f -> tau^{-(n+1+alpha p)/p} f(./tau), g likewise with (beta, r).
/// Both ratios are evaluated on the same fixed box; the leading (mesh-linear)
/// discretization error of the singular pairing is removed by a two-grid
/// Richardson step, so the residual mismatch is the second-order quadrature
/// and truncation error.
struct ScalingReport {
    double ratio_base = 0.0;
    double ratio_scaled = 0.0;
    double rel_mismatch = 0.0;
};

ScalingReport scaling_check(const ExponentConfig& cfg, const FuncSpec& f,
                            const FuncSpec& g, double tau,
                            std::shared_ptr<const HalfSpaceGrid> grid);

/// In the forced case alpha = (n+1)/p' - lambda/2, beta = (n+1)/r' - lambda/2
/// the weighted Euclidean pairing equals the hyperbolic-distance pairing of
/// F = t^{(n+1)/p} f, G = z^{(n+1)/r} g against d(X,Y)^{-lambda},
/// d = |X-Y|/sqrt(t z), in the invariant measure t^{-(n+1)} dx dt. Both sums
/// are evaluated on the same grid with the same desingularized diagonal, so
/// they agree to rounding.
struct HyperbolicReport {
    double euclidean_sum = 0.0;
    double hyperbolic_sum = 0.0;
    double rel_mismatch = 0.0;
    double alpha_forced = 0.0;
    double beta_forced = 0.0;
};

HyperbolicReport hyperbolic_check(int n, double lambda, double p, double r,
                                  const FuncSpec& f, const FuncSpec& g,
                                  const HalfSpaceGrid& grid);

}  // namespace swlab
