#pragma once

#include "swlab/exponents.hpp"
#include "swlab/grid.hpp"

#include <memory>
#include <vector>

namespace swlab {

/// Normalizing constant C(d) = pi^{d/2} / Gamma(d/2), half the area of the
/// unit (d-1)-sphere; C(2) = pi.
double representation_constant(int ambient_dim);

/// Verify the gradient representation identity
///   u(x) = (1/C(d)) int_{y_d >= x_d} <grad u(y), x - y> / |x - y|^d dy
/// for a smooth compactly supported u, probing it at the given points. Each
/// probe integrates over its own uniform mesh on [-L, L]^n x [probe_t, t_max].
/// For n = 1 the kernel singularity is subtracted: the bounded difference
/// <grad u(y) - grad u(x), x - y>/|x - y|^2 is summed by midpoint quadrature
/// and grad u(x) is paired with the exact box integral of the kernel, giving
/// second-order accuracy. For n = 2 nodes within one cell diagonal of the
/// probe are excluded instead (first order). A probe above the support must
/// reconstruct exactly zero.
struct RepresentationProbe {
    HalfPoint x;
    double exact = 0.0;
    double reconstructed = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;  // abs_error / max(|exact|, sup-scale fallback)
};

struct RepresentationReport {
    std::vector<RepresentationProbe> probes;
    double max_rel_error = 0.0;
    double c_dim = 0.0;
};

RepresentationReport representation_check(const FuncSpec& u, int n,
                                          const std::vector<HalfPoint>& probes,
                                          double x_extent, double t_max, int nx,
                                          int nt);

/// Weighted first-order Sobolev trial ratio
///   ( int t^{beta1} |u|^{p*} )^{p/p*}  /  int t^{alpha1} |grad u|^p
/// with p* = p (n+1+beta1) / (n+1+alpha1-p), together with the certified
/// upper bound (N_upper / C(n+1))^p obtained from the closed-form bracket of
/// the bilinear constant at lambda = n, alpha = alpha1/p, beta = -beta1/p*.
struct WsReport {
    double p_star = 0.0;
    double lhs = 0.0;            // weighted p*-norm term, power p
    double rhs = 0.0;            // weighted gradient energy
    double ratio = 0.0;
    double certified_bound = 0.0;
    bool windows_ok = false;     // admissibility windows on (alpha1, beta1)
};

WsReport ws_ratio(const FuncSpec& u, int n, double p, double alpha1,
                  double beta1, std::shared_ptr<const HalfSpaceGrid> grid);

}  // namespace swlab
