#pragma once

#include "swlab/operators.hpp"

#include <string>
#include <vector>

namespace swlab {

struct IterationTraceRow {
    int iter = 0;
    double n_estimate = 0.0;   // current operator-norm estimate
    double rel_change = 0.0;   // sup-relative change of the iterate
    double centroid_t = 0.0;   // t-centroid of the p-mass
    double mass_fraction = 0.0;  // p-mass fraction in the lowest quarter of t-layers
};

struct PowerIterationResult {
    Field f_star;              // ||f_star||_p = 1
    Field g_star;              // (K f_star)^{q-1}, normalized to ||g_star||_r = 1
    double n_estimate = 0.0;   // ||K f_star||_q
    int iterations = 0;
    bool converged = false;
    std::vector<IterationTraceRow> trace;
    std::vector<std::string> warnings;
};

struct PowerIterationOptions {
    double tol = 1e-8;       // on the sup-relative change between iterates
    int max_iter = 500;
    bool record_trace = true;
};

/// Maximize ||K_{alpha,beta} f||_q / ||f||_p by the dual-composition fixed
/// point iteration
///   f <- normalize_p( [ K*_{alpha,beta} ( (K_{alpha,beta} f)^{q-1} ) ]^{1/(p-1)} )
/// starting from f0 (non-negative, not identically zero). Adds warnings when
/// the configuration is known non-attained (mass concentration watch) or when
/// p = q (extremals not expected to settle).
PowerIterationResult power_iterate(const RieszKernel& K, const ExponentConfig& cfg,
                                   const Field& f0,
                                   const PowerIterationOptions& opt = {});

/// Write the iteration trace as CSV (iter,n_estimate,rel_change,centroid_t,
/// mass_fraction), 17 significant digits.
void write_trace_csv(const std::vector<IterationTraceRow>& trace,
                     const std::string& path);

struct ELPairResult {
    Field u;                   // solves u = K_{beta,alpha}(v^kappa)
    Field v;                   // solves v = K_{alpha,beta}(u^theta)
    double residual_u = 0.0;   // relative sup residual of the u-equation
    double residual_v = 0.0;
    int iterations = 0;
    bool converged = false;
    bool rescaled = false;     // multiplier rescaling applied (theta*kappa > 1)
    std::vector<std::string> warnings;
};

/// Solve the coupled positive-solution system
///   u = K_{beta,alpha}(v^kappa),  v = K_{alpha,beta}(u^theta)
/// by normalized alternating iteration followed by an exact multiplier
/// rescaling: if A(v^kappa) = a u and B(u^theta) = b v at the normalized
/// fixed point, then (s u, sigma v) with s = (a b^kappa)^{-1/(theta kappa - 1)}
/// and sigma = s^theta b solves the system exactly (requires theta*kappa > 1;
/// theta*kappa = 1 is scale-degenerate and only flagged).
ELPairResult solve_el_pair(const RieszKernel& K, const ExponentConfig& cfg,
                           const Field& u0, const Field& v0,
                           double tol = 1e-8, int max_iter = 500);

/// Relative sup-norm residuals of the two Euler-Lagrange equations at (u, v).
std::pair<double, double> el_residual(const RieszKernel& K,
                                      const ExponentConfig& cfg, const Field& u,
                                      const Field& v);

}  // namespace swlab
