#pragma once

#include "swlab/closed_forms.hpp"
#include "swlab/exponents.hpp"
#include "swlab/grid.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace swlab {

/// Dense midpoint discretization of convolution against |X - Y|^{-lambda}
/// on a half-space grid. The matrix is assembled once (symmetric, cached,
/// row-major) and reused across different power weights: with weights
///   (A f)_i = t_i^{-tgt_exp} * sum_j k_ij t_j^{-src_exp} f_j w_j ,
/// so E_lambda is (0, 0) and K_{alpha,beta} is (alpha, beta).
///
/// Entries for cell pairs closer than three joint cell radii -- including
/// the diagonal -- hold the exact mean of |X - Y|^{-lambda} over the two
/// cells, computed by corner inclusion-exclusion from the kernel's mixed
/// antiderivative (evaluated through its Gaussian representation, which
/// factorizes per axis). This matters because the kernel is not convex: for
/// thin graded boundary cells stacked in t, the midpoint value overestimates
/// the true pair mean by factors that grow with resolution, which would make
/// spurious boundary concentration profitable. Far pairs use the midpoint
/// kernel value plus its second-order pair-mean correction (cell variance
/// times the kernel Hessian), so the accuracy does not jump at the cutoff.
///
/// apply() parallelizes over target rows with each row summed in fixed
/// source order, so its output is bit-identical to apply_serial().
class RieszKernel {
  public:
    RieszKernel(std::shared_ptr<const HalfSpaceGrid> grid, double lambda,
                bool parallel_assembly = true);

    double lambda() const { return lambda_; }
    const HalfSpaceGrid& grid() const { return *grid_; }
    std::shared_ptr<const HalfSpaceGrid> grid_ptr() const { return grid_; }
    std::size_t size() const { return n_; }
    double entry(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }

    /// OpenMP matvec with power weights (see class comment).
    Field apply(const Field& f, double src_exp = 0.0, double tgt_exp = 0.0) const;
    /// Serial reference implementation, kept for correctness testing.
    Field apply_serial(const Field& f, double src_exp = 0.0,
                       double tgt_exp = 0.0) const;

  private:
    std::shared_ptr<const HalfSpaceGrid> grid_;
    double lambda_ = 1.0;
    std::size_t n_ = 0;
    std::vector<double> k_;
};

/// Unweighted potential E_lambda f.
Field apply_E(const RieszKernel& K, const Field& f);

/// Weighted operator K_{alpha,beta} f = z^{-beta} E_lambda(t^{-alpha} f).
Field apply_K(const RieszKernel& K, const Field& f, double alpha, double beta);

/// Discrete weighted norm ( sum |t_i^{weight_exp} f_i|^p w_i )^{1/p}.
double weighted_norm(const Field& f, double weight_exp, double p);

/// Bilinear functional <g, K_{alpha,beta} f> = sum_i g_i (K f)_i w_i.
double functional_bilinear(const RieszKernel& K, const Field& f, const Field& g,
                           const ExponentConfig& cfg);

/// Rayleigh-type quotient ||K_{alpha,beta} f||_q / ||f||_p (plain norms).
double rayleigh(const RieszKernel& K, const Field& f, const ExponentConfig& cfg);

/// 1 - <g*, K f> / (||g*||_r ||K f||_q) with g* = (K f)^{q-1}; zero exactly
/// when f saturates the discrete duality pairing.
double duality_gap(const RieszKernel& K, const Field& f, const ExponentConfig& cfg);

}  // namespace swlab
