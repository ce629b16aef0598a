#pragma once

#include "swlab/grid.hpp"

#include <cstdint>
#include <functional>

namespace swlab {

/// Sampling region inside the truncated half space. The bounding box is
/// [-x_extent, x_extent]^n x (0, t_max]; ball regions are centered at a
/// boundary point.
struct McRegion {
    enum class Kind { Box, BallPlus, ComplementBallPlus, AnnulusPlus };
    Kind kind = Kind::Box;
    int n = 1;                 // boundary dimension
    double x_extent = 4.0;
    double t_max = 4.0;
    HalfPoint center;          // ball center (t = 0 for the boundary half-balls)
    double radius = 1.0;       // BallPlus / ComplementBallPlus
    double radius_outer = 2.0; // AnnulusPlus

    static McRegion box(int n, double x_extent, double t_max);
    static McRegion ball_plus(int n, double R, HalfPoint center = {});
    static McRegion complement_ball_plus(int n, double R, double x_extent,
                                         double t_max);
    static McRegion annulus_plus(int n, double R_inner, double R_outer,
                                 HalfPoint center = {});
    bool contains(const HalfPoint& p) const;
};

struct McResult {
    double estimate = 0.0;
    double stderr_est = 0.0;
    std::uint64_t n_samples = 0;
    bool divergence_warning = false;  // stratified estimates disagree badly
};

/// Plain Monte Carlo with an optional importance grading t ~ t^{-t_grading}
/// toward the boundary (0 <= t_grading < 1), for integrands with an
/// integrable t-singularity of infinite plain-sampling variance.
/// Deterministic for a fixed seed and independent of worker count: samples
/// are drawn in fixed-size blocks with per-block derived seeds and reduced
/// in block order.
McResult mc_integral(const std::function<double(const HalfPoint&)>& integrand,
                     const McRegion& region, std::uint64_t n_samples,
                     std::uint64_t seed, double t_grading = 0.0);

}  // namespace swlab
