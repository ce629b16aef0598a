#include "swlab/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace swlab {

McRegion McRegion::box(int n, double x_extent, double t_max) {
    McRegion r;
    r.kind = Kind::Box;
    r.n = n;
    r.x_extent = x_extent;
    r.t_max = t_max;
    return r;
}

McRegion McRegion::ball_plus(int n, double R, HalfPoint center) {
    McRegion r;
    r.kind = Kind::BallPlus;
    r.n = n;
    r.center = center;
    r.radius = R;
    // bounding box of the half ball
    r.x_extent = std::max(std::abs(center.x[0]), std::abs(center.x[1])) + R;
    r.t_max = center.t + R;
    return r;
}

McRegion McRegion::complement_ball_plus(int n, double R, double x_extent,
                                        double t_max) {
    McRegion r;
    r.kind = Kind::ComplementBallPlus;
    r.n = n;
    r.radius = R;
    r.x_extent = x_extent;
    r.t_max = t_max;
    return r;
}

McRegion McRegion::annulus_plus(int n, double R_inner, double R_outer,
                                HalfPoint center) {
    if (!(R_outer > R_inner && R_inner > 0.0))
        throw std::domain_error("annulus_plus: need 0 < R_inner < R_outer");
    McRegion r;
    r.kind = Kind::AnnulusPlus;
    r.n = n;
    r.center = center;
    r.radius = R_inner;
    r.radius_outer = R_outer;
    r.x_extent = std::max(std::abs(center.x[0]), std::abs(center.x[1])) + R_outer;
    r.t_max = center.t + R_outer;
    return r;
}

bool McRegion::contains(const HalfPoint& p) const {
    if (p.t <= 0.0) return false;
    switch (kind) {
        case Kind::Box:
            return std::abs(p.x[0]) <= x_extent &&
                   (n == 1 || std::abs(p.x[1]) <= x_extent) && p.t <= t_max;
        case Kind::BallPlus:
            return dist2(p, center) <= radius * radius;
        case Kind::ComplementBallPlus:
            return std::abs(p.x[0]) <= x_extent &&
                   (n == 1 || std::abs(p.x[1]) <= x_extent) && p.t <= t_max &&
                   dist2(p, center) > radius * radius;
        case Kind::AnnulusPlus: {
            const double d2 = dist2(p, center);
            return d2 > radius * radius && d2 <= radius_outer * radius_outer;
        }
    }
    return false;
}

namespace {

constexpr std::uint64_t kBlock = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

McResult mc_integral(const std::function<double(const HalfPoint&)>& integrand,
                     const McRegion& region, std::uint64_t n_samples,
                     std::uint64_t seed, double t_grading) {
    if (n_samples == 0) throw std::domain_error("mc_integral: n_samples == 0");
    if (!(t_grading >= 0.0 && t_grading < 1.0))
        throw std::domain_error("mc_integral: t_grading must lie in [0, 1)");

    const double L = region.x_extent;
    const double T = region.t_max;
    const double vol_x = (region.n == 1) ? 2.0 * L : 4.0 * L * L;
    const double s = t_grading;
    // t sampled with density (1-s) t^{-s} / T^{1-s} on (0, T]
    const double t_norm = std::pow(T, 1.0 - s) / (1.0 - s);

    const std::uint64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
    std::vector<double> block_sum(n_blocks, 0.0), block_sum2(n_blocks, 0.0);
    std::vector<std::uint64_t> block_count(n_blocks, 0);

#pragma omp parallel for schedule(dynamic)
    for (long long b = 0; b < static_cast<long long>(n_blocks); ++b) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(b + 1)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const std::uint64_t count =
            std::min<std::uint64_t>(kBlock, n_samples - b * kBlock);
        double acc = 0.0, acc2 = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            HalfPoint p;
            p.x[0] = (2.0 * unif(rng) - 1.0) * L;
            if (region.n == 2) p.x[1] = (2.0 * unif(rng) - 1.0) * L;
            const double u = unif(rng);
            p.t = T * std::pow(u, 1.0 / (1.0 - s));
            double w = 0.0;
            if (region.contains(p)) {
                // importance weight: 1/pdf = vol_x * t_norm * t^{s}
                w = integrand(p) * vol_x * t_norm * std::pow(p.t, s);
            }
            acc += w;
            acc2 += w * w;
        }
        block_sum[b] = acc;
        block_sum2[b] = acc2;
        block_count[b] = count;
    }

    // fixed-order reduction
    double total = 0.0, total2 = 0.0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        total += block_sum[b];
        total2 += block_sum2[b];
    }
    const double nd = static_cast<double>(n_samples);
    McResult res;
    res.n_samples = n_samples;
    res.estimate = total / nd;
    const double var = std::max(0.0, total2 / nd - res.estimate * res.estimate);
    res.stderr_est = std::sqrt(var / nd);

    // stratified sanity check: the two sample halves must agree
    if (n_blocks >= 2) {
        double h1 = 0.0, h2 = 0.0;
        std::uint64_t c1 = 0, c2 = 0;
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            if (b < n_blocks / 2) {
                h1 += block_sum[b];
                c1 += block_count[b];
            } else {
                h2 += block_sum[b];
                c2 += block_count[b];
            }
        }
        const double m1 = h1 / c1, m2 = h2 / c2;
        const double scale = std::abs(res.estimate) + res.stderr_est;
        if (scale > 0.0 && std::abs(m1 - m2) > 12.0 * res.stderr_est + 1e-300 &&
            std::abs(m1 - m2) > 0.2 * scale)
            res.divergence_warning = true;
    }
    return res;
}

}  // namespace swlab
