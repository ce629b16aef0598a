#include "swlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace swlab {

namespace {

// Per-axis factor of the Gaussian representation of the kernel,
//   G_c(s) = int_0^c (c - u) e^{-s u^2} du
//          = c sqrt(pi/s)/2 erf(c sqrt(s)) - (1 - e^{-s c^2}) / (2 s),
// with a series branch where the closed form would cancel.
double gauss_factor(double c, double s) {
    const double z = s * c * c;
    if (z < 1e-4)
        return c * c * (0.5 - z / 12.0 + z * z / 60.0 - z * z * z / 336.0);
    return 0.5 * c * std::sqrt(M_PI / s) * std::erf(c * std::sqrt(s)) -
           (1.0 - std::exp(-z)) / (2.0 * s);
}

// Corner integral of the kernel: the mixed 2d-th antiderivative
//   Psi(c_1..c_d) = int_{prod [0, c_k]} prod_k (c_k - u_k) |u|^{-lambda} du.
// Under r^{-lambda} = Gamma(lambda/2)^{-1} int_0^inf s^{lambda/2-1} e^{-s r^2}
// the box integral factorizes per axis into G_{c_k}(s), leaving a single
// s-integral. On a log grid that integrand decays exponentially both ways
// (s^{lambda/2} at 0, s^{-(d-lambda)/2} at infinity), so the trapezoid rule
// converges geometrically and copes with arbitrarily anisotropic boxes.
// The s^{lambda/2} jacobian power is split evenly across the factors to keep
// every partial product in floating-point range.
double corner_integral(const double* c, int d, double lambda) {
    double cmin = c[0], cmax = c[0];
    for (int k = 0; k < d; ++k) {
        if (c[k] <= 0.0) return 0.0;
        cmin = std::min(cmin, c[k]);
        cmax = std::max(cmax, c[k]);
    }
    const double step = 0.35;
    const double x_lo =
        std::max(-2.0 * std::log(cmax) - 80.0 / lambda, -690.0);
    const double x_hi =
        std::min(-2.0 * std::log(cmin) + 80.0 / (d - lambda), 690.0);
    const int m = static_cast<int>((x_hi - x_lo) / step) + 1;
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / m;
        const double s = std::exp(x);
        const double jac = std::pow(s, 0.5 * lambda / d);
        double v = 1.0;
        for (int k = 0; k < d; ++k) v *= jac * gauss_factor(c[k], s);
        acc += (i == 0 || i == m) ? 0.5 * v : v;
    }
    return acc * (x_hi - x_lo) / m / std::tgamma(0.5 * lambda);
}

}  // namespace

RieszKernel::RieszKernel(std::shared_ptr<const HalfSpaceGrid> grid, double lambda,
                         bool parallel_assembly)
    : grid_(std::move(grid)), lambda_(lambda) {
    if (!grid_) throw std::domain_error("RieszKernel: null grid");
    const double d = grid_->n + 1.0;
    if (!(lambda_ > 0.0 && lambda_ < d))
        throw std::domain_error("RieszKernel: requires 0 < lambda < n+1");
    n_ = grid_->node_count();
    if (n_ * n_ > 1'000'000'000ULL)
        throw std::domain_error("RieszKernel: matrix entry count exceeds the 1e9 guard");
    k_.resize(n_ * n_);

    // The kernel is not convex (its tangential Hessian eigenvalue is
    // negative), so the midpoint value of a cell pair can overestimate the
    // pair mean by large, resolution-dependent factors when graded boundary
    // cells are thin and stacked. For every pair closer than three joint cell
    // radii the entry is therefore the exact pair mean, assembled by corner
    // inclusion-exclusion from Psi: per axis the edge differences p2-q1 and
    // p1-q2 enter with sign +, p1-q1 and p2-q2 with sign -, combined
    // tensorially (Psi is even in each argument). The diagonal (pair = the
    // cell itself) is the m = 0, equal-layer case of the same formula.
    const int nt = grid_->nt;
    const int nx = grid_->nx;
    const double dx = grid_->dx;
    const int dim = grid_->n + 1;
    std::vector<double> edge(nt + 1, 0.0);
    for (int it = 0; it < nt; ++it)
        edge[it + 1] = edge[it] + grid_->t_weights[it];

    // corner values memoized on (x-offsets in units of dx, t-edge pair)
    std::unordered_map<std::uint64_t, double> psi;
    const auto corner = [&](int k1, int k2, int ea, int eb) {
        if (k1 < k2) std::swap(k1, k2);  // x-axes are interchangeable
        if (ea < eb) std::swap(ea, eb);
        const std::uint64_t key =
            (std::uint64_t(k1) << 44) | (std::uint64_t(k2) << 28) |
            (std::uint64_t(ea) << 14) | std::uint64_t(eb);
        const auto hit = psi.find(key);
        if (hit != psi.end()) return hit->second;
        const double dt = edge[ea] - edge[eb];
        const double dims2[2] = {k1 * dx, dt};
        const double dims3[3] = {k1 * dx, k2 * dx, dt};
        const double v =
            corner_integral(dim == 2 ? dims2 : dims3, dim, lambda_);
        psi.emplace(key, v);
        return v;
    };
    static constexpr double sgn[4] = {1.0, 1.0, -1.0, -1.0};
    const auto pair_mean = [&](int m1, int m2, int ti, int tj) {
        const int xk1[4] = {m1 + 1, std::abs(m1 - 1), m1, m1};
        const int xk2[4] = {m2 + 1, std::abs(m2 - 1), m2, m2};
        const int tea[4] = {ti + 1, ti, ti, ti + 1};
        const int teb[4] = {tj, tj + 1, tj, tj + 1};
        double acc = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (grid_->n == 1) {
                    acc += sgn[a] * sgn[b] * corner(0, xk1[a], tea[b], teb[b]);
                } else {
                    for (int e = 0; e < 4; ++e)
                        acc += sgn[a] * sgn[e] * sgn[b] *
                               corner(xk1[a], xk2[e], tea[b], teb[b]);
                }
            }
        const double cell_x = grid_->n == 1 ? dx : dx * dx;
        return acc / (cell_x * grid_->t_weights[ti]) /
               (cell_x * grid_->t_weights[tj]);
    };

    // near-pair table: mr2 holds, per layer pair, the largest admissible
    // squared column offset (in units of dx), -1 when no offset qualifies
    std::vector<long long> mr2(std::size_t(nt) * nt, -1);
    std::unordered_map<std::uint64_t, double> near_mean;
    const auto near_key = [nt](int m1, int m2, int ti, int tj) {
        if (m1 < m2) std::swap(m1, m2);
        if (ti > tj) std::swap(ti, tj);
        return (std::uint64_t(m1) << 44) | (std::uint64_t(m2) << 28) |
               (std::uint64_t(ti) << 14) | std::uint64_t(tj);
    };
    for (int ti = 0; ti < nt; ++ti) {
        const double ri =
            0.5 * std::sqrt(grid_->n * dx * dx +
                            grid_->t_weights[ti] * grid_->t_weights[ti]);
        for (int tj = ti; tj < nt; ++tj) {
            const double rj =
                0.5 * std::sqrt(grid_->n * dx * dx +
                                grid_->t_weights[tj] * grid_->t_weights[tj]);
            const double rr = 3.0 * (ri + rj);
            const double dt = grid_->t_nodes[tj] - grid_->t_nodes[ti];
            const double slack = rr * rr - dt * dt;
            if (slack < 0.0) continue;
            const long long q =
                static_cast<long long>(std::floor(slack / (dx * dx)));
            mr2[std::size_t(ti) * nt + tj] = mr2[std::size_t(tj) * nt + ti] = q;
            if (grid_->n == 1) {
                for (int m = 0; 1LL * m * m <= q && m < nx; ++m)
                    near_mean.emplace(near_key(m, 0, ti, tj),
                                      pair_mean(m, 0, ti, tj));
            } else {
                for (int m1 = 0; 1LL * m1 * m1 <= q && m1 < nx; ++m1)
                    for (int m2 = 0;
                         1LL * m1 * m1 + 1LL * m2 * m2 <= q && m2 <= m1; ++m2)
                        near_mean.emplace(near_key(m1, m2, ti, tj),
                                          pair_mean(m1, m2, ti, tj));
            }
        }
    }

    const double half_lambda = 0.5 * lambda_;
    const long long nn = static_cast<long long>(n_);
#pragma omp parallel for schedule(dynamic, 8) if (parallel_assembly)
    for (long long i = 0; i < nn; ++i) {
        const HalfPoint pi = grid_->point(i);
        const int ti = static_cast<int>(i % nt);
        const long long spi = i / nt;
        const int ixi = grid_->n == 1 ? int(spi) : int(spi / nx);
        const int iyi = grid_->n == 1 ? 0 : int(spi % nx);
        for (long long j = i; j < nn; ++j) {
            const int tj = static_cast<int>(j % nt);
            const long long spj = j / nt;
            int m1, m2;
            if (grid_->n == 1) {
                m1 = std::abs(int(spj) - ixi);
                m2 = 0;
            } else {
                m1 = std::abs(int(spj / nx) - ixi);
                m2 = std::abs(int(spj % nx) - iyi);
            }
            double v;
            if (1LL * m1 * m1 + 1LL * m2 * m2 <= mr2[std::size_t(ti) * nt + tj]) {
                v = near_mean.find(near_key(m1, m2, ti, tj))->second;
            } else {
                // midpoint value plus the second-order pair-mean correction
                //   mean ~ k + sum_axes (a_i^2 + a_j^2)/24 d^2k/daxis^2 ,
                // k = r^{-l}, d^2k/daxis^2 = l r^{-l-4} ((l+2) z_axis^2 - r^2).
                // Without it, profiles wider than the near radius would pay a
                // spurious quadrature penalty, biasing the extremal search
                // toward under-resolved scales.
                const HalfPoint pj = grid_->point(j);
                const double r2 = dist2(pi, pj);
                const double base = std::pow(r2, -half_lambda);
                const double zx1 = pi.x[0] - pj.x[0];
                const double zx2 = pi.x[1] - pj.x[1];
                const double zt = pi.t - pj.t;
                const double hi = grid_->t_weights[ti];
                const double hj = grid_->t_weights[tj];
                const double sx = 2.0 * dx * dx / 24.0;
                const double st = (hi * hi + hj * hj) / 24.0;
                const double quad =
                    sx * ((lambda_ + 2.0) * (zx1 * zx1 + zx2 * zx2) -
                          grid_->n * r2) +
                    st * ((lambda_ + 2.0) * zt * zt - r2);
                v = base * (1.0 + lambda_ * quad / (r2 * r2));
            }
            k_[i * n_ + j] = v;
            k_[j * n_ + i] = v;
        }
    }
}

Field RieszKernel::apply(const Field& f, double src_exp, double tgt_exp) const {
    if (!f.grid || !f.grid->same_layout(*grid_))
        throw std::domain_error("RieszKernel::apply: field on a different grid");
    std::vector<double> src(n_);
    for (std::size_t j = 0; j < n_; ++j)
        src[j] = std::pow(grid_->point(j).t, -src_exp) * f.values[j] *
                 grid_->weight(j);
    Field out;
    out.grid = grid_;
    out.values.resize(n_);
    const long long nn = static_cast<long long>(n_);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i) {
        const double* row = k_.data() + i * n_;
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * src[j];
        out.values[i] = std::pow(grid_->point(i).t, -tgt_exp) * acc;
    }
    return out;
}

Field RieszKernel::apply_serial(const Field& f, double src_exp,
                                double tgt_exp) const {
    if (!f.grid || !f.grid->same_layout(*grid_))
        throw std::domain_error("RieszKernel::apply_serial: field on a different grid");
    std::vector<double> src(n_);
    for (std::size_t j = 0; j < n_; ++j)
        src[j] = std::pow(grid_->point(j).t, -src_exp) * f.values[j] *
                 grid_->weight(j);
    Field out;
    out.grid = grid_;
    out.values.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const double* row = k_.data() + i * n_;
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * src[j];
        out.values[i] = std::pow(grid_->point(i).t, -tgt_exp) * acc;
    }
    return out;
}

Field apply_E(const RieszKernel& K, const Field& f) { return K.apply(f, 0.0, 0.0); }

Field apply_K(const RieszKernel& K, const Field& f, double alpha, double beta) {
    return K.apply(f, alpha, beta);
}

double weighted_norm(const Field& f, double weight_exp, double p) {
    if (!(p >= 1.0)) throw std::domain_error("weighted_norm: requires p >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v =
            std::pow(f.grid->point(i).t, weight_exp) * std::abs(f.values[i]);
        s += std::pow(v, p) * f.grid->weight(i);
    }
    return std::pow(s, 1.0 / p);
}

double functional_bilinear(const RieszKernel& K, const Field& f, const Field& g,
                           const ExponentConfig& cfg) {
    const Field kf = K.apply(f, cfg.alpha, cfg.beta);
    double s = 0.0;
    for (std::size_t i = 0; i < kf.size(); ++i)
        s += g.values[i] * kf.values[i] * kf.grid->weight(i);
    return s;
}

double rayleigh(const RieszKernel& K, const Field& f, const ExponentConfig& cfg) {
    const Field kf = K.apply(f, cfg.alpha, cfg.beta);
    const double fp = weighted_norm(f, 0.0, cfg.p);
    if (fp == 0.0) throw std::domain_error("rayleigh: zero input field");
    return weighted_norm(kf, 0.0, cfg.q) / fp;
}

double duality_gap(const RieszKernel& K, const Field& f, const ExponentConfig& cfg) {
    const Field kf = K.apply(f, cfg.alpha, cfg.beta);
    Field gstar;
    gstar.grid = kf.grid;
    gstar.values.resize(kf.size());
    for (std::size_t i = 0; i < kf.size(); ++i) {
        const double v = kf.values[i];
        gstar.values[i] = std::copysign(std::pow(std::abs(v), cfg.q - 1.0), v);
    }
    double pairing = 0.0;
    for (std::size_t i = 0; i < kf.size(); ++i)
        pairing += gstar.values[i] * kf.values[i] * kf.grid->weight(i);
    const double denom =
        weighted_norm(gstar, 0.0, cfg.r) * weighted_norm(kf, 0.0, cfg.q);
    if (denom == 0.0) throw std::domain_error("duality_gap: zero operator output");
    return 1.0 - pairing / denom;
}

}  // namespace swlab
