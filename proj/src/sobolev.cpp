#include "swlab/sobolev.hpp"

#include "swlab/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace swlab {

double representation_constant(int ambient_dim) {
    if (ambient_dim < 2)
        throw std::domain_error("representation_constant: requires dim >= 2");
    return std::pow(M_PI, ambient_dim / 2.0) / gamma_fn(ambient_dim / 2.0);
}

RepresentationReport representation_check(const FuncSpec& u, int n,
                                          const std::vector<HalfPoint>& probes,
                                          double x_extent, double t_max, int nx,
                                          int nt) {
    if (n != 1 && n != 2)
        throw std::domain_error("representation_check: boundary dimension is 1 or 2");
    if (nx < 8 || nt < 8)
        throw std::domain_error("representation_check: nx and nt must be >= 8");
    const int d = n + 1;
    RepresentationReport rep;
    rep.c_dim = representation_constant(d);

    // sup |u| over a coarse sweep, the relative-error fallback scale
    double sup_u = 0.0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            HalfPoint s;
            s.x[0] = -x_extent + (i + 0.5) * (2.0 * x_extent / 64);
            s.t = (j + 0.5) * (t_max / 64);
            sup_u = std::max(sup_u, std::abs(u.value(s)));
        }

    for (const HalfPoint& x : probes) {
        RepresentationProbe pr;
        pr.x = x;
        pr.exact = u.value(x);

        const double hx = 2.0 * x_extent / nx;
        const double ht = (t_max - x.t) / nt;
        if (!(ht > 0.0))
            throw std::domain_error("representation_check: probe above t_max");

        double sum = 0.0;
        if (n == 1) {
            // Singularity subtraction: integrate the bounded difference
            // <grad u(y) - grad u(x), x - y> / |x - y|^2 by midpoint
            // quadrature and add grad u(x) against the exact integral of
            // (x - y)/|x - y|^2 over the box [-L, L] x [x_t, T], so the
            // reconstruction error is second order in the mesh size.
            const auto g0 = u.gradient(x);
            for (int i = 0; i < nx; ++i) {
                for (int k = 0; k < nt; ++k) {
                    HalfPoint y;
                    y.x[0] = -x_extent + (i + 0.5) * hx;
                    y.t = x.t + (k + 0.5) * ht;
                    const double r2 = dist2(x, y);
                    if (r2 < 1e-24) continue;
                    const auto g = u.gradient(y);
                    const double dot =
                        (g[0] - g0[0]) * (x.x[0] - y.x[0]) +
                        (g[2] - g0[2]) * (x.t - y.t);
                    sum += dot / r2 * hx * ht;
                }
            }
            const double a1 = -x_extent - x.x[0];
            const double b1 = x_extent - x.x[0];
            const double c = t_max - x.t;
            // int_0^c log(q^2 + v^2) dv  and
            // int_0^u log((s^2 + c^2)/s^2) ds, both with finite limits at 0
            auto iv = [&](double q) {
                return q == 0.0 ? c * std::log(c * c) - 2.0 * c
                                : c * std::log(q * q + c * c) - 2.0 * c +
                                      2.0 * q * std::atan(c / q);
            };
            auto iu = [&](double s) {
                return s == 0.0
                           ? 0.0
                           : s * std::log((s * s + c * c) / (s * s)) +
                                 2.0 * c * std::atan(s / c);
            };
            const double box_x = -0.5 * (iv(b1) - iv(a1));
            const double box_t = -0.5 * (iu(b1) - iu(a1));
            sum += g0[0] * box_x + g0[2] * box_t;
        } else {
            // n = 2 keeps the plain midpoint rule with a one-cell-diagonal
            // exclusion around the probe (first-order accurate).
            const double excl2 = (n + 1) * hx * hx + ht * ht;
            for (int i = 0; i < nx; ++i) {
                for (int j = 0; j < nx; ++j) {
                    for (int k = 0; k < nt; ++k) {
                        HalfPoint y;
                        y.x[0] = -x_extent + (i + 0.5) * hx;
                        y.x[1] = -x_extent + (j + 0.5) * hx;
                        y.t = x.t + (k + 0.5) * ht;
                        const double r2 = dist2(x, y);
                        if (r2 < excl2) continue;
                        const auto g = u.gradient(y);
                        const double dot = g[0] * (x.x[0] - y.x[0]) +
                                           g[1] * (x.x[1] - y.x[1]) +
                                           g[2] * (x.t - y.t);
                        sum += dot * std::pow(r2, -0.5 * d) * hx * hx * ht;
                    }
                }
            }
        }
        pr.reconstructed = sum / rep.c_dim;
        pr.abs_error = std::abs(pr.reconstructed - pr.exact);
        const double scale = std::max(std::abs(pr.exact), sup_u);
        pr.rel_error = scale > 0.0 ? pr.abs_error / scale : pr.abs_error;
        rep.max_rel_error = std::max(rep.max_rel_error, pr.rel_error);
        rep.probes.push_back(pr);
    }
    return rep;
}

WsReport ws_ratio(const FuncSpec& u, int n, double p, double alpha1,
                  double beta1, std::shared_ptr<const HalfSpaceGrid> grid) {
    if (grid->n != n)
        throw std::domain_error("ws_ratio: grid dimension does not match n");
    const SobolevExponent se = sobolev_exponent(n, p, alpha1, beta1, 1);
    WsReport rep;
    rep.p_star = se.p_star;
    rep.windows_ok = se.window_ok();

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const HalfPoint pt = grid->point(i);
        const double w = grid->weight(i);
        const double uv = std::abs(u.value(pt));
        const auto g = u.gradient(pt);
        const double gn =
            std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        num += std::pow(pt.t, beta1) * std::pow(uv, se.p_star) * w;
        den += std::pow(pt.t, alpha1) * std::pow(gn, p) * w;
    }
    rep.lhs = std::pow(num, p / se.p_star);
    rep.rhs = den;
    if (den > 0.0) {
        rep.ratio = rep.lhs / rep.rhs;
    } else if (num == 0.0) {
        rep.ratio = 0.0;  // u identically zero: 0/0 defined as 0
    } else {
        throw std::domain_error("ws_ratio: zero gradient energy for nonzero u");
    }

    // certified bound from the bilinear bracket at the derived exponents
    const double q = se.p_star;
    const double r = q / (q - 1.0);
    const ExponentConfig cfg =
        make_config(n, double(n), alpha1 / p, -beta1 / q, p, r);
    const BoundsReport b = bounds_report(cfg);
    rep.certified_bound =
        std::pow(b.upper / representation_constant(n + 1), p);
    return rep;
}

}  // namespace swlab
