#include "swlab/closed_forms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swlab {

namespace {

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    // Recurrence down to the Lanczos sweet spot for small arguments.
    if (x < 0.5) return gamma_fn(x + 1.0) / x;
    double a = kLanczos[0];
    const double z = x - 1.0;
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    const double sqrt_two_pi = 2.5066282746310005024;
    return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double sphere_area(int d) {
    if (d < 1) throw std::domain_error("sphere_area: requires d >= 1");
    return 2.0 * std::pow(M_PI, d / 2.0) / gamma_fn(d / 2.0);
}

double angular_j(double sigma, int n) {
    if (!(sigma < 1.0)) throw std::domain_error("angular_j: requires sigma < 1");
    if (n < 1) throw std::domain_error("angular_j: requires n >= 1");
    return std::pow(M_PI, n / 2.0) * gamma_fn((1.0 - sigma) / 2.0) /
           gamma_fn((n + 1.0 - sigma) / 2.0);
}

HardyConstants hardy_constants(const ExponentConfig& cfg) {
    const double np1 = cfg.n + 1.0;
    const double pc = cfg.p_conj();
    const double q = cfg.q;
    const double bq = cfg.beta * q;
    const double ap = cfg.alpha * pc;
    if (!(bq < 1.0))
        throw std::domain_error("hardy_constants: beta*q >= 1 (angular divergence)");
    if (!(ap < 1.0))
        throw std::domain_error("hardy_constants: alpha*p' >= 1 (angular divergence)");
    if (!(np1 - (cfg.beta + cfg.lambda) * q < 0.0))
        throw std::domain_error("hardy_constants: n+1-(beta+lambda)q >= 0 (tail divergence)");
    if (!(np1 - (cfg.alpha + cfg.lambda) * pc < 0.0))
        throw std::domain_error("hardy_constants: n+1-(alpha+lambda)p' >= 0 (tail divergence)");

    const double j_bq = angular_j(bq, cfg.n);
    const double j_ap = angular_j(ap, cfg.n);

    HardyConstants h;
    h.e1 = np1 - (cfg.beta + cfg.lambda) * q;
    h.e2 = np1 - ap;
    h.e3 = np1 - (cfg.alpha + cfg.lambda) * pc;
    h.e4 = np1 - bq;
    h.c1 = j_bq / -h.e1;
    h.c2 = j_ap / h.e2;
    h.c3 = j_ap / -h.e3;
    h.c4 = j_bq / h.e4;
    return h;
}

double hardy_A_supremum(const ExponentConfig& cfg, HardySide side, double R) {
    if (!(R > 0.0)) throw std::domain_error("hardy_A_supremum: requires R > 0");
    const HardyConstants h = hardy_constants(cfg);
    const double inv_q = 1.0 / cfg.q;
    const double inv_pc = 1.0 / cfg.p_conj();
    if (side == HardySide::A2) {
        // tail of z^{-bq}|Y|^{-lq} times ball of t^{-ap'}
        return std::pow(h.c1 * std::pow(R, h.e1), inv_q) *
               std::pow(h.c2 * std::pow(R, h.e2), inv_pc);
    }
    // ball of z^{-bq} times tail of (t^a |Y|^l)^{-p'}
    return std::pow(h.c4 * std::pow(R, h.e4), inv_q) *
           std::pow(h.c3 * std::pow(R, h.e3), inv_pc);
}

double hls_upper_bound(int ambient_dim, double p, double lambda) {
    const double nn = ambient_dim;
    if (!(lambda > 0.0 && lambda < nn))
        throw std::domain_error("hls_upper_bound: requires 0 < lambda < dim");
    if (!(p > 1.0)) throw std::domain_error("hls_upper_bound: requires p > 1");
    const double inv_r = 2.0 - 1.0 / p - lambda / nn;
    if (!(inv_r > 0.0 && inv_r < 1.0))
        throw std::domain_error("hls_upper_bound: conjugate r outside (1, inf)");
    const double r = 1.0 / inv_r;
    const double w = sphere_area(ambient_dim);
    const double e = lambda / nn;
    return nn / (p * r * (nn - lambda)) * std::pow(w / nn, e) *
           (std::pow(p * lambda / (nn * (p - 1.0)), e) +
            std::pow(r * lambda / (nn * (r - 1.0)), e));
}

BoundsReport bounds_report(const ExponentConfig& cfg) {
    const HardyConstants h = hardy_constants(cfg);
    const double inv_q = 1.0 / cfg.q;
    const double inv_pc = 1.0 / cfg.p_conj();

    BoundsReport b;
    b.d1 = std::pow(h.c1, inv_q) * std::pow(h.c2, inv_pc);
    b.d2 = std::pow(h.c3, inv_pc) * std::pow(h.c4, inv_q);

    const int n = cfg.n;
    const double w_lo = sphere_area(n);      // boundary-sphere area
    const double w_hi = sphere_area(n + 1);  // ambient-sphere area
    const double annulus = (std::pow(2.0, n) - 1.0) * w_lo / n;
    b.hls_upper = hls_upper_bound(n + 1, cfg.p, cfg.lambda);
    const double term1 = std::pow(annulus, inv_q);
    const double term2 = term1 * b.hls_upper;
    const double term3 = std::pow(2.0, cfg.lambda) *
        std::pow((std::pow(2.0, n) - std::pow(2.0, -(n + 2.0))) * w_hi / (n + 1.0),
                 inv_pc) *
        term1;
    b.d3 = std::max({term1, term2, term3});
    b.d3_surrogate = true;

    const double holder = std::pow(cfg.p_conj(), inv_pc) * std::pow(cfg.p, 1.0 / cfg.p);
    b.lower = std::max(b.d1, b.d2);
    b.upper = holder * (b.d1 + b.d2) + b.d3;
    b.stated_lower = std::max({b.d1, b.d2, b.d3});
    b.stated_upper = std::min(holder * b.d1, holder * b.d2);
    b.attainment_note =
        validate_primal(cfg.n, cfg.lambda, cfg.alpha, cfg.beta, cfg.p, cfg.r)
            .attainment_note;
    return b;
}

}  // namespace swlab
