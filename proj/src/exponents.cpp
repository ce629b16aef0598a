#include "swlab/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace swlab {

namespace {

bool all_finite(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

AdmissibilityReport validate_primal(int n, double lambda, double alpha,
                                    double beta, double p, double r) {
    AdmissibilityReport rep;
    if (!all_finite({lambda, alpha, beta, p, r})) {
        rep.violations.push_back("non-finite input");
        return rep;
    }
    if (n < 1) rep.violations.push_back("n >= 1");
    if (!(lambda > 0.0 && lambda < n + 1.0))
        rep.violations.push_back("0 < lambda < n+1");
    if (!(p > 1.0)) rep.violations.push_back("p > 1");
    if (!(r > 1.0)) rep.violations.push_back("r > 1");
    if (p > 1.0 && !(alpha < (p - 1.0) / p))
        rep.violations.push_back("alpha < 1/p'");
    if (r > 1.0 && !(beta < (r - 1.0) / r))
        rep.violations.push_back("beta < 1/r'");
    if (!(alpha + beta >= 0.0)) rep.violations.push_back("alpha + beta >= 0");
    if (p > 1.0 && r > 1.0) {
        const double balance =
            1.0 / p + 1.0 / r + (alpha + beta + lambda) / (n + 1.0);
        if (std::abs(balance - 2.0) > kBalanceTol)
            rep.violations.push_back("balance equation");
        const double q = r / (r - 1.0);
        if (rep.violations.empty() && p > q + kBalanceTol)
            rep.violations.push_back("p <= q");
    }
    rep.valid = rep.violations.empty();
    if (rep.valid) {
        const double q = r / (r - 1.0);
        if (alpha == 0.0 && beta == 0.0) {
            rep.attainment_note = "valid but extremal non-attained (alpha = beta = 0)";
        } else if (alpha + beta == 0.0) {
            rep.attainment_note = "attainment unknown (alpha = -beta != 0)";
        } else if (std::abs(p - q) <= 1e-12) {
            rep.attainment_note = "p = q: extremals not expected to attain";
        } else {
            rep.attainment_note = "attained";
        }
    }
    return rep;
}

double solve_r(int n, double lambda, double alpha, double beta, double p) {
    if (!(p > 1.0)) throw std::domain_error("solve_r: p must exceed 1");
    const double inv_r = 2.0 - 1.0 / p - (alpha + beta + lambda) / (n + 1.0);
    if (!(inv_r > 0.0 && inv_r < 1.0))
        throw std::domain_error("solve_r: balance equation forces r outside (1, inf)");
    return 1.0 / inv_r;
}

AdmissibilityReport validate_primal_rational(int n, double lambda, double alpha,
                                             double beta, long p_num, long p_den,
                                             long r_num, long r_den) {
    if (p_den == 0 || r_den == 0) {
        AdmissibilityReport rep;
        rep.violations.push_back("zero denominator");
        return rep;
    }
    return validate_primal(n, lambda, alpha, beta,
                           double(p_num) / double(p_den),
                           double(r_num) / double(r_den));
}

ExponentConfig to_dual(ExponentConfig cfg) {
    if (!(cfg.r > 1.0)) throw std::domain_error("to_dual: r must exceed 1");
    cfg.q = cfg.r / (cfg.r - 1.0);
    const double lhs = 1.0 / cfg.q;
    const double rhs = 1.0 / cfg.p -
        (cfg.n + 1.0 - (cfg.alpha + cfg.beta + cfg.lambda)) / (cfg.n + 1.0);
    if (std::abs(lhs - rhs) > 1e-10)
        throw std::domain_error("to_dual: dual balance identity violated");
    return cfg;
}

ExponentConfig make_config(int n, double lambda, double alpha, double beta,
                           double p, double r) {
    AdmissibilityReport rep = validate_primal(n, lambda, alpha, beta, p, r);
    if (!rep.valid) {
        std::string msg = "inadmissible exponents:";
        for (const auto& v : rep.violations) msg += " [" + v + "]";
        throw std::domain_error(msg);
    }
    ExponentConfig cfg;
    cfg.n = n;
    cfg.lambda = lambda;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.p = p;
    cfg.r = r;
    return to_dual(cfg);
}

ELExponents el_exponents(const ExponentConfig& cfg) {
    ELExponents el;
    el.theta = 1.0 / (cfg.p - 1.0);
    el.kappa = cfg.q - 1.0;
    if (el.kappa * el.theta < 1.0 - 1e-12)
        throw std::domain_error("el_exponents: kappa*theta < 1");
    if (!(cfg.alpha < 1.0 / (el.theta + 1.0)))
        throw std::domain_error("el_exponents: alpha >= 1/(theta+1)");
    if (!(cfg.beta < 1.0 / (el.kappa + 1.0)))
        throw std::domain_error("el_exponents: beta >= 1/(kappa+1)");
    const double lhs = 1.0 / (el.theta + 1.0) + 1.0 / (el.kappa + 1.0);
    const double rhs = (cfg.alpha + cfg.beta + cfg.lambda) / (cfg.n + 1.0);
    if (std::abs(lhs - rhs) > 1e-10)
        throw std::domain_error("el_exponents: coupled balance condition violated");
    return el;
}

ConformalData conformal_exponents(int n, double lambda, double alpha, double beta) {
    const double two_np2 = 2.0 * (n + 1.0);
    if (!(lambda + 2.0 * alpha > 0.0))
        throw std::domain_error("conformal_exponents: lambda + 2*alpha <= 0");
    if (!(lambda + 2.0 * beta > 0.0))
        throw std::domain_error("conformal_exponents: lambda + 2*beta <= 0");
    if (!(two_np2 - lambda - 2.0 * alpha > 0.0))
        throw std::domain_error("conformal_exponents: 2(n+1) - lambda - 2*alpha <= 0");
    if (!(two_np2 - lambda - 2.0 * beta > 0.0))
        throw std::domain_error("conformal_exponents: 2(n+1) - lambda - 2*beta <= 0");
    ConformalData c;
    c.p_alpha = two_np2 / (two_np2 - lambda - 2.0 * alpha);
    c.r_beta = two_np2 / (two_np2 - lambda - 2.0 * beta);
    c.kappa_star = (two_np2 - lambda - 2.0 * beta) / (lambda + 2.0 * beta);
    c.theta_star = (two_np2 - lambda - 2.0 * alpha) / (lambda + 2.0 * alpha);
    c.mu1 = inversion_defect_mu1(n, lambda, beta, c.kappa_star);
    c.mu2 = inversion_defect_mu2(n, lambda, alpha, c.theta_star);
    return c;
}

double inversion_defect_mu1(int n, double lambda, double beta, double kappa) {
    return 2.0 * n + 2.0 - (kappa + 1.0) * (lambda + 2.0 * beta);
}

double inversion_defect_mu2(int n, double lambda, double alpha, double theta) {
    return 2.0 * n + 2.0 - (theta + 1.0) * (lambda + 2.0 * alpha);
}

SobolevExponent sobolev_exponent(int n, double p, double alpha_m, double beta_m,
                                 int m) {
    if (m < 1) throw std::domain_error("sobolev_exponent: m must be >= 1");
    if (!(m * p < n + 1.0))
        throw std::domain_error("sobolev_exponent: requires m*p < n+1");
    const double denom = n + 1.0 + alpha_m - m * p;
    if (!(denom > 0.0))
        throw std::domain_error("sobolev_exponent: nonpositive denominator");
    SobolevExponent s;
    s.p_star = p * (n + 1.0 + beta_m) / denom;
    s.alpha_low = p * n / s.p_star - (n + 1.0 - m * p);
    s.alpha_high = p - 1.0;
    s.alpha_window_ok = (alpha_m > s.alpha_low && alpha_m < s.alpha_high);
    s.beta_low = -1.0;
    s.beta_high = alpha_m * (n + 1.0) / (n + 1.0 - m * p);
    s.beta_window_ok = (beta_m > s.beta_low && beta_m <= s.beta_high);
    return s;
}

}  // namespace swlab
