#pragma once

#include <string>
#include <vector>

namespace swlab {

/// Exponent tuple (n, lambda, alpha, beta, p, r) for the weighted bilinear
/// inequality on the upper half space, plus the dual exponent q = r'.
/// The ambient dimension is n+1; weights attach to the last coordinate only.
struct ExponentConfig {
    int n = 1;             // boundary dimension
    double lambda = 1.0;   // kernel exponent, 0 < lambda < n+1
    double alpha = 0.0;    // source-side weight exponent
    double beta = 0.0;     // target-side weight exponent
    double p = 2.0;
    double r = 2.0;
    double q = 2.0;        // derived, q = r/(r-1)

    double p_conj() const { return p / (p - 1.0); }
    double r_conj() const { return r / (r - 1.0); }
    int ambient_dim() const { return n + 1; }
};

struct AdmissibilityReport {
    bool valid = false;
    std::vector<std::string> violations;  // names of failed predicates
    std::string attainment_note;          // extremal attainment metadata
};

// Absolute tolerance on the balance equation 1/p + 1/r + (a+b+l)/(n+1) = 2.
inline constexpr double kBalanceTol = 1e-12;

/// Total admissibility check: every finite input yields a report, never a throw.
AdmissibilityReport validate_primal(int n, double lambda, double alpha,
                                    double beta, double p, double r);

/// Solve r from the balance equation given the other five parameters.
/// Throws std::domain_error when the solved r is not > 1.
double solve_r(int n, double lambda, double alpha, double beta, double p);

/// Rational-input convenience: p and r given as numerator/denominator pairs.
AdmissibilityReport validate_primal_rational(int n, double lambda, double alpha,
                                             double beta, long p_num, long p_den,
                                             long r_num, long r_den);

/// Populate q = r' and assert the dual balance identity.
/// Throws std::domain_error on r <= 1 or on a balance violation.
ExponentConfig to_dual(ExponentConfig cfg);

/// Build a validated config in one step (q populated). Throws on inadmissible input.
ExponentConfig make_config(int n, double lambda, double alpha, double beta,
                           double p, double r);

/// Euler-Lagrange exponents theta = 1/(p-1), kappa = q-1.
struct ELExponents {
    double theta = 1.0;
    double kappa = 1.0;
};

/// Throws std::domain_error when kappa*theta < 1 or any coupled condition fails.
ELExponents el_exponents(const ExponentConfig& cfg);

/// Conformally invariant exponents and the two inversion defect exponents,
/// evaluated at (kappa*, theta*) where both defects vanish.
struct ConformalData {
    double p_alpha = 0.0;
    double r_beta = 0.0;
    double kappa_star = 0.0;
    double theta_star = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

ConformalData conformal_exponents(int n, double lambda, double alpha, double beta);

/// Inversion defect exponents for arbitrary kappa / theta.
double inversion_defect_mu1(int n, double lambda, double beta, double kappa);
double inversion_defect_mu2(int n, double lambda, double alpha, double theta);

/// Critical exponent p*_m for the first- and higher-order weighted Sobolev
/// inequality, with the admissibility window on (alpha_m, beta_m).
struct SobolevExponent {
    double p_star = 0.0;
    bool alpha_window_ok = false;
    bool beta_window_ok = false;
    double alpha_low = 0.0, alpha_high = 0.0;  // open window on alpha_m
    double beta_low = 0.0, beta_high = 0.0;    // (-1, alpha_m (n+1)/(n+1-mp)]
    bool window_ok() const { return alpha_window_ok && beta_window_ok; }
};

SobolevExponent sobolev_exponent(int n, double p, double alpha_m, double beta_m,
                                 int m);

}  // namespace swlab
