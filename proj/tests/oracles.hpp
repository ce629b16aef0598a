// Independent numerical oracles used only by the test suite.
//
// The production library evaluates its constants through Gamma-function
// closed forms; the oracles here recompute them by direct quadrature
// (tanh-sinh, which handles the endpoint power singularities the integrands
// have) and by std::tgamma / std::erf as second implementations.
#pragma once

#include <cmath>
#include <functional>

namespace oracles {

/// Tanh-sinh quadrature over (0, b). The integrand may have an integrable
/// power singularity at 0; it is called with the distance from 0 computed
/// cancellation-free, so values as small as ~1e-300 stay accurate.
inline double tanh_sinh_0b(const std::function<double(double)>& f, double b) {
    const double h0 = 0.5 * b;
    const double half_pi = 1.5707963267948966;
    auto node = [&](double t) -> double {
        const double sh = std::sinh(t) * half_pi;
        const double a_sh = std::abs(sh);
        if (a_sh > 360.0) return 0.0;
        const double em = std::exp(-2.0 * a_sh);
        const double sech2 = 4.0 * em / ((1.0 + em) * (1.0 + em));
        const double w = h0 * half_pi * std::cosh(t) * sech2;
        double u;  // distance from the singular endpoint 0
        if (sh >= 0.0)
            u = h0 * (1.0 + std::tanh(sh));
        else
            u = h0 * 2.0 * em / (1.0 + em);
        if (!(u > 0.0) || !(u < b) || w == 0.0) return 0.0;
        return f(u) * w;
    };
    double prev = 0.0;
    bool have_prev = false;
    for (int lvl = 3; lvl <= 13; ++lvl) {
        const double h = 8.0 / double(1 << lvl);
        const int kmax = static_cast<int>(7.5 / h);
        double s = node(0.0);
        for (int k = 1; k <= kmax; ++k) s += node(k * h) + node(-k * h);
        const double val = s * h;
        if (have_prev &&
            std::abs(val - prev) <= 1e-13 * std::max(1.0, std::abs(val)))
            return val;
        prev = val;
        have_prev = true;
    }
    return prev;
}

/// Direct sine-power quadrature for the angular integral: the angular factor
/// of integrating z^{-sigma} over the upper half sphere of R^{n+1},
///   omega_{n-1} * int_0^{pi/2} sin(u)^{-sigma} cos(u)^{n-1} du ,
/// with omega_{n-1} = 2 pi^{n/2} / Gamma(n/2) via std::tgamma (a Gamma
/// implementation independent of the library's own).
inline double sine_power_j(double sigma, int n) {
    const double omega = 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
    return omega * tanh_sinh_0b(
                       [&](double u) {
                           return std::pow(std::sin(u), -sigma) *
                                  std::pow(std::cos(u), double(n - 1));
                       },
                       M_PI / 2.0);
}

/// Half-ball / half-annulus power integral by polar tanh-sinh quadrature:
///   int_{region} t^{-sigma} |Y|^{-rho} dY
///   = [angular j(sigma, n)] * int_{r_lo}^{r_hi} r^{n - sigma - rho} dr ,
/// both factors integrated numerically (radial integral from 0 shifted to
/// avoid a spurious origin issue when r_lo > 0).
inline double polar_power_integral(int n, double sigma, double rho, double r_lo,
                                   double r_hi) {
    const double ang = sine_power_j(sigma, n);
    const double e = double(n) - sigma - rho;
    double radial;
    if (r_lo == 0.0) {
        radial = tanh_sinh_0b([&](double r) { return std::pow(r, e); }, r_hi);
    } else {
        radial = tanh_sinh_0b(
            [&](double s) { return std::pow(r_lo + s, e); }, r_hi - r_lo);
    }
    return ang * radial;
}

}  // namespace oracles
