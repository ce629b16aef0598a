#include "swlab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace swlab {

namespace {

double sup_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double sup_rel_diff(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a.values[i] - b.values[i]));
        den = std::max(den, std::abs(a.values[i]));
    }
    return den > 0.0 ? num / den : 0.0;
}

Field signed_power(const Field& f, double e) {
    Field out;
    out.grid = f.grid;
    out.values.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f.values[i];
        out.values[i] = std::copysign(std::pow(std::abs(v), e), v);
    }
    return out;
}

void scale_field(Field& f, double s) {
    for (double& v : f.values) v *= s;
}

// t-centroid and lowest-quarter t-layer fraction of the p-mass.
void mass_stats(const Field& f, double p, double& centroid_t,
                double& mass_fraction) {
    const auto& g = *f.grid;
    double mass = 0.0, tmoment = 0.0, low = 0.0;
    const int cutoff = g.nt / 4;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double m = std::pow(std::abs(f.values[i]), p) * g.weight(i);
        mass += m;
        tmoment += g.point(i).t * m;
        if (static_cast<int>(i % g.nt) < cutoff) low += m;
    }
    centroid_t = mass > 0.0 ? tmoment / mass : 0.0;
    mass_fraction = mass > 0.0 ? low / mass : 0.0;
}

}  // namespace

PowerIterationResult power_iterate(const RieszKernel& K, const ExponentConfig& cfg,
                                   const Field& f0,
                                   const PowerIterationOptions& opt) {
    if (!f0.grid || !f0.grid->same_layout(K.grid()))
        throw std::domain_error("power_iterate: field on a different grid");
    const double fp0 = weighted_norm(f0, 0.0, cfg.p);
    if (!(fp0 > 0.0))
        throw std::domain_error("power_iterate: zero initial field");

    PowerIterationResult res;
    const auto note =
        validate_primal(cfg.n, cfg.lambda, cfg.alpha, cfg.beta, cfg.p, cfg.r)
            .attainment_note;
    const bool watch_concentration = (cfg.alpha == 0.0 && cfg.beta == 0.0);
    if (watch_concentration)
        res.warnings.push_back(
            "unweighted configuration: extremal not attained, concentration watch on");
    if (std::abs(cfg.p - cfg.q) < 1e-12)
        res.warnings.push_back("p = q: extremals not expected to attain");
    else if (note.rfind("attainment unknown", 0) == 0)
        res.warnings.push_back("attainment unknown for this configuration");

    Field f = f0;
    scale_field(f, 1.0 / fp0);
    const double inv_pm1 = 1.0 / (cfg.p - 1.0);

    double n_est = 0.0;
    for (int k = 1; k <= opt.max_iter; ++k) {
        const Field kf = K.apply(f, cfg.alpha, cfg.beta);
        n_est = weighted_norm(kf, 0.0, cfg.q);
        const Field g = signed_power(kf, cfg.q - 1.0);
        const Field h = K.apply(g, cfg.beta, cfg.alpha);  // adjoint weights
        Field fnew = signed_power(h, inv_pm1);
        const double nrm = weighted_norm(fnew, 0.0, cfg.p);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::runtime_error("power_iterate: iterate degenerated");
        scale_field(fnew, 1.0 / nrm);

        const double rel = sup_rel_diff(fnew, f);
        if (opt.record_trace) {
            IterationTraceRow row;
            row.iter = k;
            row.n_estimate = n_est;
            row.rel_change = rel;
            mass_stats(fnew, cfg.p, row.centroid_t, row.mass_fraction);
            res.trace.push_back(row);
        }
        f = std::move(fnew);
        res.iterations = k;
        if (rel < opt.tol) {
            res.converged = true;
            break;
        }
    }

    const Field kf = K.apply(f, cfg.alpha, cfg.beta);
    res.n_estimate = weighted_norm(kf, 0.0, cfg.q);
    res.f_star = std::move(f);
    res.g_star = signed_power(kf, cfg.q - 1.0);
    const double gr = weighted_norm(res.g_star, 0.0, cfg.r);
    if (gr > 0.0) scale_field(res.g_star, 1.0 / gr);

    if (watch_concentration && !res.trace.empty()) {
        const auto& last = res.trace.back();
        if (last.mass_fraction > 0.95 ||
            last.centroid_t < 2.0 * K.grid().t_nodes.front())
            res.warnings.push_back(
                "concentration watch: p-mass collapsing toward the boundary");
    }
    return res;
}

void write_trace_csv(const std::vector<IterationTraceRow>& trace,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    out << std::setprecision(17);
    out << "iter,n_estimate,rel_change,centroid_t,mass_fraction\n";
    for (const auto& r : trace)
        out << r.iter << ',' << r.n_estimate << ',' << r.rel_change << ','
            << r.centroid_t << ',' << r.mass_fraction << '\n';
}

std::pair<double, double> el_residual(const RieszKernel& K,
                                      const ExponentConfig& cfg, const Field& u,
                                      const Field& v) {
    const ELExponents el = el_exponents(cfg);
    const Field au = K.apply(signed_power(v, el.kappa), cfg.beta, cfg.alpha);
    const Field bv = K.apply(signed_power(u, el.theta), cfg.alpha, cfg.beta);
    const double su = sup_abs(u), sv = sup_abs(v);
    double ru = 0.0, rv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        ru = std::max(ru, std::abs(au.values[i] - u.values[i]));
        rv = std::max(rv, std::abs(bv.values[i] - v.values[i]));
    }
    return {su > 0.0 ? ru / su : ru, sv > 0.0 ? rv / sv : rv};
}

ELPairResult solve_el_pair(const RieszKernel& K, const ExponentConfig& cfg,
                           const Field& u0, const Field& v0, double tol,
                           int max_iter) {
    const ELExponents el = el_exponents(cfg);
    if (!u0.grid || !u0.grid->same_layout(K.grid()) || !v0.grid ||
        !v0.grid->same_layout(K.grid()))
        throw std::domain_error("solve_el_pair: fields on a different grid");

    ELPairResult res;
    Field u = u0, v = v0;
    const double s0u = sup_abs(u), s0v = sup_abs(v);
    if (!(s0u > 0.0 && s0v > 0.0))
        throw std::domain_error("solve_el_pair: zero initial field");
    scale_field(u, 1.0 / s0u);
    scale_field(v, 1.0 / s0v);

    double a = 1.0, b = 1.0;
    for (int k = 1; k <= max_iter; ++k) {
        Field u_raw = K.apply(signed_power(v, el.kappa), cfg.beta, cfg.alpha);
        a = sup_abs(u_raw);
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::runtime_error("solve_el_pair: iterate degenerated");
        scale_field(u_raw, 1.0 / a);
        const double du = sup_rel_diff(u_raw, u);
        u = std::move(u_raw);

        Field v_raw = K.apply(signed_power(u, el.theta), cfg.alpha, cfg.beta);
        b = sup_abs(v_raw);
        if (!(b > 0.0) || !std::isfinite(b))
            throw std::runtime_error("solve_el_pair: iterate degenerated");
        scale_field(v_raw, 1.0 / b);
        const double dv = sup_rel_diff(v_raw, v);
        v = std::move(v_raw);

        res.iterations = k;
        if (std::max(du, dv) < tol) {
            res.converged = true;
            break;
        }
    }

    const double tk = el.theta * el.kappa;
    if (tk > 1.0 + 1e-12) {
        // A(v^kappa) = a u, B(u^theta) = b v  ->  (s u, sigma v) exact.
        const double s = std::pow(a * std::pow(b, el.kappa), -1.0 / (tk - 1.0));
        const double sigma = std::pow(s, el.theta) * b;
        scale_field(u, s);
        scale_field(v, sigma);
        res.rescaled = true;
    } else {
        res.warnings.push_back(
            "theta*kappa = 1: system is scale-degenerate, multipliers not removable");
    }

    res.u = std::move(u);
    res.v = std::move(v);
    auto [ru, rv] = el_residual(K, cfg, res.u, res.v);
    res.residual_u = ru;
    res.residual_v = rv;
    return res;
}

}  // namespace swlab
