#include "swlab/grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace swlab {

double HalfSpaceGrid::total_measure() const {
    double tsum = 0.0;
    for (double w : t_weights) tsum += w;
    const double xm = 2.0 * x_extent;
    return (n == 1 ? xm : xm * xm) * tsum;
}

HalfSpaceGrid build_grid(int n, double x_extent, double t_max, int nx, int nt,
                         double grading) {
    if (n != 1 && n != 2)
        throw std::domain_error("build_grid: native boundary dimension is 1 or 2");
    if (nx < 4 || nt < 4)
        throw std::domain_error("build_grid: nx and nt must be >= 4");
    if (!(grading >= 1.0))
        throw std::domain_error("build_grid: grading must be >= 1");
    if (!(x_extent > 0.0 && t_max > 0.0))
        throw std::domain_error("build_grid: extents must be positive");

    HalfSpaceGrid g;
    g.n = n;
    g.x_extent = x_extent;
    g.t_max = t_max;
    g.nx = nx;
    g.nt = nt;
    g.grading = grading;
    if (g.node_count() > 10'000'000)
        throw std::domain_error("build_grid: node count exceeds the 1e7 guard");

    g.dx = 2.0 * x_extent / nx;
    g.x_nodes.resize(nx);
    for (int i = 0; i < nx; ++i) g.x_nodes[i] = -x_extent + (i + 0.5) * g.dx;

    g.t_nodes.resize(nt);
    g.t_weights.resize(nt);
    for (int j = 0; j < nt; ++j) {
        const double lo = t_max * std::pow(double(j) / nt, grading);
        const double hi = t_max * std::pow(double(j + 1) / nt, grading);
        g.t_nodes[j] = 0.5 * (lo + hi);
        g.t_weights[j] = hi - lo;
    }
    return g;
}

// ---------------------------------------------------------------------------

FuncSpec FuncSpec::gaussian_bump(HalfPoint center, double width) {
    if (!(width > 0.0)) throw std::domain_error("gaussian_bump: width must be > 0");
    FuncSpec s;
    s.kind = Kind::GaussianBump;
    s.center = center;
    s.width = width;
    return s;
}

FuncSpec FuncSpec::bubble(double c, double d, HalfPoint center, double exponent) {
    if (!(d > 0.0 && exponent > 0.0))
        throw std::domain_error("bubble: d and exponent must be > 0");
    FuncSpec s;
    s.kind = Kind::Bubble;
    s.amplitude = c;
    s.d = d;
    s.center = center;
    s.exponent = exponent;
    return s;
}

FuncSpec FuncSpec::cutoff_bump(HalfPoint center, double radius, double smoothness) {
    if (!(radius > 0.0 && smoothness > 0.0))
        throw std::domain_error("cutoff_bump: radius and smoothness must be > 0");
    FuncSpec s;
    s.kind = Kind::CutoffBump;
    s.center = center;
    s.radius = radius;
    s.smoothness = smoothness;
    return s;
}

FuncSpec FuncSpec::scaled(FuncSpec inner, double tau, double decay) {
    if (!(tau > 0.0)) throw std::domain_error("scaled: tau must be > 0");
    FuncSpec s;
    s.kind = Kind::Scaled;
    s.tau = tau;
    s.decay = decay;
    s.inner = std::make_shared<FuncSpec>(std::move(inner));
    return s;
}

double FuncSpec::value(const HalfPoint& p) const {
    switch (kind) {
        case Kind::GaussianBump: {
            return std::exp(-0.5 * dist2(p, center) / (width * width));
        }
        case Kind::Bubble: {
            return amplitude * std::pow(1.0 / (dist2(p, center) + d * d), exponent);
        }
        case Kind::CutoffBump: {
            const double r2 = dist2(p, center);
            const double R2 = radius * radius;
            if (r2 >= R2) return 0.0;
            return std::exp(-smoothness * r2 / (R2 - r2));
        }
        case Kind::Scaled: {
            HalfPoint q{{p.x[0] / tau, p.x[1] / tau}, p.t / tau};
            return std::pow(tau, -decay) * inner->value(q);
        }
    }
    return 0.0;
}

std::array<double, 3> FuncSpec::gradient(const HalfPoint& p) const {
    const double dx0 = p.x[0] - center.x[0];
    const double dx1 = p.x[1] - center.x[1];
    const double dt = p.t - center.t;
    switch (kind) {
        case Kind::GaussianBump: {
            const double v = value(p);
            const double s = -v / (width * width);
            return {s * dx0, s * dx1, s * dt};
        }
        case Kind::Bubble: {
            const double s2 = dist2(p, center) + d * d;
            const double s = -2.0 * exponent * value(p) / s2;
            return {s * dx0, s * dx1, s * dt};
        }
        case Kind::CutoffBump: {
            const double r2 = dist2(p, center);
            const double R2 = radius * radius;
            if (r2 >= R2) return {0.0, 0.0, 0.0};
            const double g = R2 - r2;
            // d/dr2 [ -s r2/(R2-r2) ] = -s R2/(R2-r2)^2
            const double s = value(p) * (-smoothness * R2 / (g * g)) * 2.0;
            return {s * dx0, s * dx1, s * dt};
        }
        case Kind::Scaled: {
            HalfPoint q{{p.x[0] / tau, p.x[1] / tau}, p.t / tau};
            auto gi = inner->gradient(q);
            const double s = std::pow(tau, -decay) / tau;
            return {s * gi[0], s * gi[1], s * gi[2]};
        }
    }
    return {0.0, 0.0, 0.0};
}

Field sample(const FuncSpec& spec, std::shared_ptr<const HalfSpaceGrid> grid) {
    Field f;
    f.grid = grid;
    const std::size_t nn = grid->node_count();
    f.values.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) f.values[i] = spec.value(grid->point(i));
    return f;
}

double quadrature(const Field& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.values[i] * f.grid->weight(i);
    return s;
}

void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
    out << std::setprecision(17);
    if (f.grid->n == 1)
        out << "x,t,value\n";
    else
        out << "x0,x1,t,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const HalfPoint p = f.grid->point(i);
        if (f.grid->n == 1)
            out << p.x[0] << ',' << p.t << ',' << f.values[i] << '\n';
        else
            out << p.x[0] << ',' << p.x[1] << ',' << p.t << ',' << f.values[i]
                << '\n';
    }
}

}  // namespace swlab
