#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace swlab {

/// A point of the (truncated) upper half space. Coordinates are (x..., t)
/// with unused x-slots held at zero so distances can be computed uniformly.
struct HalfPoint {
    std::array<double, 2> x{0.0, 0.0};
    double t = 0.0;
};

inline double dist2(const HalfPoint& a, const HalfPoint& b) {
    const double dx = a.x[0] - b.x[0];
    const double dy = a.x[1] - b.x[1];
    const double dt = a.t - b.t;
    return dx * dx + dy * dy + dt * dt;
}

/// Tensor-product midpoint grid on [-x_extent, x_extent]^n x (0, t_max],
/// with the t-cells graded toward the boundary t = 0:
/// cell j spans [t_max (j/nt)^g, t_max ((j+1)/nt)^g].
class HalfSpaceGrid {
  public:
    HalfSpaceGrid() = default;

    int n = 1;
    double x_extent = 4.0;
    double t_max = 4.0;
    int nx = 64;
    int nt = 64;
    double grading = 2.0;

    std::vector<double> x_nodes;    // per-axis midpoints, size nx
    std::vector<double> t_nodes;    // cell midpoints, size nt
    std::vector<double> t_weights;  // cell heights, size nt
    double dx = 0.0;

    std::size_t node_count() const {
        std::size_t s = static_cast<std::size_t>(nt) * nx;
        if (n == 2) s *= nx;
        return s;
    }

    // id = (spatial index) * nt + it, spatial = ix  (n=1)  or  ix*nx + iy (n=2)
    HalfPoint point(std::size_t id) const {
        HalfPoint pt;
        const std::size_t it = id % nt;
        std::size_t sp = id / nt;
        if (n == 1) {
            pt.x[0] = x_nodes[sp];
        } else {
            pt.x[0] = x_nodes[sp / nx];
            pt.x[1] = x_nodes[sp % nx];
        }
        pt.t = t_nodes[it];
        return pt;
    }

    double weight(std::size_t id) const {
        const double cell_x = (n == 1) ? dx : dx * dx;
        return cell_x * t_weights[id % nt];
    }

    double total_measure() const;

    bool same_layout(const HalfSpaceGrid& o) const {
        return n == o.n && nx == o.nx && nt == o.nt &&
               x_extent == o.x_extent && t_max == o.t_max && grading == o.grading;
    }
};

/// Throws std::domain_error on bad parameters; guards node counts above 1e7.
HalfSpaceGrid build_grid(int n, double x_extent, double t_max, int nx, int nt,
                         double grading);

/// Sampled scalar function on a grid.
struct Field {
    std::shared_ptr<const HalfSpaceGrid> grid;
    std::vector<double> values;

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// Closed-form test functions, exactly evaluable (value and gradient)
/// at any point of the half space.
struct FuncSpec {
    enum class Kind { GaussianBump, Bubble, CutoffBump, Scaled };
    Kind kind = Kind::GaussianBump;

    HalfPoint center;       // GaussianBump / Bubble / CutoffBump
    double width = 1.0;     // GaussianBump
    double amplitude = 1.0; // Bubble amplitude c
    double d = 1.0;         // Bubble offset
    double exponent = 1.0;  // Bubble decay exponent e
    double radius = 1.0;    // CutoffBump support radius
    double smoothness = 1.0;// CutoffBump shape parameter
    double tau = 1.0;       // Scaled dilation factor
    double decay = 0.0;     // Scaled prefactor exponent: tau^{-decay} inner(X/tau)
    std::shared_ptr<const FuncSpec> inner;  // Scaled

    double value(const HalfPoint& p) const;
    std::array<double, 3> gradient(const HalfPoint& p) const;  // (d/dx0, d/dx1, d/dt)

    static FuncSpec gaussian_bump(HalfPoint center, double width);
    static FuncSpec bubble(double c, double d, HalfPoint center, double exponent);
    static FuncSpec cutoff_bump(HalfPoint center, double radius, double smoothness);
    static FuncSpec scaled(FuncSpec inner, double tau, double decay);
};

Field sample(const FuncSpec& spec, std::shared_ptr<const HalfSpaceGrid> grid);

/// Midpoint quadrature: sum of value * weight in fixed node order.
double quadrature(const Field& f);

/// Columns: x... , t, value. 17 significant digits.
void write_field_csv(const Field& f, const std::string& path);

}  // namespace swlab
