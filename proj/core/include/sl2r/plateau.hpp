#pragma once

#include <functional>
#include <vector>

#include "sl2r/numerics.hpp"
#include "sl2r/support.hpp"
#include "sl2r/surfaces.hpp"

namespace sl2r {

// Dirichlet problem for the half-space minimal-graph equation on a rectangle
// [x0, x1] x [y0, y1], y0 > 0, with finite boundary data.
struct GridProblem {
    double x0 = -1, x1 = 1, y0 = 0.2, y1 = 0.8;
    int nx = 17, ny = 17;
    std::function<double(double, double)> boundary;
    Tau tau;
};

// Solved grid field; node (i, j) sits at (x0 + i hx, y0 + j hy).
class GridField {
public:
    GridField() = default;
    GridField(const GridProblem& p, std::vector<double> values);

    double x0() const { return x0_; }
    double y0() const { return y0_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double at(int i, int j) const { return u_[static_cast<size_t>(j) * nx_ + i]; }
    const std::vector<double>& values() const { return u_; }
    double node_x(int i) const { return x0_ + i * hx_; }
    double node_y(int j) const { return y0_ + j * hy_; }

    // Local bicubic (cubic-convolution) interpolation with analytic
    // derivatives of the interpolant; used for off-node residual checks.
    double sample(double x, double y) const;
    Derivatives2 sample_derivatives(double x, double y) const;

private:
    int nx_ = 0, ny_ = 0;
    double x0_ = 0, y0_ = 0, hx_ = 0, hy_ = 0;
    std::vector<double> u_;
};

// Damped Newton on the centered-difference discretization, initialized from
// the discrete harmonic extension of the boundary data. Returns grid values
// with max interior residual below tol.
GridField solve(const GridProblem& problem, double tol = 1e-10, int max_iter = 50);

// Max interior residual of the discrete equation on the given values.
double discrete_residual(const GridProblem& problem, const GridField& field);

struct ConvergenceRow {
    int n = 0;
    double h = 0;
    double max_error = 0;
    double observed_order = 0;  // log2(e_h / e_{h/2}); 0 on the first row
};

// Errors against a closed-form solution over successive grid halvings
// (n -> 2n - 1), starting from problem.nx = problem.ny.
std::vector<ConvergenceRow> convergence_study(const GridProblem& base,
                                              const GraphFunction& exact, int levels,
                                              double tol = 1e-10);

} // namespace sl2r
