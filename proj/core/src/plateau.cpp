#include "sl2r/plateau.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "sl2r/errors.hpp"

namespace sl2r {

namespace {

struct Stencil {
    // first and second differences of the 9-point neighborhood
    double p, q, A, B, C;  // ux, uy, uxx, uxy, uyy
};

// E(y; p, q, A, B, C): the graph equation with p = ux, q = uy, A = uxx,
// B = uxy, C = uyy.
double equation(double y, double tv, const Stencil& s) {
    return y * s.q * s.q * s.q - (1.0 + 4.0 * tv * tv + y * s.p * (y * s.p - 4.0 * tv)) * s.C +
           s.q * (y * s.p - 2.0 * tv) * (s.p + 2.0 * y * s.B) - s.A -
           y * y * s.q * s.q * s.A;
}

void equation_partials(double y, double tv, const Stencil& s, double& dp, double& dq,
                       double& dA, double& dB, double& dC) {
    dp = -(2.0 * y * y * s.p - 4.0 * tv * y) * s.C + s.q * y * (s.p + 2.0 * y * s.B) +
         s.q * (y * s.p - 2.0 * tv);
    dq = 3.0 * y * s.q * s.q + (y * s.p - 2.0 * tv) * (s.p + 2.0 * y * s.B) -
         2.0 * y * y * s.q * s.A;
    dA = -1.0 - y * y * s.q * s.q;
    dB = 2.0 * y * s.q * (y * s.p - 2.0 * tv);
    dC = -(1.0 + 4.0 * tv * tv + y * s.p * (y * s.p - 4.0 * tv));
}

struct Workspace {
    const GridProblem* prob;
    int nx, ny, nix, niy;
    double hx, hy;
    std::vector<double> u;  // full grid, row-major j * nx + i

    int unknown(int i, int j) const { return (j - 1) * nix + (i - 1); }
    double& at(int i, int j) { return u[static_cast<size_t>(j) * nx + i]; }
    double at(int i, int j) const { return u[static_cast<size_t>(j) * nx + i]; }
    double y_of(int j) const { return prob->y0 + j * hy; }

    Stencil stencil(int i, int j) const {
        Stencil s;
        s.p = (at(i + 1, j) - at(i - 1, j)) / (2 * hx);
        s.q = (at(i, j + 1) - at(i, j - 1)) / (2 * hy);
        s.A = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (hx * hx);
        s.C = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (hy * hy);
        s.B = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) /
              (4 * hx * hy);
        return s;
    }
};

void fill_boundary(Workspace& w) {
    const GridProblem& p = *w.prob;
    for (int i = 0; i < w.nx; ++i) {
        for (int j = 0; j < w.ny; ++j) {
            if (i == 0 || j == 0 || i == w.nx - 1 || j == w.ny - 1) {
                const double v = p.boundary(p.x0 + i * w.hx, p.y0 + j * w.hy);
                if (!std::isfinite(v)) throw BadBoundaryError("boundary data must be finite");
                w.at(i, j) = v;
            }
        }
    }
}

// Discrete harmonic extension of the boundary data (5-point Laplacian).
void harmonic_init(Workspace& w) {
    const int n = w.nix * w.niy;
    Eigen::SparseMatrix<double> A(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * 5);
    const double cx = 1.0 / (w.hx * w.hx), cy = 1.0 / (w.hy * w.hy);
    for (int j = 1; j < w.ny - 1; ++j) {
        for (int i = 1; i < w.nx - 1; ++i) {
            const int row = w.unknown(i, j);
            trips.emplace_back(row, row, -2.0 * (cx + cy));
            auto add = [&](int ii, int jj, double coef) {
                if (ii == 0 || jj == 0 || ii == w.nx - 1 || jj == w.ny - 1)
                    b[row] -= coef * w.at(ii, jj);
                else
                    trips.emplace_back(row, w.unknown(ii, jj), coef);
            };
            add(i + 1, j, cx);
            add(i - 1, j, cx);
            add(i, j + 1, cy);
            add(i, j - 1, cy);
        }
    }
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
    if (lu.info() != Eigen::Success) throw NoConvergenceError("harmonic initializer failed");
    Eigen::VectorXd x = lu.solve(b);
    for (int j = 1; j < w.ny - 1; ++j)
        for (int i = 1; i < w.nx - 1; ++i) w.at(i, j) = x[w.unknown(i, j)];
}

Eigen::VectorXd residual_vector(const Workspace& w) {
    Eigen::VectorXd F(w.nix * w.niy);
    const double tv = w.prob->tau.value;
    for (int j = 1; j < w.ny - 1; ++j)
        for (int i = 1; i < w.nx - 1; ++i)
            F[w.unknown(i, j)] = equation(w.y_of(j), tv, w.stencil(i, j));
    return F;
}

} // namespace

GridField solve(const GridProblem& prob, double tol, int max_iter) {
    if (prob.nx < 8 || prob.ny < 8) throw BadParameterError("grid must be at least 8 x 8");
    if (!(prob.y0 > 0)) throw BadParameterError("the domain must stay off the ideal boundary");
    if (!(prob.x1 > prob.x0 && prob.y1 > prob.y0)) throw BadParameterError("empty domain");
    if (!(tol > 1e-12 && tol < 1e-4)) throw BadParameterError("tol must lie in (1e-12, 1e-4)");
    if (!prob.boundary) throw BadBoundaryError("missing boundary data");

    Workspace w;
    w.prob = &prob;
    w.nx = prob.nx;
    w.ny = prob.ny;
    w.nix = prob.nx - 2;
    w.niy = prob.ny - 2;
    w.hx = (prob.x1 - prob.x0) / (prob.nx - 1);
    w.hy = (prob.y1 - prob.y0) / (prob.ny - 1);
    w.u.assign(static_cast<size_t>(w.nx) * w.ny, 0.0);
    fill_boundary(w);
    harmonic_init(w);

    const int n = w.nix * w.niy;
    const double tv = prob.tau.value;
    std::vector<double> trace;

    Eigen::VectorXd F = residual_vector(w);
    for (int iter = 0; iter < max_iter; ++iter) {
        const double maxres = F.cwiseAbs().maxCoeff();
        trace.push_back(maxres);
        if (maxres < tol) return GridField(prob, w.u);

        // Jacobian: the equation is linear in (A, B, C) with coefficients in
        // (p, q), so the rows follow from the chain rule onto the stencil.
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<size_t>(n) * 9);
        for (int j = 1; j < w.ny - 1; ++j) {
            for (int i = 1; i < w.nx - 1; ++i) {
                const int row = w.unknown(i, j);
                const Stencil s = w.stencil(i, j);
                double dp, dq, dA, dB, dC;
                equation_partials(w.y_of(j), tv, s, dp, dq, dA, dB, dC);
                auto add = [&](int ii, int jj, double coef) {
                    if (coef == 0.0) return;
                    if (ii > 0 && jj > 0 && ii < w.nx - 1 && jj < w.ny - 1)
                        trips.emplace_back(row, w.unknown(ii, jj), coef);
                };
                add(i, j, -2.0 * dA / (w.hx * w.hx) - 2.0 * dC / (w.hy * w.hy));
                add(i + 1, j, dp / (2 * w.hx) + dA / (w.hx * w.hx));
                add(i - 1, j, -dp / (2 * w.hx) + dA / (w.hx * w.hx));
                add(i, j + 1, dq / (2 * w.hy) + dC / (w.hy * w.hy));
                add(i, j - 1, -dq / (2 * w.hy) + dC / (w.hy * w.hy));
                const double cB = dB / (4 * w.hx * w.hy);
                add(i + 1, j + 1, cB);
                add(i - 1, j - 1, cB);
                add(i + 1, j - 1, -cB);
                add(i - 1, j + 1, -cB);
            }
        }
        Eigen::SparseMatrix<double> J(n, n);
        J.setFromTriplets(trips.begin(), trips.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
        if (lu.info() != Eigen::Success)
            throw NewtonDivergedError("singular Jacobian", trace);
        Eigen::VectorXd delta = lu.solve(-F);

        // Backtracking on the residual 2-norm.
        const double f0 = F.norm();
        double step = 1.0;
        std::vector<double> saved = w.u;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            w.u = saved;
            for (int j = 1; j < w.ny - 1; ++j)
                for (int i = 1; i < w.nx - 1; ++i)
                    w.at(i, j) += step * delta[w.unknown(i, j)];
            Eigen::VectorXd Fnew = residual_vector(w);
            if (Fnew.norm() < f0 * (1.0 - 1e-4 * step) || Fnew.cwiseAbs().maxCoeff() < tol) {
                F.swap(Fnew);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) throw NewtonDivergedError("line search stalled", trace);
    }
    trace.push_back(F.cwiseAbs().maxCoeff());
    if (trace.back() < tol) return GridField(prob, w.u);
    throw NewtonDivergedError("iteration cap reached", trace);
}

double discrete_residual(const GridProblem& prob, const GridField& f) {
    Workspace w;
    w.prob = &prob;
    w.nx = prob.nx;
    w.ny = prob.ny;
    w.nix = prob.nx - 2;
    w.niy = prob.ny - 2;
    w.hx = f.hx();
    w.hy = f.hy();
    w.u = f.values();
    return residual_vector(w).cwiseAbs().maxCoeff();
}

GridField::GridField(const GridProblem& p, std::vector<double> values)
    : nx_(p.nx),
      ny_(p.ny),
      x0_(p.x0),
      y0_(p.y0),
      hx_((p.x1 - p.x0) / (p.nx - 1)),
      hy_((p.y1 - p.y0) / (p.ny - 1)),
      u_(std::move(values)) {}

namespace {

// Catmull-Rom weights and derivatives for the 4-point stencil; exact on
// cubics, so constants and tilted planes interpolate exactly.
void cr_weights(double t, double w[4], double dw[4], double ddw[4]) {
    w[0] = 0.5 * (-t + 2 * t * t - t * t * t);
    w[1] = 0.5 * (2 - 5 * t * t + 3 * t * t * t);
    w[2] = 0.5 * (t + 4 * t * t - 3 * t * t * t);
    w[3] = 0.5 * (-t * t + t * t * t);
    dw[0] = 0.5 * (-1 + 4 * t - 3 * t * t);
    dw[1] = 0.5 * (-10 * t + 9 * t * t);
    dw[2] = 0.5 * (1 + 8 * t - 9 * t * t);
    dw[3] = 0.5 * (-2 * t + 3 * t * t);
    ddw[0] = 0.5 * (4 - 6 * t);
    ddw[1] = 0.5 * (-10 + 18 * t);
    ddw[2] = 0.5 * (8 - 18 * t);
    ddw[3] = 0.5 * (-2 + 6 * t);
}

} // namespace

namespace {

struct BicubicEval {
    double v = 0, vx = 0, vy = 0, vxx = 0, vxy = 0, vyy = 0;
};

BicubicEval bicubic(const GridField& f, double x, double y) {
    const double gx = (x - f.x0()) / f.hx();
    const double gy = (y - f.y0()) / f.hy();
    int i0 = std::clamp(static_cast<int>(std::floor(gx)), 1, f.nx() - 3);
    int j0 = std::clamp(static_cast<int>(std::floor(gy)), 1, f.ny() - 3);
    const double tx = gx - i0;
    const double ty = gy - j0;
    double wx[4], dwx[4], ddwx[4], wy[4], dwy[4], ddwy[4];
    cr_weights(tx, wx, dwx, ddwx);
    cr_weights(ty, wy, dwy, ddwy);

    BicubicEval e;
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            const double uu = f.at(i0 - 1 + m, j0 - 1 + n);
            e.v += wx[m] * wy[n] * uu;
            e.vx += dwx[m] * wy[n] * uu;
            e.vy += wx[m] * dwy[n] * uu;
            e.vxx += ddwx[m] * wy[n] * uu;
            e.vxy += dwx[m] * dwy[n] * uu;
            e.vyy += wx[m] * ddwy[n] * uu;
        }
    }
    return e;
}

} // namespace

double GridField::sample(double x, double y) const { return bicubic(*this, x, y).v; }

Derivatives2 GridField::sample_derivatives(double x, double y) const {
    const BicubicEval e = bicubic(*this, x, y);
    Derivatives2 d;
    d.ux = e.vx / hx_;
    d.uy = e.vy / hy_;
    d.uxx = e.vxx / (hx_ * hx_);
    d.uxy = e.vxy / (hx_ * hy_);
    d.uyy = e.vyy / (hy_ * hy_);
    return d;
}

std::vector<ConvergenceRow> convergence_study(const GridProblem& base,
                                              const GraphFunction& exact, int levels,
                                              double tol) {
    std::vector<ConvergenceRow> rows;
    GridProblem p = base;
    for (int lvl = 0; lvl < levels; ++lvl) {
        GridField f = solve(p, tol);
        double err = 0.0;
        for (int j = 0; j < p.ny; ++j)
            for (int i = 0; i < p.nx; ++i)
                err = std::max(err, std::abs(f.at(i, j) - exact.eval(f.node_x(i), f.node_y(j))));
        ConvergenceRow row;
        row.n = p.nx;
        row.h = f.hx();
        row.max_error = err;
        row.observed_order =
            rows.empty() ? 0.0 : std::log2(rows.back().max_error / std::max(err, 1e-300));
        rows.push_back(row);
        p.nx = 2 * p.nx - 1;
        p.ny = 2 * p.ny - 1;
    }
    return rows;
}

} // namespace sl2r
