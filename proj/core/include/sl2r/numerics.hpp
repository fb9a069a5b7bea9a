#pragma once

#include <functional>
#include <vector>

#include "sl2r/errors.hpp"

namespace sl2r {

// A 1-D integral whose integrand may blow up like 1/sqrt(distance) at either
// endpoint. That is the only singularity order the ambient-space integrands
// produce, and the only one this kernel accepts.
struct SingularIntegral {
    std::function<double(double)> integrand;
    double a = 0.0;
    double b = 1.0;
    bool singular_at_a = false;
    bool singular_at_b = false;
    double singularity_order = 0.5;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadratureOptions {
    double abs_floor = 1e-12;
    long max_evaluations = 1'000'000;
};

// Adaptive Gauss-Kronrod after the substitution t = a + (b-a) sin^2(phi),
// which removes inverse-square-root endpoint singularities.
QuadratureResult integrate(const SingularIntegral& spec, double rel_tol,
                           const QuadratureOptions& opts = {});

// Integral over [a, +inf). The tail is mapped to a finite interval with
// t = tan(phi); the integrand must decay at least like 1/t^2.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       bool singular_at_a, double rel_tol,
                                       const QuadratureOptions& opts = {});

// Bracketing root finder (Brent). Requires f(lo) * f(hi) < 0.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-14);

struct Derivatives2 {
    double ux = 0, uy = 0, uxx = 0, uxy = 0, uyy = 0;
};

// Centered O(h^2) finite differences of a scalar field of two variables.
Derivatives2 fd_derivatives(const std::function<double(double, double)>& u, double x,
                            double y, double h);

// Chebyshev-interpolated antiderivative of a smooth integrand on [a, b]:
// F(x) = integral_a^x f. Built once, evaluated many times (Clenshaw).
class ChebyshevAntiderivative {
public:
    ChebyshevAntiderivative(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-13, int max_degree = 4096);

    double operator()(double x) const;  // F(x), with F(a) = 0
    double a() const { return a_; }
    double b() const { return b_; }
    int degree() const { return static_cast<int>(coeff_.size()) - 1; }

private:
    double a_, b_;
    std::vector<double> coeff_;  // Chebyshev coefficients of F on [-1, 1]
};

} // namespace sl2r
