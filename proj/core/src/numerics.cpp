#include "sl2r/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "sl2r/support.hpp"

namespace sl2r {

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
// Gauss weights for the embedded 7-point rule (odd Kronrod nodes).
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

struct GK15 {
    double value = 0, gauss = 0, error = 0;
};

GK15 gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = h * kKronrodNodes[i];
        double fv;
        if (i == 7) {
            fv = f(c);
            ++evals;
        } else {
            fv = f(c - x) + f(c + x);
            evals += 2;
        }
        if (!std::isfinite(fv))
            throw NonFiniteError("integrand returned a non-finite value inside the interval");
        resk += kKronrodWeights[i] * fv;
        if (i % 2 == 1) resg += kGaussWeights[i / 2] * fv;
    }
    if (!std::isfinite(resk))
        throw NonFiniteError("integrand returned a non-finite value inside the interval");
    GK15 r;
    r.value = resk * h;
    r.gauss = resg * h;
    double diff = std::abs(r.value - r.gauss);
    // The standard (200|K-G|)^1.5 sharpening, capped at the raw difference.
    r.error = std::min(diff, std::pow(200.0 * diff, 1.5));
    if (diff > 0 && r.error == 0) r.error = diff;
    return r;
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, const QuadratureOptions& opts) {
    long evals = 0;
    std::priority_queue<Segment> queue;
    GK15 first = gk15(f, a, b, evals);
    queue.push({a, b, first.value, first.error});
    double total = first.value, toterr = first.error;

    auto tolerance = [&](double v) {
        return std::max(rel_tol * std::abs(v), opts.abs_floor);
    };

    while (toterr > tolerance(total)) {
        if (evals >= opts.max_evaluations)
            throw NoConvergenceError("quadrature evaluation cap reached");
        Segment worst = queue.top();
        queue.pop();
        if (worst.error == 0.0) break;  // nothing left to refine
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval is at machine resolution; accept its estimate as-is.
            queue.push({worst.a, worst.b, worst.value, 0.0});
            toterr -= worst.error;
            continue;
        }
        GK15 left = gk15(f, worst.a, mid, evals);
        GK15 right = gk15(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
    }
    return {total, toterr, evals};
}

void validate_rel_tol(double rel_tol) {
    if (!(rel_tol > 1e-14 && rel_tol < 1e-2))
        throw BadParameterError("rel_tol must lie in (1e-14, 1e-2)");
}

} // namespace

QuadratureResult integrate(const SingularIntegral& spec, double rel_tol,
                           const QuadratureOptions& opts) {
    validate_rel_tol(rel_tol);
    if (!(spec.a < spec.b)) throw BadParameterError("integration bounds require a < b");
    if (spec.singularity_order != 0.5)
        throw BadParameterError("only inverse-square-root endpoint singularities are supported");

    if (!spec.singular_at_a && !spec.singular_at_b)
        return adaptive(spec.integrand, spec.a, spec.b, rel_tol, opts);

    // t = a + (b-a) sin^2(phi); the sin(2 phi) weight vanishes at both
    // endpoints and cancels a 1/sqrt factor at either of them.
    const double a = spec.a, len = spec.b - spec.a;
    const auto& f = spec.integrand;
    auto transformed = [a, len, &f](double phi) {
        const double s = std::sin(phi);
        const double t = a + len * s * s;
        return f(t) * len * std::sin(2.0 * phi);
    };
    return adaptive(transformed, 0.0, 0.5 * kPi, rel_tol, opts);
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       bool singular_at_a, double rel_tol,
                                       const QuadratureOptions& opts) {
    validate_rel_tol(rel_tol);
    const double split = a + 1.0;
    SingularIntegral head{f, a, split, singular_at_a, false, 0.5};
    QuadratureResult r1 = integrate(head, rel_tol, opts);

    // Tail: t = split + tan(phi); needs decay O(1/t^2) to stay integrable.
    auto tail = [split, &f](double phi) {
        const double c = std::cos(phi);
        const double t = split + std::tan(phi);
        return f(t) / (c * c);
    };
    QuadratureResult r2 = adaptive(tail, 0.0, 0.5 * kPi, rel_tol, opts);
    return {r1.value + r2.value, r1.error_estimate + r2.error_estimate,
            r1.evaluations + r2.evaluations};
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0) throw NoBracketError("find_root: f(lo) and f(hi) have the same sign");

    // Brent's method; bisection steps guarantee convergence.
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r = 0.0;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

Derivatives2 fd_derivatives(const std::function<double(double, double)>& u, double x,
                            double y, double h) {
    Derivatives2 d;
    const double upp = u(x + h, y + h), upm = u(x + h, y - h);
    const double ump = u(x - h, y + h), umm = u(x - h, y - h);
    const double up0 = u(x + h, y), um0 = u(x - h, y);
    const double u0p = u(x, y + h), u0m = u(x, y - h);
    const double u00 = u(x, y);
    d.ux = (up0 - um0) / (2 * h);
    d.uy = (u0p - u0m) / (2 * h);
    d.uxx = (up0 - 2 * u00 + um0) / (h * h);
    d.uyy = (u0p - 2 * u00 + u0m) / (h * h);
    d.uxy = (upp - upm - ump + umm) / (4 * h * h);
    return d;
}

ChebyshevAntiderivative::ChebyshevAntiderivative(const std::function<double(double)>& f,
                                                 double a, double b, double tol,
                                                 int max_degree)
    : a_(a), b_(b) {
    if (!(a < b)) throw BadParameterError("ChebyshevAntiderivative requires a < b");

    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> fcoef;
    for (int n = 32; n <= max_degree; n *= 2) {
        // Values at Chebyshev extrema, then a type-I DCT for coefficients.
        std::vector<double> fv(n + 1);
        for (int k = 0; k <= n; ++k) {
            const double xk = std::cos(kPi * k / n);
            fv[k] = f(mid + half * xk);
            if (!std::isfinite(fv[k]))
                throw NonFiniteError("Chebyshev sample is non-finite");
        }
        fcoef.assign(n + 1, 0.0);
        for (int j = 0; j <= n; ++j) {
            double s = 0.5 * (fv[0] + (j % 2 ? -1.0 : 1.0) * fv[n]);
            for (int k = 1; k < n; ++k) s += fv[k] * std::cos(kPi * j * k / n);
            fcoef[j] = 2.0 * s / n;
        }
        fcoef[0] *= 0.5;
        fcoef[n] *= 0.5;

        double scale = 0.0;
        for (double cj : fcoef) scale = std::max(scale, std::abs(cj));
        double tail = 0.0;
        for (int j = n - 3; j <= n; ++j) tail = std::max(tail, std::abs(fcoef[j]));
        if (tail <= tol * std::max(scale, 1.0) || n == max_degree) break;
    }

    // Antiderivative coefficients: if f = sum c_j T_j then
    // F' = f gives A_j = (c_{j-1} - c_{j+1}) / (2j), scaled by (b-a)/2.
    const int n = static_cast<int>(fcoef.size()) - 1;
    coeff_.assign(n + 2, 0.0);
    auto c = [&](int j) { return (j >= 0 && j <= n) ? fcoef[j] : 0.0; };
    for (int j = 1; j <= n + 1; ++j)
        coeff_[j] = half * (c(j - 1) - c(j + 1)) / (2.0 * j);
    coeff_[1] += half * 0.5 * c(0);  // integral of T_0 is T_1, not T_1/2
    // Fix the constant so that F(a) = 0; T_j(-1) = (-1)^j.
    double at_a = 0.0;
    for (int j = 1; j < static_cast<int>(coeff_.size()); ++j)
        at_a += coeff_[j] * (j % 2 ? -1.0 : 1.0);
    coeff_[0] = -at_a;
}

double ChebyshevAntiderivative::operator()(double x) const {
    const double t = std::clamp((2.0 * x - (a_ + b_)) / (b_ - a_), -1.0, 1.0);
    // Clenshaw recurrence.
    double b1 = 0.0, b2 = 0.0;
    for (int j = static_cast<int>(coeff_.size()) - 1; j >= 1; --j) {
        const double tmp = 2.0 * t * b1 - b2 + coeff_[j];
        b2 = b1;
        b1 = tmp;
    }
    return t * b1 - b2 + coeff_[0];
}

} // namespace sl2r
