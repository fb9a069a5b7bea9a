#include "sl2r/geometry.hpp"

#include <cmath>

namespace sl2r {

namespace {

constexpr double kInteriorEps = 1e-14;
constexpr double kDetTol = 1e-12;

// The connection 1-form coefficients eta_1, eta_2 with
// dt-part (dt + eta_1 dx + eta_2 dy):
//   eta_1 = 2 tau lambda_y / lambda, eta_2 = -2 tau lambda_x / lambda.
// Both lambdas are closed forms, so the log-derivatives are hard-coded.
void connection_form(Model model, double x, double y, Tau tau, double& e1, double& e2) {
    switch (model) {
        case Model::HalfSpace:
            // lambda = 1/y: lambda_x/lambda = 0, lambda_y/lambda = -1/y.
            e1 = -2.0 * tau.value / y;
            e2 = 0.0;
            break;
        case Model::Cylinder: {
            // lambda = 2/(1-x^2-y^2): lambda_x/lambda = x lambda, same in y.
            const double lam = conformal_lambda(Model::Cylinder, x, y);
            e1 = 2.0 * tau.value * y * lam;
            e2 = -2.0 * tau.value * x * lam;
            break;
        }
    }
}

} // namespace

double conformal_lambda(Model model, double x, double y) {
    switch (model) {
        case Model::HalfSpace:
            return 1.0 / y;
        case Model::Cylinder:
            return 2.0 / (1.0 - x * x - y * y);
    }
    return 0.0;
}

bool is_interior(Model model, double x, double y) {
    switch (model) {
        case Model::HalfSpace:
            return y > kInteriorEps;
        case Model::Cylinder:
            return 1.0 - x * x - y * y > kInteriorEps;
    }
    return false;
}

void require_interior(const Point3& p) {
    if (!is_interior(p.model, p.x, p.y))
        throw BoundaryPointError("point is not interior to its model");
}

MetricTensor metric_at(const Point3& p, Tau tau) {
    require_interior(p);
    const double lam = conformal_lambda(p.model, p.x, p.y);
    double e1 = 0, e2 = 0;
    connection_form(p.model, p.x, p.y, tau, e1, e2);

    MetricTensor g;
    g(0, 0) = lam * lam + e1 * e1;
    g(1, 1) = lam * lam + e2 * e2;
    g(2, 2) = 1.0;
    g(0, 1) = g(1, 0) = e1 * e2;
    g(0, 2) = g(2, 0) = e1;
    g(1, 2) = g(2, 1) = e2;
    return g;
}

MetricTensor polar_metric_at(double r, double theta, Tau tau) {
    (void)theta;  // rotationally invariant
    if (!(r > 0)) throw NonpositiveRadiusError("polar metric requires r > 0");
    const double sh = std::sinh(r);
    const double s2 = std::sinh(0.5 * r) * std::sinh(0.5 * r);
    const double a = -4.0 * tau.value * s2;  // dtheta coefficient of the dt-part

    MetricTensor g;
    g(0, 0) = 1.0;
    g(1, 1) = sh * sh + a * a;
    g(2, 2) = 1.0;
    g(1, 2) = g(2, 1) = a;
    return g;
}

Point3 to_cylinder(const Point3& p, Tau tau) {
    if (p.model != Model::HalfSpace)
        throw WrongModelError("to_cylinder expects a half-space point");
    require_interior(p);
    // phi(z, t) = ((z - i)/(z + i), t - 4 tau arctan(x/(y+1))).
    const double den = p.x * p.x + (p.y + 1) * (p.y + 1);
    Point3 q;
    q.model = Model::Cylinder;
    q.x = (p.x * p.x + p.y * p.y - 1.0) / den;
    q.y = -2.0 * p.x / den;
    q.t = p.t - 4.0 * tau.value * std::atan(p.x / (p.y + 1.0));
    return q;
}

Point3 to_half_space(const Point3& p, Tau tau) {
    if (p.model != Model::Cylinder)
        throw WrongModelError("to_half_space expects a cylinder point");
    require_interior(p);
    // psi(z, t) = (i(1 + z)/(1 - z), t - 4 tau arctan(y/(1-x))).
    const double den = (1.0 - p.x) * (1.0 - p.x) + p.y * p.y;
    Point3 q;
    q.model = Model::HalfSpace;
    q.x = -2.0 * p.y / den;
    q.y = (1.0 - p.x * p.x - p.y * p.y) / den;
    q.t = p.t - 4.0 * tau.value * std::atan(p.y / (1.0 - p.x));
    return q;
}

Point3 apply_isometry(const MoebiusIsometry& f, const Point3& p, Tau tau) {
    if (f.model != Model::HalfSpace || p.model != Model::HalfSpace)
        throw WrongModelError("lifted Moebius isometries act on the half-space model");
    if (std::abs(f.det() - 1.0) > kDetTol)
        throw DeterminantError("Moebius parameters must satisfy ad - bc = 1");
    require_interior(p);

    Point3 q;
    q.model = Model::HalfSpace;
    if (f.c == 0.0) {
        // Fixes the ideal point at infinity; the fiber shift is the pure gauge t0.
        q.x = (f.a * p.x + f.b) / f.d;
        q.y = p.y * f.a / f.d;
        q.t = p.t + f.t0;
        return q;
    }
    const double w = f.d + f.c * p.x;
    const double den = w * w + f.c * f.c * p.y * p.y;
    q.x = (w * (-1.0 + f.a * w) + f.a * f.c * f.c * p.y * p.y) / (f.c * den);
    q.y = p.y / den;
    q.t = p.t - 4.0 * tau.value * std::atan(w / (f.c * p.y)) + f.t0;
    return q;
}

BoundaryPt apply_isometry_boundary(const MoebiusIsometry& f, const BoundaryPt& q, Tau tau) {
    if (std::abs(f.det() - 1.0) > kDetTol)
        throw DeterminantError("Moebius parameters must satisfy ad - bc = 1");
    if (f.c == 0.0) return {(f.a * q.x + f.b) / f.d, q.t + f.t0};

    const double pole = -f.d / f.c;
    if (q.x == pole)
        throw IdealPoleError("boundary point maps to the ideal point at infinity");
    const double x = (f.a * q.x + f.b) / (f.c * q.x + f.d);
    const double jump = 2.0 * tau.value * kPi;
    return {x, q.x < pole ? q.t + jump + f.t0 : q.t - jump + f.t0};
}

std::array<double, 2> boundary_to_cylinder(double x, double t, Tau tau) {
    // Boundary trace of phi: e^{i theta} = (x - i)/(x + i).
    double theta = std::atan2(-2.0 * x, x * x - 1.0);
    if (theta < 0) theta += 2.0 * kPi;
    return {theta, t - 4.0 * tau.value * std::atan(x)};
}

std::array<double, 2> boundary_to_half_space(double theta, double t, Tau tau) {
    double th = std::fmod(theta, 2.0 * kPi);
    if (th < 0) th += 2.0 * kPi;
    if (th == 0.0)
        throw IdealPoleError("theta = 0 maps to the half-space ideal point at infinity");
    // x = -cot(theta/2); the fiber shift is -4 tau arctan(cot(theta/2)).
    const double x = -1.0 / std::tan(0.5 * th);
    return {x, t - 4.0 * tau.value * (0.5 * kPi - 0.5 * th)};
}

Point3 special_isometry(const SpecialIsometry& iso, const Point3& p) {
    return std::visit(
        [&p](const auto& m) -> Point3 {
            using T = std::decay_t<decltype(m)>;
            Point3 q = p;
            if constexpr (std::is_same_v<T, VerticalTranslation>) {
                q.t = p.t + m.t0;
            } else if constexpr (std::is_same_v<T, HyperbolicTranslation>) {
                if (p.model != Model::HalfSpace)
                    throw WrongModelError("hyperbolic translations act on the half-space model");
                if (!(m.factor > 0))
                    throw BadParameterError("hyperbolic translation factor must be positive");
                require_interior(p);
                q.x = m.axis + m.factor * (p.x - m.axis);
                q.y = m.factor * p.y;
            } else if constexpr (std::is_same_v<T, ParabolicTranslation>) {
                if (p.model != Model::HalfSpace)
                    throw WrongModelError("parabolic translations act on the half-space model");
                require_interior(p);
                q.x = p.x + m.shift;
            } else {
                static_assert(std::is_same_v<T, AxialRotation>);
                if (p.model != Model::Cylinder)
                    throw WrongModelError("axial rotations act on the cylinder model");
                const double c = std::cos(m.angle), s = std::sin(m.angle);
                q.x = c * p.x - s * p.y;
                q.y = s * p.x + c * p.y;
            }
            return q;
        },
        iso);
}

} // namespace sl2r
