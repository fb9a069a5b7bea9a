#pragma once

#include <array>
#include <variant>

#include "sl2r/errors.hpp"
#include "sl2r/support.hpp"

namespace sl2r {

// Coordinate models of the ambient space. Both carry the metric
//   g = lambda^2 (dx^2 + dy^2) + (2 tau (lambda_y/lambda dx - lambda_x/lambda dy) + dt)^2
// with lambda = 1/y (half-space) or lambda = 2/(1 - x^2 - y^2) (cylinder).
enum class Model { HalfSpace, Cylinder };

struct Point3 {
    double x = 0, y = 0, t = 0;
    Model model = Model::HalfSpace;
};

double conformal_lambda(Model model, double x, double y);
bool is_interior(Model model, double x, double y);
void require_interior(const Point3& p);

// Symmetric 3x3 metric in the coordinate basis (dx, dy, dt).
class MetricTensor {
public:
    double& operator()(int i, int j) { return m_[i * 3 + j]; }
    double operator()(int i, int j) const { return m_[i * 3 + j]; }
    std::array<double, 9>& data() { return m_; }
    const std::array<double, 9>& data() const { return m_; }

private:
    std::array<double, 9> m_{};
};

MetricTensor metric_at(const Point3& p, Tau tau);

// Metric in polar coordinates (r, theta, t) of the cylinder model:
// ds^2 = dr^2 + sinh^2(r) dtheta^2 + (-4 tau sinh^2(r/2) dtheta + dt)^2.
MetricTensor polar_metric_at(double r, double theta, Tau tau);

// Model-change isometries phi (half-space -> cylinder) and psi (inverse).
Point3 to_cylinder(const Point3& p, Tau tau);
Point3 to_half_space(const Point3& p, Tau tau);

// Lifted Moebius isometry: the positive isometry z -> (az+b)/(cz+d) of the
// hyperbolic base, lifted to the total space with vertical gauge t0.
struct MoebiusIsometry {
    double a = 1, b = 0, c = 0, d = 1;
    double t0 = 0;
    Model model = Model::HalfSpace;

    double det() const { return a * d - b * c; }
    static MoebiusIsometry identity() { return {}; }
};

Point3 apply_isometry(const MoebiusIsometry& f, const Point3& p, Tau tau);

// A point of the vertical asymptotic boundary {y = 0} of the half-space model.
struct BoundaryPt {
    double x = 0;
    double t = 0;
};

// Boundary extension of a lifted Moebius isometry. Has a jump discontinuity of
// size 4 tau pi across x = -d/c; the pole itself maps to the ideal point at
// infinity and raises IdealPole.
BoundaryPt apply_isometry_boundary(const MoebiusIsometry& f, const BoundaryPt& q, Tau tau);

// Boundary extensions of the model-change maps. The half-space ideal point at
// infinity corresponds to theta = 0 on the cylinder; callers must handle it
// through the sentinel machinery of the curve module, never as a large float.
// theta is returned in [0, 2 pi).
std::array<double, 2> boundary_to_cylinder(double x, double t, Tau tau);
// Throws IdealPole at theta = 0 (the image would be the point at infinity).
std::array<double, 2> boundary_to_half_space(double theta, double t, Tau tau);

// Easily written isometries of the space.
struct VerticalTranslation { double t0 = 0; };
// (x, y, t) -> (c + factor (x - c), factor y, t) along the geodesic {x = axis}.
struct HyperbolicTranslation { double axis = 0; double factor = 1; };
struct ParabolicTranslation { double shift = 0; };
// Euclidean rotation about the t-axis of the cylinder model.
struct AxialRotation { double angle = 0; };

using SpecialIsometry =
    std::variant<VerticalTranslation, HyperbolicTranslation, ParabolicTranslation, AxialRotation>;

Point3 special_isometry(const SpecialIsometry& iso, const Point3& p);

} // namespace sl2r
