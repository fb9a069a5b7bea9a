#pragma once

#include <array>
#include <functional>
#include <memory>

#include "sl2r/boundary.hpp"
#include "sl2r/support.hpp"

namespace sl2r {

// The invariant minimal-graph families over domains of the half-space model.
//   SlabBigraph(d):  u = +- sqrt(1+4 tau^2) arcsin(d y),      0 < y < 1/d
//   Tilted(d, l):    u = l x +- integral of the tilted profile, 0 < y < d
//   Fan(c):          u = u(x/y), the three regimes c > 1, c = 1, 0 < c < 1
//   Catenoid(c):     u = +- h_c(r) + 4 tau arctan(x/(y+1))
//   UmbrellaLimit(lambda): u = 4 tau arctan(x/(y+lambda))
enum class SurfaceFamily { SlabBigraph, Tilted, Fan, Catenoid, UmbrellaLimit };

struct InvariantSurface {
    SurfaceFamily family = SurfaceFamily::SlabBigraph;
    double d = 0;
    double l = 0;
    double c = 0;
    double lambda = 0;
    int sign = +1;
    Tau tau;

    static InvariantSurface slab_bigraph(double d, int sign, Tau tau);
    static InvariantSurface tilted(double d, double l, int sign, Tau tau);
    static InvariantSurface fan(double c, int sign, Tau tau);
    static InvariantSurface catenoid(double c, int sign, Tau tau);
    static InvariantSurface umbrella_limit(double lambda, Tau tau);
};

// A vertical graph u(x, y) with analytic first and second derivatives.
// near_singular flags evaluation within 1e-9 of a domain endpoint; evaluation
// still proceeds there (bigraph gluing needs endpoint access).
struct GraphFunction {
    std::function<double(double, double)> eval;
    std::function<std::array<double, 2>(double, double)> grad;   // ux, uy
    std::function<std::array<double, 3>(double, double)> hess;   // uxx, uxy, uyy
    std::function<bool(double, double)> domain;
    std::function<bool(double, double)> near_singular = [](double, double) { return false; };
};

// Cached: quadrature-backed profiles are interpolated from a per-parameter
// Chebyshev antiderivative built at construction. DirectQuadrature bypasses
// the cache (bit-exactness escape hatch for tests).
enum class EvalMode { Cached, DirectQuadrature };

GraphFunction as_graph(const InvariantSurface& surface, EvalMode mode = EvalMode::Cached);

// v_d^+(d): half the vertical gap between the asymptotic lines of the tilted
// family; equals the integral over (0, d) of sqrt(1+(l t-2 tau)^2)/sqrt(d^2-t^2).
double tilted_height(double d, double l, Tau tau);

// Height of the tall-rectangle boundary, 0 < c < 1:
// 2 * integral over (sqrt((1-c)/c), inf) of the fan profile integrand.
double fan_total_height(double c, Tau tau);

// Unique root of -3 + t^2 + c t - 4 t log t in (0, 1).
double catenoid_root(double c);

// h_c^+(1) < sqrt(1+4 tau^2) pi / 2, the catenoid half-gap.
double catenoid_neck_height(double c, Tau tau);

// 4 tau arctan(x/(y + lambda)); lambda = 0 is the isometric image of the
// slice, lambda -> inf tends to the slice itself.
double umbrella_limit(double lambda, double x, double y, Tau tau);

// Trace of the (completed) surface on the vertical asymptotic boundary of the
// half-space model, as a sampled polyline curve. Bigraph families are centered
// so that the fold sits at t = 0.
IdealBoundaryCurve asymptotic_boundary(const InvariantSurface& surface, int resolution = 65);

} // namespace sl2r
