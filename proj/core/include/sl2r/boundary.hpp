#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl2r/geometry.hpp"
#include "sl2r/support.hpp"

namespace sl2r {

// Vertex of a piecewise-linear curve in the vertical asymptotic boundary.
// pos is the angle theta in [0, 2 pi) (cylinder model) or the x coordinate
// (half-space model). The half-space ideal point at infinity is the sentinel
// at_inf = true; pos is ignored there.
struct CurveVertex {
    double pos = 0;
    double t = 0;
    bool at_inf = false;
};

// One closed polyline. Cylinder segments span the shorter angular arc between
// consecutive vertices (strictly less than pi); equal angles give a vertical
// segment. Half-space segments are linear in x; a segment with one endpoint at
// infinity is traversed at the constant height of its finite endpoint, and a
// segment with both endpoints at infinity is a vertical segment in the fiber
// of the ideal point.
struct CurveComponent {
    std::vector<CurveVertex> vertices;
    // Closed components connect the last vertex back to the first. Open ones
    // arise from traces whose closure leaves the vertical boundary and from
    // transported curves split at the exceptional ideal point.
    bool closed = true;
};

struct IdealBoundaryCurve {
    Model model = Model::Cylinder;
    std::vector<CurveComponent> components;
};

// Checks closedness conventions, per-segment angular spans, simplicity of each
// component and pairwise disjointness. Throws InvalidCurve on failure.
void validate_curve(const IdealBoundaryCurve& curve);

// h_Gamma(p): length of the shortest bounded component of the fiber over p
// minus the curve; +inf when the fiber meets the curve at most once. A
// vertical segment of the curve inside the fiber counts as part of the curve.
double height_function(const IdealBoundaryCurve& curve, double p);
// Height over the half-space ideal point at infinity (sentinel fiber).
double height_at_infinity(const IdealBoundaryCurve& curve);

struct TallnessReport {
    bool tall = false;
    double inf_height = 0;  // exact infimum over all fibers (may be +inf)
    double threshold = 0;   // sqrt(1 + 4 tau^2) pi
    double worst_pos = 0;   // a fiber attaining (or limiting) the infimum
};

TallnessReport tallness(const IdealBoundaryCurve& curve, Tau tau);
bool is_tall(const IdealBoundaryCurve& curve, Tau tau);

// Hypothesis search for the vertical-line non-existence criterion: a subarc
// touching a vertical line from one side, endpoints off the line, inside an
// open slab of height sqrt(1 + 4 tau^2) pi.
struct Theorem12Report {
    bool witness_found = false;
    double line_x = 0;
    int side = 0;  // -1: subarc in {x <= line_x}, +1: subarc in {x >= line_x}
    int component = -1;
    double t0 = 0;          // slab base of the witness
    double touch_extent = 0;  // vertical extent of the touch set
    long candidates_checked = 0;
    std::string note;
};

Theorem12Report check_theorem12_hypotheses(const IdealBoundaryCurve& curve, Tau tau);

// Existence of an open fiber interval on which h_Gamma stays below the
// threshold; returns a maximal such interval.
struct Theorem13Result {
    bool holds = false;
    double lo = 0, hi = 0;  // open interval (lo, hi), positions mod 2 pi
    bool full_circle = false;
};

Theorem13Result check_theorem13_hypothesis(const IdealBoundaryCurve& curve, Tau tau);

enum class TransportDir { HalfToCyl, CylToHalf };

// Transports a boundary curve through the boundary extension of the
// model-change isometry, resampling each segment `resolution` times. Curves
// through the exceptional ideal point are split/closed there: the image gains
// the 4 tau pi vertical jump segment at the image of infinity.
IdealBoundaryCurve transport_boundary(const IdealBoundaryCurve& curve, TransportDir dir,
                                      Tau tau, int resolution);

// Ideal polygon for the alternating-data Dirichlet conditions: cyclically
// ordered ideal vertices (angles on the circle), one horocycle size per ideal
// vertex (Euclidean diameter in the disk model), optionally with the origin as
// an interior polygon vertex; edges alternate A, B, A, B, ... starting from
// the edge leaving the origin (or the first ideal vertex).
struct IdealPolygon {
    bool has_origin = true;
    std::vector<double> theta;      // strictly increasing cyclic order
    std::vector<double> horocycle;  // same length, values in (0, 1)
};

void validate_polygon(const IdealPolygon& poly);

struct JenkinsSerrinReport {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    bool balanced = false;
    bool strict = false;
    double worst_margin = 0;          // min over proper inscribed P of gamma(P) - 2 max(alpha(P), beta(P))
    std::string worst_inscribed;      // vertex list of the minimizer
    long inscribed_checked = 0;
};

JenkinsSerrinReport jenkins_serrin_check(const IdealPolygon& poly);

// Truncated hyperbolic length of the geodesic between two ideal points of the
// disk, outside horodisks of the given Euclidean diameters. Closed form: map
// the endpoints to 0 and infinity in the upper half-plane, where the horoballs
// become {y < s_0} and {y > h_inf} and the length is log(h_inf / s_0).
double ideal_edge_length(double theta_a, double size_a, double theta_b, double size_b);
// Distance from the disk origin to the horodisk at an ideal point:
// log((2 - s)/s).
double origin_edge_length(double size);

} // namespace sl2r
