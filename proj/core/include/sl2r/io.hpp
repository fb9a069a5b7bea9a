#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sl2r/boundary.hpp"
#include "sl2r/plateau.hpp"
#include "sl2r/surfaces.hpp"

namespace sl2r {

// Curve files: "model cylinder|half-space", then one "component [open]" block
// per component with rows "<pos> <t>"; in the half-space model a row may be
// "inf <t>" for the ideal point at infinity.
IdealBoundaryCurve read_curve_file(const std::string& path);
void write_curve(const IdealBoundaryCurve& curve, std::ostream& os);

// Polygon files: optional "origin" line, then rows "vertex <theta> <size>".
IdealPolygon read_polygon_file(const std::string& path);

// Problem files: "domain x0 x1 y0 y1", "grid nx ny", "tau v", optional
// "tol v", and one boundary line:
//   boundary family <name> [d=] [l=] [c=] [lambda=] [sign=]
//   boundary const <k>
//   boundary plane <l>
//   boundary table <file>        (rows "i j t" for every boundary node)
GridProblem read_problem_file(const std::string& path);

InvariantSurface make_surface(const std::string& family, double d, double l, double c,
                              double lambda, int sign, Tau tau);
const char* family_name(SurfaceFamily f);

struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 4>> quads;  // 0-based vertex indices
    long near_singular_samples = 0;
};

// Completed-surface mesh (both branches of a bigraph family, glued along the
// fold with shared vertices). target selects the chart of the emitted
// coordinates.
Mesh surface_mesh(const InvariantSurface& surface, Model target, int nu, int nv);
Mesh grid_mesh(const GridField& field);

void write_obj(const Mesh& mesh, std::ostream& os);
void write_solution_csv(const GridField& field, std::ostream& os);

} // namespace sl2r
