#include "sl2r/io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "sl2r/geometry.hpp"

namespace sl2r {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected a number for ") + what + ", got '" + s + "'");
    }
}

} // namespace

IdealBoundaryCurve read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve file " + path);
    IdealBoundaryCurve curve;
    bool model_set = false;
    std::string line;
    CurveComponent* current = nullptr;
    while (std::getline(in, line)) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "model") {
            if (tok.size() != 2) throw ParseError("model line needs one argument");
            if (tok[1] == "cylinder") curve.model = Model::Cylinder;
            else if (tok[1] == "half-space") curve.model = Model::HalfSpace;
            else throw ParseError("unknown model '" + tok[1] + "'");
            model_set = true;
        } else if (tok[0] == "component") {
            curve.components.emplace_back();
            current = &curve.components.back();
            current->closed = !(tok.size() > 1 && tok[1] == "open");
        } else {
            if (!current) throw ParseError("vertex row before any 'component' line");
            if (tok.size() != 2) throw ParseError("vertex rows are '<pos> <t>'");
            CurveVertex v;
            if (tok[0] == "inf") {
                if (curve.model != Model::HalfSpace)
                    throw ParseError("'inf' vertices exist only in the half-space model");
                v.at_inf = true;
            } else {
                v.pos = parse_double(tok[0], "vertex position");
            }
            v.t = parse_double(tok[1], "vertex height");
            current->vertices.push_back(v);
        }
    }
    if (!model_set) throw ParseError("curve file is missing a 'model' line");
    if (curve.components.empty()) throw ParseError("curve file has no components");
    return curve;
}

void write_curve(const IdealBoundaryCurve& curve, std::ostream& os) {
    os << "model " << (curve.model == Model::Cylinder ? "cylinder" : "half-space") << "\n";
    for (const auto& comp : curve.components) {
        os << "component" << (comp.closed ? "" : " open") << "\n";
        for (const auto& v : comp.vertices) {
            if (v.at_inf) os << "inf " << format_g17(v.t) << "\n";
            else os << format_g17(v.pos) << " " << format_g17(v.t) << "\n";
        }
    }
}

IdealPolygon read_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open polygon file " + path);
    IdealPolygon poly;
    poly.has_origin = false;
    std::string line;
    while (std::getline(in, line)) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "origin") {
            poly.has_origin = true;
        } else if (tok[0] == "vertex") {
            if (tok.size() != 3) throw ParseError("vertex rows are 'vertex <theta> <size>'");
            poly.theta.push_back(parse_double(tok[1], "vertex angle"));
            poly.horocycle.push_back(parse_double(tok[2], "horocycle size"));
        } else {
            throw ParseError("unknown polygon directive '" + tok[0] + "'");
        }
    }
    return poly;
}

InvariantSurface make_surface(const std::string& family, double d, double l, double c,
                              double lambda, int sign, Tau tau) {
    if (family == "slab-bigraph") return InvariantSurface::slab_bigraph(d, sign, tau);
    if (family == "tilted") return InvariantSurface::tilted(d, l, sign, tau);
    if (family == "fan") return InvariantSurface::fan(c, sign, tau);
    if (family == "catenoid") return InvariantSurface::catenoid(c, sign, tau);
    if (family == "umbrella-limit") return InvariantSurface::umbrella_limit(lambda, tau);
    throw BadParameterError("unknown family '" + family + "'");
}

const char* family_name(SurfaceFamily f) {
    switch (f) {
        case SurfaceFamily::SlabBigraph: return "slab-bigraph";
        case SurfaceFamily::Tilted: return "tilted";
        case SurfaceFamily::Fan: return "fan";
        case SurfaceFamily::Catenoid: return "catenoid";
        case SurfaceFamily::UmbrellaLimit: return "umbrella-limit";
    }
    return "?";
}

GridProblem read_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file " + path);
    GridProblem prob;
    bool have_domain = false, have_grid = false;
    std::vector<std::string> boundary_tok;
    std::string line;
    while (std::getline(in, line)) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "domain") {
            if (tok.size() != 5) throw ParseError("domain line is 'domain x0 x1 y0 y1'");
            prob.x0 = parse_double(tok[1], "x0");
            prob.x1 = parse_double(tok[2], "x1");
            prob.y0 = parse_double(tok[3], "y0");
            prob.y1 = parse_double(tok[4], "y1");
            have_domain = true;
        } else if (tok[0] == "grid") {
            if (tok.size() != 3) throw ParseError("grid line is 'grid nx ny'");
            prob.nx = static_cast<int>(parse_double(tok[1], "nx"));
            prob.ny = static_cast<int>(parse_double(tok[2], "ny"));
            have_grid = true;
        } else if (tok[0] == "tau") {
            if (tok.size() != 2) throw ParseError("tau line is 'tau <value>'");
            prob.tau = Tau{parse_double(tok[1], "tau")};
        } else if (tok[0] == "boundary") {
            if (tok.size() < 2) throw ParseError("boundary line needs a kind");
            boundary_tok = tok;
        } else {
            throw ParseError("unknown problem directive '" + tok[0] + "'");
        }
    }
    if (!have_domain || !have_grid || boundary_tok.empty())
        throw ParseError("problem file needs domain, grid and boundary lines");

    // Boundary construction happens after the whole file is read, so tau and
    // the grid geometry are known regardless of line order.
    const auto& tok = boundary_tok;
    if (tok[1] == "const") {
        const double k = parse_double(tok.at(2), "constant");
        prob.boundary = [k](double, double) { return k; };
    } else if (tok[1] == "plane") {
        const double l = parse_double(tok.at(2), "slope");
        prob.boundary = [l](double x, double) { return l * x; };
    } else if (tok[1] == "family") {
        if (tok.size() < 3) throw ParseError("boundary family needs a name");
        double d = 1, l = 0, c = 2, lambda = 0;
        int sign = +1;
        for (size_t i = 3; i < tok.size(); ++i) {
            const auto eq = tok[i].find('=');
            if (eq == std::string::npos) throw ParseError("family parameters look like d=1");
            const std::string key = tok[i].substr(0, eq);
            const std::string val = tok[i].substr(eq + 1);
            if (key == "d") d = parse_double(val, "d");
            else if (key == "l") l = parse_double(val, "l");
            else if (key == "c") c = parse_double(val, "c");
            else if (key == "lambda") lambda = parse_double(val, "lambda");
            else if (key == "sign") sign = (val == "-" || val == "-1") ? -1 : +1;
            else throw ParseError("unknown family parameter '" + key + "'");
        }
        InvariantSurface s = make_surface(tok[2], d, l, c, lambda, sign, prob.tau);
        auto g = std::make_shared<GraphFunction>(as_graph(s));
        prob.boundary = [g](double x, double y) { return g->eval(x, y); };
    } else if (tok[1] == "table") {
        if (tok.size() != 3) throw ParseError("boundary table needs a file path");
        auto table = std::make_shared<std::map<std::pair<long, long>, double>>();
        std::ifstream tin(tok[2]);
        if (!tin) throw ParseError("cannot open boundary table " + tok[2]);
        std::string row;
        while (std::getline(tin, row)) {
            auto rt = tokens(row);
            if (rt.empty()) continue;
            if (rt.size() != 3) throw ParseError("table rows are 'i j t'");
            (*table)[{static_cast<long>(parse_double(rt[0], "i")),
                      static_cast<long>(parse_double(rt[1], "j"))}] = parse_double(rt[2], "t");
        }
        const double x0 = prob.x0, y0 = prob.y0;
        const double hx = (prob.x1 - prob.x0) / (prob.nx - 1);
        const double hy = (prob.y1 - prob.y0) / (prob.ny - 1);
        prob.boundary = [table, x0, y0, hx, hy](double x, double y) {
            const long i = std::lround((x - x0) / hx);
            const long j = std::lround((y - y0) / hy);
            auto it = table->find({i, j});
            if (it == table->end())
                throw BadBoundaryError("boundary table is missing node " + std::to_string(i) +
                                       "," + std::to_string(j));
            return it->second;
        };
    } else {
        throw ParseError("unknown boundary kind '" + tok[1] + "'");
    }
    return prob;
}

namespace {

// Watertight vertex pool keyed by exact bit patterns; patches that evaluate
// shared edges to identical doubles get shared vertices.
class VertexPool {
public:
    explicit VertexPool(Mesh& mesh) : mesh_(mesh) {}
    int add(double x, double y, double t) {
        const std::array<double, 3> key{x, y, t};
        auto [it, fresh] = index_.try_emplace(key, static_cast<int>(mesh_.vertices.size()));
        if (fresh) mesh_.vertices.push_back(key);
        return it->second;
    }

private:
    Mesh& mesh_;
    std::map<std::array<double, 3>, int> index_;
};

// Adds the quad grid of a parametric patch (u, v) -> (x, y, t).
void add_patch(Mesh& mesh, VertexPool& pool, int nu, int nv,
               const std::function<std::array<double, 3>(int, int)>& corner) {
    std::vector<int> ids(static_cast<size_t>(nu) * nv);
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            const auto p = corner(i, j);
            ids[static_cast<size_t>(j) * nu + i] = pool.add(p[0], p[1], p[2]);
        }
    for (int j = 0; j + 1 < nv; ++j)
        for (int i = 0; i + 1 < nu; ++i) {
            const int a = ids[static_cast<size_t>(j) * nu + i];
            const int b = ids[static_cast<size_t>(j) * nu + i + 1];
            const int c = ids[static_cast<size_t>(j + 1) * nu + i + 1];
            const int d = ids[static_cast<size_t>(j + 1) * nu + i];
            if (a == b || b == c || c == d || d == a) continue;  // collapsed edge
            mesh.quads.push_back({a, b, c, d});
        }
}

} // namespace

Mesh surface_mesh(const InvariantSurface& s, Model target, int nu, int nv) {
    if (nu < 2 || nv < 2) throw BadParameterError("mesh needs at least 2 x 2 samples");
    Mesh mesh;
    VertexPool pool(mesh);
    const double tv = s.tau.value;
    const double k = tau_factor(s.tau);
    const double X = 4.0;
    GraphFunction g = as_graph(s);
    long near_singular = 0;

    auto emit = [&](double x, double y, double t) -> std::array<double, 3> {
        if (g.near_singular && g.near_singular(x, y)) ++near_singular;
        if (target == Model::Cylinder) {
            Point3 q = to_cylinder({x, y, t, Model::HalfSpace}, s.tau);
            return {q.x, q.y, q.t};
        }
        return {x, y, t};
    };

    switch (s.family) {
        case SurfaceFamily::SlabBigraph: {
            // Completed bigraph centered at the fold: t = sgn (k pi/2 - k asin(d y)).
            const double ymin = 1e-3 / s.d;
            for (int sgn : {+1, -1}) {
                add_patch(mesh, pool, nu, nv, [&](int i, int j) {
                    const double x = -X + 2.0 * X * i / (nu - 1);
                    const double y = ymin + (1.0 / s.d - ymin) * j / (nv - 1);
                    const double t = sgn * (k * 0.5 * kPi - k * std::asin(std::min(s.d * y, 1.0)));
                    return emit(x, y, t);
                });
            }
            break;
        }
        case SurfaceFamily::Tilted: {
            const double vh = tilted_height(s.d, s.l, s.tau);
            GraphFunction plus = as_graph(InvariantSurface::tilted(s.d, s.l, +1, s.tau));
            const double ymin = 1e-3 * s.d;
            for (int sgn : {+1, -1}) {
                add_patch(mesh, pool, nu, nv, [&](int i, int j) {
                    const double x = -X + 2.0 * X * i / (nu - 1);
                    const double y = ymin + (s.d - ymin) * j / (nv - 1);
                    const double profile = plus.eval(0.0, std::min(y, s.d)) ;
                    const double t = s.l * x + sgn * (vh - profile);
                    return emit(x, y, t);
                });
            }
            break;
        }
        case SurfaceFamily::Fan: {
            const double s0 = s.c < 1.0 ? std::sqrt((1.0 - s.c) / s.c) : (s.c == 1.0 ? 1e-3 : -8.0);
            const double s1 = s0 + 12.0;
            const double ymin = 0.05, ymax = 3.0;
            std::vector<int> signs = s.c < 1.0 ? std::vector<int>{+1, -1} : std::vector<int>{s.sign};
            for (int sgn : signs) {
                GraphFunction gg = as_graph(InvariantSurface::fan(s.c, sgn, s.tau));
                add_patch(mesh, pool, nu, nv, [&](int i, int j) {
                    const double sv = s0 + (s1 - s0) * i / (nu - 1);
                    const double y = ymin + (ymax - ymin) * j / (nv - 1);
                    const double x = sv * y;
                    return emit(x, y, gg.eval(x, y));
                });
            }
            break;
        }
        case SurfaceFamily::Catenoid: {
            const double r0 = catenoid_root(s.c);
            const double rmax = 1.0 - 1e-3;
            for (int sgn : {+1, -1}) {
                GraphFunction gg = as_graph(InvariantSurface::catenoid(s.c, sgn, s.tau));
                add_patch(mesh, pool, nu, nv, [&](int i, int j) {
                    const double r = r0 + (rmax - r0) * j / (nv - 1);
                    // i and i mod (nu-1) give bitwise-equal seam columns
                    const double th = 2.0 * kPi * (i % (nu - 1)) / (nu - 1);
                    // disk point sqrt(r) e^{i th} -> half-space
                    const double zx = std::sqrt(r) * std::cos(th);
                    const double zy = std::sqrt(r) * std::sin(th);
                    const double den = (1.0 - zx) * (1.0 - zx) + zy * zy;
                    const double x = -2.0 * zy / den;
                    const double y = (1.0 - zx * zx - zy * zy) / den;
                    return emit(x, y, gg.eval(x, y));
                });
            }
            break;
        }
        case SurfaceFamily::UmbrellaLimit: {
            add_patch(mesh, pool, nu, nv, [&](int i, int j) {
                const double x = -X + 2.0 * X * i / (nu - 1);
                const double y = 0.02 + 3.0 * static_cast<double>(j) / (nv - 1);
                return emit(x, y, 4.0 * tv * std::atan2(x, y + s.lambda));
            });
            break;
        }
    }
    mesh.near_singular_samples = near_singular;
    return mesh;
}

Mesh grid_mesh(const GridField& f) {
    Mesh mesh;
    VertexPool pool(mesh);
    add_patch(mesh, pool, f.nx(), f.ny(), [&](int i, int j) {
        return std::array<double, 3>{f.node_x(i), f.node_y(j), f.at(i, j)};
    });
    return mesh;
}

void write_obj(const Mesh& mesh, std::ostream& os) {
    for (const auto& v : mesh.vertices)
        os << "v " << format_g17(v[0]) << " " << format_g17(v[1]) << " " << format_g17(v[2])
           << "\n";
    for (const auto& q : mesh.quads)
        os << "f " << q[0] + 1 << " " << q[1] + 1 << " " << q[2] + 1 << " " << q[3] + 1 << "\n";
}

void write_solution_csv(const GridField& f, std::ostream& os) {
    os << "x,y,u\n";
    for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx(); ++i)
            os << format_g17(f.node_x(i)) << "," << format_g17(f.node_y(j)) << ","
               << format_g17(f.at(i, j)) << "\n";
}

} // namespace sl2r
