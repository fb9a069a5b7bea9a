#include "sl2r/minimality.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <json.hpp>

namespace sl2r {

namespace {

const char* family_label(SurfaceFamily f) {
    switch (f) {
        case SurfaceFamily::SlabBigraph: return "slab-bigraph";
        case SurfaceFamily::Tilted: return "tilted";
        case SurfaceFamily::Fan: return "fan";
        case SurfaceFamily::Catenoid: return "catenoid";
        case SurfaceFamily::UmbrellaLimit: return "umbrella-limit";
    }
    return "?";
}

std::string describe(const InvariantSurface& s) {
    std::string out = family_label(s.family);
    switch (s.family) {
        case SurfaceFamily::SlabBigraph: out += " d=" + format_g17(s.d); break;
        case SurfaceFamily::Tilted:
            out += " d=" + format_g17(s.d) + " l=" + format_g17(s.l);
            break;
        case SurfaceFamily::Fan: out += " c=" + format_g17(s.c); break;
        case SurfaceFamily::Catenoid: out += " c=" + format_g17(s.c); break;
        case SurfaceFamily::UmbrellaLimit: out += " lambda=" + format_g17(s.lambda); break;
    }
    out += s.sign > 0 ? " sign=+" : " sign=-";
    return out;
}

// Half-space flux of the divergence form: the fiber component of a graph
// tangent frame is p = u_x - 2 tau / y, q = u_y, and
// |Gu|^2 = y^2 (p^2 + q^2), W = sqrt(1 + |Gu|^2).
void half_space_flux(const GraphFunction& u, double x, double y, Tau tau, double& P,
                     double& Q) {
    const auto g = u.grad(x, y);
    const double p = g[0] - 2.0 * tau.value / y;
    const double q = g[1];
    const double W = std::sqrt(1.0 + y * y * (p * p + q * q));
    P = p / W;
    Q = q / W;
}

double divform_half_space(const GraphFunction& u, double x, double y, Tau tau, double h) {
    auto div_at = [&](double step) {
        double pp, pq, mp, mq, qp, qq, qm, q2;
        half_space_flux(u, x + step, y, tau, pp, pq);
        half_space_flux(u, x - step, y, tau, mp, mq);
        half_space_flux(u, x, y + step, tau, qp, qq);
        half_space_flux(u, x, y - step, tau, qm, q2);
        return (pp - mp) / (2.0 * step) + (qq - q2) / (2.0 * step);
    };
    const double d1 = div_at(h);
    const double d2 = div_at(0.5 * h);
    const double div = d2 + (d2 - d1) / 3.0;
    // div is taken with respect to the hyperbolic area element dx dy / y^2.
    return 0.5 * y * y * div;
}

// Transported graph of a cylinder graph: the model-change isometry sends the
// graph of u over the disk to the graph of
//   w -> u(base(w)) + 4 tau arctan(x_w / (y_w + 1))
// over the half-space, where base is the boundary-to-disk Moebius map.
GraphFunction transport_cylinder_graph(const GraphFunction& u, Tau tau) {
    const double tv = tau.value;
    auto base = [](double x, double y, double& cx, double& cy, double& jr, double& ji) {
        // (w - i)/(w + i) and its complex derivative 2i/(w+i)^2.
        const double den = x * x + (y + 1) * (y + 1);
        cx = (x * x + y * y - 1.0) / den;
        cy = -2.0 * x / den;
        // (w+i)^2 = (x + i(y+1))^2
        const double a = x * x - (y + 1) * (y + 1);
        const double b = 2.0 * x * (y + 1);
        const double n = a * a + b * b;
        // 2i / (a + ib) = (2b + 2ia)/n
        jr = 2.0 * b / n;
        ji = 2.0 * a / n;
    };
    GraphFunction g;
    g.eval = [u, tv, base](double x, double y) {
        double cx, cy, jr, ji;
        base(x, y, cx, cy, jr, ji);
        return u.eval(cx, cy) + 4.0 * tv * std::atan(x / (y + 1.0));
    };
    g.grad = [u, tv, base](double x, double y) {
        double cx, cy, jr, ji;
        base(x, y, cx, cy, jr, ji);
        const auto gc = u.grad(cx, cy);
        const double D = x * x + (y + 1.0) * (y + 1.0);
        // Cauchy-Riemann: dxc/dx = jr, dxc/dy = -ji, dyc/dx = ji, dyc/dy = jr.
        return std::array<double, 2>{gc[0] * jr + gc[1] * ji + 4.0 * tv * (y + 1.0) / D,
                                     -gc[0] * ji + gc[1] * jr - 4.0 * tv * x / D};
    };
    g.domain = [u, base](double x, double y) {
        if (y <= 0) return false;
        double cx, cy, jr, ji;
        base(x, y, cx, cy, jr, ji);
        return u.domain(cx, cy);
    };
    return g;
}

struct SampleBox {
    // Maps a unit-square sample to an interior point of the family's domain.
    std::function<std::array<double, 2>(double, double)> map;
};

SampleBox sample_box(const InvariantSurface& s) {
    SampleBox box;
    switch (s.family) {
        case SurfaceFamily::SlabBigraph: {
            const double ylo = std::min(1e-3, 0.1 / s.d), yhi = (1.0 - 1e-2) / s.d;
            const double y0 = std::max(ylo, 0.05 / s.d);
            box.map = [y0, yhi](double a, double b) {
                return std::array<double, 2>{-2.0 + 4.0 * a, y0 + (yhi - y0) * b};
            };
            break;
        }
        case SurfaceFamily::Tilted: {
            const double y0 = 0.05 * s.d, yhi = 0.95 * s.d;
            box.map = [y0, yhi](double a, double b) {
                return std::array<double, 2>{-2.0 + 4.0 * a, y0 + (yhi - y0) * b};
            };
            break;
        }
        case SurfaceFamily::Fan: {
            double slo;
            if (s.c > 1.0) slo = -3.0;
            else if (s.c == 1.0) slo = 0.02;
            else slo = std::sqrt((1.0 - s.c) / s.c) + 0.02;
            box.map = [slo](double a, double b) {
                const double sval = slo + 6.0 * a;
                const double y = 0.25 + 2.25 * b;
                return std::array<double, 2>{sval * y, y};
            };
            break;
        }
        case SurfaceFamily::Catenoid: {
            const double r0 = catenoid_root(s.c);
            const double rlo = r0 + 0.02 * (1.0 - r0), rhi = 0.95;
            box.map = [rlo, rhi](double a, double b) {
                const double r = rlo + (rhi - rlo) * a;
                const double th = 2.0 * kPi * b;
                // disk point sqrt(r) e^{i th} -> half-space via i(1+z)/(1-z)
                const double zx = std::sqrt(r) * std::cos(th), zy = std::sqrt(r) * std::sin(th);
                const double den = (1.0 - zx) * (1.0 - zx) + zy * zy;
                return std::array<double, 2>{-2.0 * zy / den, (1.0 - zx * zx - zy * zy) / den};
            };
            break;
        }
        case SurfaceFamily::UmbrellaLimit: {
            box.map = [](double a, double b) {
                return std::array<double, 2>{-3.0 + 6.0 * a, 0.05 + 2.95 * b};
            };
            break;
        }
    }
    return box;
}

} // namespace

std::array<double, 2> generalized_gradient(const GraphFunction& u, double x, double y,
                                           Tau tau, Model model) {
    if (!is_interior(model, x, y))
        throw BoundaryPointError("generalized gradient needs an interior point");
    const double lam = conformal_lambda(model, x, y);
    const auto g = u.grad(x, y);
    return {g[0] + tau.value * y / lam, g[1] - tau.value * x / lam};
}

double residual_eq5(const GraphFunction& u, double x, double y, Tau tau) {
    if (!(y > 0)) throw BoundaryPointError("the graph equation lives on y > 0");
    const auto g = u.grad(x, y);
    const auto h = u.hess(x, y);
    const double ux = g[0], uy = g[1];
    const double uxx = h[0], uxy = h[1], uyy = h[2];
    const double tv = tau.value;
    return y * uy * uy * uy -
           (1.0 + 4.0 * tv * tv + y * ux * (-4.0 * tv + y * ux)) * uyy +
           uy * (-2.0 * tv + y * ux) * (ux + 2.0 * y * uxy) - uxx -
           y * y * uy * uy * uxx;
}

double mean_curvature_divform(const GraphFunction& u, double x, double y, Tau tau,
                              Model model, double h) {
    if (!is_interior(model, x, y))
        throw BoundaryPointError("mean curvature needs an interior point");
    if (model == Model::HalfSpace) return divform_half_space(u, x, y, tau, h);
    // Cylinder graphs: transport through the model-change isometry, evaluate the
    // half-space operator at the image point (mean curvature is isometry-invariant).
    GraphFunction moved = transport_cylinder_graph(u, tau);
    Point3 p{x, y, 0.0, Model::Cylinder};
    Point3 w = to_half_space(p, tau);
    return divform_half_space(moved, w.x, w.y, tau, h);
}

std::string to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["surface"] = r.surface;
    j["tau"] = r.tau;
    j["n_samples"] = r.n_samples;
    j["max_residual"] = r.max_residual;
    j["max_H"] = r.max_H;
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["worst_points"] = nlohmann::ordered_json::array();
    for (const auto& w : r.worst_points)
        j["worst_points"].push_back({{"x", w.x}, {"y", w.y}, {"residual", w.residual}, {"H", w.H}});
    return j.dump(2);
}

VerificationReport verify_surface(const InvariantSurface& surface, int n_samples, double tol,
                                  int workers) {
    if (n_samples < 1) throw BadParameterError("verify_surface needs n_samples >= 1");
    GraphFunction g = as_graph(surface);
    SampleBox box = sample_box(surface);

    auto eval_chunk = [&](int begin, int end) {
        std::vector<WorstPoint> pts;
        pts.reserve(end - begin);
        for (int i = begin; i < end; ++i) {
            const auto xy = box.map(halton(i, 2), halton(i, 3));
            if (!g.domain(xy[0], xy[1])) continue;
            WorstPoint w;
            w.x = xy[0];
            w.y = xy[1];
            w.residual = std::abs(residual_eq5(g, w.x, w.y, surface.tau));
            w.H = std::abs(mean_curvature_divform(g, w.x, w.y, surface.tau, Model::HalfSpace));
            pts.push_back(w);
        }
        return pts;
    };

    std::vector<WorstPoint> all;
    if (workers <= 1) {
        all = eval_chunk(0, n_samples);
    } else {
        // Fixed chunk partition merged in index order: the aggregation is a max,
        // so the result is independent of scheduling.
        std::vector<std::future<std::vector<WorstPoint>>> futs;
        const int chunk = (n_samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int b = w * chunk, e = std::min(n_samples, b + chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, eval_chunk, b, e));
        }
        for (auto& f : futs) {
            auto part = f.get();
            all.insert(all.end(), part.begin(), part.end());
        }
    }

    VerificationReport rep;
    rep.surface = describe(surface);
    rep.tau = surface.tau.value;
    rep.n_samples = n_samples;
    rep.tol = tol;
    for (const auto& w : all) {
        rep.max_residual = std::max(rep.max_residual, w.residual);
        rep.max_H = std::max(rep.max_H, w.H);
    }
    rep.pass = rep.max_residual <= tol && rep.max_H <= std::max(tol, 1e-6);
    std::sort(all.begin(), all.end(), [](const WorstPoint& a, const WorstPoint& b) {
        return std::max(a.residual, a.H) > std::max(b.residual, b.H);
    });
    if (all.size() > 3) all.resize(3);
    rep.worst_points = std::move(all);
    return rep;
}

double verify_isometry(const std::function<Point3(const Point3&)>& map, Tau tau,
                       int n_samples) {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        Point3 p;
        p.model = Model::HalfSpace;
        p.x = -1.5 + 3.0 * halton(i, 2);
        p.y = 0.3 + 2.2 * halton(i, 3);
        p.t = -2.0 + 4.0 * halton(i, 5);

        auto jacobian = [&](double step, double J[3][3]) {
            const double dx[3] = {step, 0, 0}, dy[3] = {0, step, 0}, dt[3] = {0, 0, step};
            const double* dirs[3] = {dx, dy, dt};
            for (int k = 0; k < 3; ++k) {
                Point3 pp = p, pm = p;
                pp.x += dirs[k][0]; pp.y += dirs[k][1]; pp.t += dirs[k][2];
                pm.x -= dirs[k][0]; pm.y -= dirs[k][1]; pm.t -= dirs[k][2];
                const Point3 qp = map(pp), qm = map(pm);
                J[0][k] = (qp.x - qm.x) / (2 * step);
                J[1][k] = (qp.y - qm.y) / (2 * step);
                J[2][k] = (qp.t - qm.t) / (2 * step);
            }
        };
        double J1[3][3], J2[3][3], J[3][3];
        const double h = 1e-5;
        jacobian(h, J1);
        jacobian(0.5 * h, J2);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) J[r][c] = J2[r][c] + (J2[r][c] - J1[r][c]) / 3.0;

        const Point3 q = map(p);
        const MetricTensor gs = metric_at(p, tau);
        const MetricTensor gt = metric_at(q, tau);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                double v = 0.0;
                for (int m = 0; m < 3; ++m)
                    for (int n = 0; n < 3; ++n) v += J[m][r] * gt(m, n) * J[n][c];
                worst = std::max(worst, std::abs(v - gs(r, c)));
            }
        }
    }
    return worst;
}

} // namespace sl2r
