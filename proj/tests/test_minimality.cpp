#include <doctest.h>

#include <cmath>
#include <random>

#include "sl2r/minimality.hpp"

using namespace sl2r;

namespace {

GraphFunction constant_graph(double k) {
    GraphFunction g;
    g.eval = [k](double, double) { return k; };
    g.grad = [](double, double) { return std::array<double, 2>{0, 0}; };
    g.hess = [](double, double) { return std::array<double, 3>{0, 0, 0}; };
    g.domain = [](double, double y) { return y > 0; };
    return g;
}

GraphFunction plane_graph(double l) {
    GraphFunction g;
    g.eval = [l](double x, double) { return l * x; };
    g.grad = [l](double, double) { return std::array<double, 2>{l, 0}; };
    g.hess = [](double, double) { return std::array<double, 3>{0, 0, 0}; };
    g.domain = [](double, double y) { return y > 0; };
    return g;
}

// y^2 is not a solution; the control case for fail paths
GraphFunction ysquared_graph() {
    GraphFunction g;
    g.eval = [](double, double y) { return y * y; };
    g.grad = [](double, double y) { return std::array<double, 2>{0, 2 * y}; };
    g.hess = [](double, double) { return std::array<double, 3>{0, 0, 2}; };
    g.domain = [](double, double y) { return y > 0; };
    return g;
}

// graph with prescribed derivative values at every point; used for the
// symbolic-by-sampling reduction identities
GraphFunction jet_graph(double ux, double uy, double uxx, double uxy, double uyy) {
    GraphFunction g;
    g.eval = [](double, double) { return 0.0; };
    g.grad = [=](double, double) { return std::array<double, 2>{ux, uy}; };
    g.hess = [=](double, double) { return std::array<double, 3>{uxx, uxy, uyy}; };
    g.domain = [](double, double) { return true; };
    return g;
}

} // namespace

TEST_CASE("generalized gradient formulas") {
    auto zero = constant_graph(3.0);
    auto g0 = generalized_gradient(zero, 0.4, 0.7, Tau{0}, Model::HalfSpace);
    CHECK(g0[0] == 0.0);
    CHECK(g0[1] == 0.0);

    // constant graph over the disk: tau/lambda (y, -x)
    const double x = 0.3, y = 0.2;
    auto gc = generalized_gradient(zero, x, y, Tau{0.5}, Model::Cylinder);
    const double lam = 2.0 / (1.0 - x * x - y * y);
    CHECK(gc[0] == doctest::Approx(0.5 * y / lam));
    CHECK(gc[1] == doctest::Approx(-0.5 * x / lam));

    auto plane = plane_graph(0.8);
    auto gp = generalized_gradient(plane, 1.0, 2.0, Tau{0}, Model::HalfSpace);
    CHECK(gp[0] == doctest::Approx(0.8));
    CHECK(gp[1] == doctest::Approx(0.0));

    CHECK_THROWS_AS(generalized_gradient(zero, 0, -1, Tau{0}, Model::HalfSpace),
                    BoundaryPointError);
}

TEST_CASE("equation residual on explicit solutions") {
    for (double tv : {0.0, 0.5, 1.0}) {
        auto zero = constant_graph(0.0);
        CHECK(residual_eq5(zero, 0.3, 1.7, Tau{tv}) == 0.0);
        auto plane = plane_graph(-1.3);
        CHECK(residual_eq5(plane, -0.4, 0.6, Tau{tv}) == 0.0);
    }
    auto slab = as_graph(InvariantSurface::slab_bigraph(1.0, +1, Tau{0.5}));
    CHECK(std::abs(residual_eq5(slab, 0.5, 0.6, Tau{0.5})) < 1e-10);
    auto bad = ysquared_graph();
    CHECK(std::abs(residual_eq5(bad, 0.0, 1.0, Tau{0})) > 1e-2);
}

TEST_CASE("reduction to the y-profile equation") {
    // u(x, y) = u(y) + l x turns the equation into
    // y u'^3 - (1 + (l y - 2 tau)^2) u'' + l (l y - 2 tau) u'
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> yd(0.1, 3.0), vd(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const double y = yd(rng), l = vd(rng), up = vd(rng), upp = vd(rng), tv = vd(rng);
        auto jet = jet_graph(l, up, 0.0, 0.0, upp);
        const double full = residual_eq5(jet, 0.77, y, Tau{tv});
        const double reduced = y * up * up * up -
                               (1.0 + (l * y - 2.0 * tv) * (l * y - 2.0 * tv)) * upp +
                               l * (l * y - 2.0 * tv) * up;
        CHECK(full == doctest::Approx(reduced).epsilon(1e-12));
    }
}

TEST_CASE("reduction to the ray-profile equation") {
    // u = u(s), s = x/y: y^2 * residual = -(2 s (1+4 tau^2) u' - 6 s tau u'^2
    //   + (s^3+s) u'^3 + (1 + s^2 (1+4 tau^2)) u'')
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> yd(0.2, 2.5), sd(-3.0, 3.0), vd(-1.5, 1.5);
    for (int k = 0; k < 100; ++k) {
        const double y = yd(rng), s = sd(rng), up = vd(rng), upp = vd(rng), tv = vd(rng);
        const double K = 1.0 + 4.0 * tv * tv;
        auto jet = jet_graph(up / y, -s * up / y, upp / (y * y), -(s * upp + up) / (y * y),
                             (s * s * upp + 2.0 * s * up) / (y * y));
        const double full = residual_eq5(jet, s * y, y, Tau{tv});
        const double ray = 2.0 * s * K * up - 6.0 * s * tv * up * up +
                           (s * s * s + s) * up * up * up + (1.0 + s * s * K) * upp;
        CHECK(full * y * y == doctest::Approx(-ray).epsilon(1e-12));
    }
}

TEST_CASE("divergence-form mean curvature") {
    SUBCASE("slices and planes") {
        auto zero = constant_graph(0.0);
        CHECK(std::abs(mean_curvature_divform(zero, 0.3, 1.1, Tau{0.5}, Model::HalfSpace)) <
              1e-10);
        auto plane = plane_graph(2.0);
        CHECK(std::abs(mean_curvature_divform(plane, 0.0, 0.8, Tau{1.0}, Model::HalfSpace)) <
              1e-9);
    }
    SUBCASE("slab family vanishes, y^2 does not") {
        auto slab = as_graph(InvariantSurface::slab_bigraph(1.0, +1, Tau{0}));
        CHECK(std::abs(mean_curvature_divform(slab, 0.0, 0.5, Tau{0}, Model::HalfSpace)) < 1e-6);
        auto bad = ysquared_graph();
        CHECK(std::abs(mean_curvature_divform(bad, 0.0, 1.0, Tau{0}, Model::HalfSpace)) > 1e-2);
    }
    SUBCASE("operator consistency across the families") {
        const Tau tau{0.5};
        const std::vector<InvariantSurface> fams = {
            InvariantSurface::slab_bigraph(0.8, +1, tau),
            InvariantSurface::tilted(1.2, 0.6, -1, tau),
            InvariantSurface::fan(2.0, +1, tau),
            InvariantSurface::catenoid(10.0, -1, tau),
            InvariantSurface::umbrella_limit(0.5, tau),
        };
        for (const auto& s : fams) {
            auto g = as_graph(s);
            for (double x : {0.7, 1.9}) {
                const double y = 0.55;
                if (!g.domain(x, y) || g.near_singular(x, y)) continue;
                CHECK(std::abs(residual_eq5(g, x, y, tau)) < 1e-9);
                CHECK(std::abs(mean_curvature_divform(g, x, y, tau, Model::HalfSpace)) < 1e-7);
            }
        }
    }
    SUBCASE("cylinder graphs verified through the model change") {
        // the zero graph over the disk is the umbrella through the center
        auto zero = constant_graph(0.0);
        CHECK(std::abs(mean_curvature_divform(zero, 0.2, 0.1, Tau{0.5}, Model::Cylinder)) <
              1e-7);
    }
}

TEST_CASE("verify_surface report") {
    auto rep = verify_surface(InvariantSurface::slab_bigraph(1.0, +1, Tau{0.5}), 200, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.max_residual < 1e-10);
    CHECK(rep.n_samples == 200);
    CHECK(rep.worst_points.size() == 3);

    auto cat = verify_surface(InvariantSurface::catenoid(10.0, +1, Tau{0.5}), 200, 1e-6);
    CHECK(cat.pass);

    const std::string doc = to_json(rep);
    CHECK(doc.find("\"pass\": true") != std::string::npos);
    CHECK(doc.find("max_residual") != std::string::npos);

    // parallel evaluation is a pure max-reduction: identical results
    auto rep4 = verify_surface(InvariantSurface::slab_bigraph(1.0, +1, Tau{0.5}), 200, 1e-8, 4);
    CHECK(rep4.max_residual == rep.max_residual);
    CHECK(rep4.max_H == rep.max_H);
}

TEST_CASE("verify_isometry") {
    const Tau tau{0.5};
    SUBCASE("identity is exact") {
        CHECK(verify_isometry([](const Point3& p) { return p; }, tau, 20) < 1e-12);
    }
    SUBCASE("model-change maps") {
        CHECK(verify_isometry([tau](const Point3& p) { return to_cylinder(p, tau); }, tau, 60) <
              1e-7);
    }
    SUBCASE("lifted Moebius maps") {
        MoebiusIsometry f{0, -1, 1, 1, 0, Model::HalfSpace};
        CHECK(verify_isometry(
                  [&](const Point3& p) { return apply_isometry(f, p, Tau{0.5}); }, Tau{0.5},
                  60) < 1e-7);
    }
    SUBCASE("a horizontal stretch is not an isometry") {
        auto stretch = [](const Point3& p) { return Point3{2 * p.x, p.y, p.t, p.model}; };
        CHECK(verify_isometry(stretch, tau, 20) > 1e-1);
    }
}
