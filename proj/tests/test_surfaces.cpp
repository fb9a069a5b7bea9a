#include <doctest.h>

#include <cmath>

#include "sl2r/numerics.hpp"
#include "sl2r/surfaces.hpp"

using namespace sl2r;

namespace {

// Independent midpoint-rule oracle on a substituted integrand; the library
// path is Gauss-Kronrod, this one is deliberately naive.
double midpoint(const std::function<double(double)>& f, double a, double b, long n) {
    double s = 0.0;
    const double h = (b - a) / n;
    for (long i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

// integral over (s0, inf) of the fan integrand, by w = sqrt(t - s0) up to
// s0 + 25 and a tangent substitution past it
double fan_height_oracle(double c, double tv) {
    const double s0 = std::sqrt((1.0 - c) / c);
    const double K = 1.0 + 4.0 * tv * tv;
    auto q = [&](double t) {
        return std::sqrt(1.0 + K * t * t) /
               ((t * t + 1.0) * std::sqrt(c * (t - s0) * (t + s0)));
    };
    auto qw = [&](double w) {
        const double t = s0 + w * w;
        return 2.0 * std::sqrt(1.0 + K * t * t) /
               ((t * t + 1.0) * std::sqrt(c) * std::sqrt(t + s0));
    };
    const double head = midpoint(qw, 0.0, 5.0, 400000);
    auto tail = [&](double phi) {
        const double t = s0 + 25.0 + std::tan(phi);
        const double cc = std::cos(phi);
        return q(t) / (cc * cc);
    };
    return 2.0 * (head + midpoint(tail, 0.0, kPi / 2, 400000));
}

double catenoid_neck_oracle(double c, double tv) {
    const double r0 = catenoid_root(c);
    auto g = [&](double t) { return -3.0 + t * t + c * t - 4.0 * t * std::log(t); };
    auto pw = [&](double w) {
        const double t = r0 + w * w;
        return 2.0 * w * std::sqrt(1.0 + 4.0 * t * tv * tv) / std::sqrt(t * g(t));
    };
    return midpoint(pw, 0.0, std::sqrt(1.0 - r0), 400000);
}

} // namespace

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(InvariantSurface::slab_bigraph(-1, +1, Tau{0}), BadParameterError);
    CHECK_THROWS_AS(InvariantSurface::slab_bigraph(1, 2, Tau{0}), BadParameterError);
    CHECK_THROWS_AS(InvariantSurface::fan(0, +1, Tau{0}), BadParameterError);
    CHECK_THROWS_AS(InvariantSurface::catenoid(1.5, +1, Tau{0}), BadParameterError);
    CHECK_THROWS_AS(InvariantSurface::umbrella_limit(-0.5, Tau{0}), BadParameterError);
}

TEST_CASE("slab bigraph closed form") {
    auto g = as_graph(InvariantSurface::slab_bigraph(1, +1, Tau{0}));
    CHECK(g.eval(0, 0.5) == doctest::Approx(kPi / 6).epsilon(1e-14));  // arcsin(1/2)
    CHECK(g.domain(0, 0.5));
    CHECK_FALSE(g.domain(0, 1.5));
    CHECK(g.near_singular(0, 1.0 - 1e-10));
    CHECK_FALSE(g.near_singular(0, 0.5));
}

TEST_CASE("tilted coincides with the slab family when the slope vanishes") {
    const Tau tau{0.5};
    auto tilt = as_graph(InvariantSurface::tilted(1.0, 0.0, +1, tau));
    auto slab = as_graph(InvariantSurface::slab_bigraph(1.0, +1, tau));
    for (double y : {0.05, 0.3, 0.5, 0.77, 0.95})
        for (double x : {-1.0, 0.0, 2.0})
            CHECK(tilt.eval(x, y) == doctest::Approx(slab.eval(x, y)).epsilon(1e-10));
    // v(0, 1/2) = sqrt(2) arcsin(1/2)
    CHECK(tilt.eval(0, 0.5) == doctest::Approx(std::sqrt(2.0) * kPi / 6).epsilon(1e-12));
}

TEST_CASE("cached evaluation matches direct quadrature") {
    const Tau tau{0.5};
    for (const auto& s :
         {InvariantSurface::tilted(1.0, 1.0, +1, tau), InvariantSurface::fan(2.0, +1, tau),
          InvariantSurface::fan(1.0, -1, tau), InvariantSurface::fan(0.5, +1, tau),
          InvariantSurface::catenoid(10.0, +1, tau)}) {
        auto cached = as_graph(s, EvalMode::Cached);
        auto direct = as_graph(s, EvalMode::DirectQuadrature);
        int tested = 0;
        for (double y : {0.2, 0.6, 1.1})
            for (double x : {0.4, 1.0, 2.5}) {
                if (!cached.domain(x, y)) continue;
                CHECK(cached.eval(x, y) == doctest::Approx(direct.eval(x, y)).epsilon(1e-11));
                ++tested;
            }
        CHECK(tested > 3);
    }
}

TEST_CASE("analytic derivatives agree with finite differences") {
    const Tau tau{0.5};
    const double h = 1e-4;
    const std::vector<InvariantSurface> families = {
        InvariantSurface::slab_bigraph(1.0, +1, tau),
        InvariantSurface::tilted(1.0, -1.0, +1, tau),
        InvariantSurface::fan(2.0, +1, tau),
        InvariantSurface::fan(0.5, -1, tau),
        InvariantSurface::catenoid(10.0, +1, tau),
        InvariantSurface::umbrella_limit(1.0, tau),
    };
    const std::vector<std::pair<double, double>> probes = {
        {0.5, 0.45}, {1.2, 0.3}, {2.0, 0.8}};
    for (const auto& s : families) {
        auto g = as_graph(s);
        for (auto [x, y] : probes) {
            if (!g.domain(x, y) || g.near_singular(x, y)) continue;
            auto fd = fd_derivatives(g.eval, x, y, h);
            auto gr = g.grad(x, y);
            auto he = g.hess(x, y);
            CHECK(gr[0] == doctest::Approx(fd.ux).epsilon(1e-6));
            CHECK(gr[1] == doctest::Approx(fd.uy).epsilon(1e-6));
            CHECK(he[0] == doctest::Approx(fd.uxx).epsilon(1e-4));
            CHECK(he[1] == doctest::Approx(fd.uxy).epsilon(1e-4));
            CHECK(he[2] == doctest::Approx(fd.uyy).epsilon(1e-4));
        }
    }
}

TEST_CASE("the degenerate fan pair: a slice and its inverted image") {
    const Tau tau{0.5};
    const double c = (1.0 + 4.0 * tau.value * tau.value) / (4.0 * tau.value * tau.value);
    auto minus = as_graph(InvariantSurface::fan(c, -1, tau));
    auto plus = as_graph(InvariantSurface::fan(c, +1, tau));
    for (double y : {0.3, 1.0})
        for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            CHECK(minus.eval(x, y) == doctest::Approx(0.0).epsilon(1e-11));
            CHECK(plus.eval(x, y) ==
                  doctest::Approx(4.0 * tau.value * std::atan(x / y)).epsilon(1e-11));
        }
}

TEST_CASE("tilted height identities and bounds") {
    // l = 0: closed form sqrt(1+4 tau^2) pi/2
    for (double d : {0.5, 1.0, 2.0})
        for (double tv : {0.0, 0.5, 1.0})
            CHECK(tilted_height(d, 0.0, Tau{tv}) ==
                  doctest::Approx(std::sqrt(1.0 + 4.0 * tv * tv) * kPi / 2).epsilon(1e-10));

    // frozen reference for (d, l, tau) = (1, -1, 1/2)
    const double v = tilted_height(1.0, -1.0, Tau{0.5});
    CHECK(v == doctest::Approx(3.02436347183562).epsilon(1e-10));
    CHECK(v >= std::sqrt(2.0) * kPi / 2);
    CHECK(v <= std::sqrt(1.0 + 4.0) * kPi / 2);
}

TEST_CASE("height bounds for opposite-sign and small tilt") {
    // l tau <= 0: sqrt(1+4tau^2) pi/2 <= v <= sqrt(1+(l d-2 tau)^2) pi/2
    for (double tv : {0.25, 0.5, 1.0}) {
        for (double l : {-2.0, -0.5, 0.0}) {
            for (double d : {0.4, 1.0, 2.2}) {
                const double v = tilted_height(d, l, Tau{tv});
                const double lo = std::sqrt(1.0 + 4.0 * tv * tv) * kPi / 2;
                const double hi =
                    std::sqrt(1.0 + (l * d - 2.0 * tv) * (l * d - 2.0 * tv)) * kPi / 2;
                CHECK(v >= lo - 1e-9);
                CHECK(v <= hi + 1e-9);
            }
        }
    }
    // 0 < l tau < 4 tau^2 / d: v <= sqrt(1+4 tau^2) pi/2
    for (double tv : {0.5, 1.0}) {
        for (double d : {0.5, 1.0, 2.0}) {
            const double lmax = 4.0 * tv / d;  // l < 4 tau / d
            for (double frac : {0.2, 0.6, 0.95}) {
                const double l = frac * lmax;
                CHECK(tilted_height(d, l, Tau{tv}) <=
                      std::sqrt(1.0 + 4.0 * tv * tv) * kPi / 2 + 1e-9);
            }
        }
    }
    // |l d| < 2 |tau| with l tau > 0: v >= sqrt(1+(l d - 2 tau)^2) pi/2
    for (double tv : {0.5, 1.0}) {
        for (double d : {0.5, 1.0, 2.0}) {
            for (double frac : {0.2, 0.6, 0.95}) {
                const double l = frac * 2.0 * tv / d;
                const double bound =
                    std::sqrt(1.0 + (l * d - 2.0 * tv) * (l * d - 2.0 * tv)) * kPi / 2;
                CHECK(tilted_height(d, l, Tau{tv}) >= bound - 1e-9);
            }
        }
    }
}

TEST_CASE("tall rectangle heights exceed the threshold") {
    for (double tv : {0.0, 0.5}) {
        for (double c : {0.3, 0.5, 0.7}) {
            const double h = fan_total_height(c, Tau{tv});
            CHECK(h > std::sqrt(1.0 + 4.0 * tv * tv) * kPi);
            CHECK(h == doctest::Approx(fan_height_oracle(c, tv)).epsilon(1e-7));
        }
    }
    // frozen oracle values
    CHECK(fan_total_height(0.5, Tau{0}) == doctest::Approx(3.7081493546).epsilon(1e-9));
    CHECK(fan_total_height(0.5, Tau{0.5}) == doctest::Approx(4.86883428286).epsilon(1e-9));
    CHECK_THROWS_AS(fan_total_height(1.5, Tau{0}), BadParameterError);
}

TEST_CASE("tall rectangle height grows toward the c -> 1 vertical line") {
    // the boundary of the c -> 1 limit contains a full vertical line, so the
    // height increases in c (the c -> 0 limit is the threshold itself)
    const double h03 = fan_total_height(0.3, Tau{0});
    const double h05 = fan_total_height(0.5, Tau{0});
    const double h09 = fan_total_height(0.9, Tau{0});
    CHECK(h03 < h05);
    CHECK(h05 < h09);
    CHECK(h09 == doctest::Approx(5.1561842267).epsilon(1e-8));
}

TEST_CASE("catenoid root against the bisection oracle") {
    auto bisect = [](double c) {
        auto f = [c](double t) { return -3.0 + t * t + c * t - 4.0 * t * std::log(t); };
        double lo = 1e-8, hi = 1.0;
        for (int i = 0; i < 120; ++i) {
            const double mid = 0.5 * (lo + hi);
            (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    CHECK(catenoid_root(10.0) == doctest::Approx(bisect(10.0)).epsilon(1e-10));
    CHECK(catenoid_root(10.0) == doctest::Approx(0.17494719329373587).epsilon(1e-12));
    CHECK(catenoid_root(4.0) == doctest::Approx(0.35158407361150614).epsilon(1e-12));
    CHECK(catenoid_root(50.0) == doctest::Approx(0.04825205358313458).epsilon(1e-12));
    const double r10 = catenoid_root(10.0);
    CHECK(std::abs(-3.0 + r10 * r10 + 10.0 * r10 - 4.0 * r10 * std::log(r10)) < 1e-12);
    CHECK_THROWS_AS(catenoid_root(1.5), NoBracketError);
}

TEST_CASE("the root is the only sign change on a fine grid") {
    for (double c : {4.0, 10.0, 50.0}) {
        auto f = [c](double t) { return -3.0 + t * t + c * t - 4.0 * t * std::log(t); };
        int changes = 0;
        double prev = f(1e-6);
        for (int i = 1; i <= 10000; ++i) {
            const double t = 1e-6 + (1.0 - 2e-6) * i / 10000.0;
            const double v = f(t);
            if (prev * v < 0) ++changes;
            prev = v;
        }
        CHECK(changes == 1);
    }
}

TEST_CASE("catenoid neck height stays below the half-threshold") {
    for (double tv : {0.0, 0.5}) {
        for (double c : {4.0, 10.0, 50.0}) {
            const double h = catenoid_neck_height(c, Tau{tv});
            CHECK(h < std::sqrt(1.0 + 4.0 * tv * tv) * kPi / 2);
            CHECK(h == doctest::Approx(catenoid_neck_oracle(c, tv)).epsilon(1e-8));
        }
    }
    CHECK(catenoid_neck_height(10.0, Tau{0.5}) == doctest::Approx(1.03517613582).epsilon(1e-9));
    CHECK(catenoid_neck_height(10.0, Tau{0}) == doctest::Approx(0.878453645779).epsilon(1e-9));
}

TEST_CASE("catenoid gradient blows up at the neck") {
    const Tau tau{0.5};
    auto g = as_graph(InvariantSurface::catenoid(10.0, +1, tau));
    const double r0 = catenoid_root(10.0);
    // place a point at r = r0 + 1e-13 along the ray x = 0 below the center:
    // r((0, y)) = ((y-1)/(y+1))^2 for y < 1
    const double rtarget = r0 + 1e-13;
    const double q = std::sqrt(rtarget);
    const double y = (1.0 - q) / (1.0 + q);
    CHECK(g.near_singular(0.0, y));
    auto gr = g.grad(0.0, y);
    CHECK(std::hypot(gr[0], gr[1]) > 1e6);
}

TEST_CASE("umbrella limits") {
    const Tau tau{0.5};
    CHECK(umbrella_limit(0.0, 1.0, 1.0, tau) == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(umbrella_limit(3.0, 0.0, 1.0, tau) == doctest::Approx(0.0));
    // pointwise decay to the slice as lambda grows
    double prev = std::abs(umbrella_limit(1.0, 1.0, 1.0, tau));
    for (double lambda : {10.0, 100.0, 1000.0}) {
        const double v = std::abs(umbrella_limit(lambda, 1.0, 1.0, tau));
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("mirror symmetry between opposite bundle curvatures") {
    // (x, y, t) -> (x, y, -t) carries the tau family to the -tau family,
    // flipping the branch sign (and the tilt slope).
    const double tv = 0.5;
    auto check_pair = [](const InvariantSurface& a, const InvariantSurface& b) {
        auto ga = as_graph(a);
        auto gb = as_graph(b);
        for (double y : {0.3, 0.8})
            for (double x : {0.6, 1.4, 2.8}) {
                if (!ga.domain(x, y)) continue;
                REQUIRE(gb.domain(x, y));
                CHECK(ga.eval(x, y) == doctest::Approx(-gb.eval(x, y)).epsilon(1e-10));
            }
    };
    check_pair(InvariantSurface::slab_bigraph(1, +1, Tau{tv}),
               InvariantSurface::slab_bigraph(1, -1, Tau{-tv}));
    check_pair(InvariantSurface::tilted(1, 0.7, +1, Tau{tv}),
               InvariantSurface::tilted(1, -0.7, -1, Tau{-tv}));
    check_pair(InvariantSurface::fan(0.5, +1, Tau{tv}),
               InvariantSurface::fan(0.5, -1, Tau{-tv}));
    check_pair(InvariantSurface::catenoid(10, +1, Tau{tv}),
               InvariantSurface::catenoid(10, -1, Tau{-tv}));
    check_pair(InvariantSurface::umbrella_limit(1, Tau{tv}),
               InvariantSurface::umbrella_limit(1, Tau{-tv}));
}

TEST_CASE("asymptotic boundary traces") {
    const Tau tau{0.5};
    SUBCASE("slab: two horizontal lines a threshold apart") {
        auto curve = asymptotic_boundary(InvariantSurface::slab_bigraph(1, +1, tau));
        REQUIRE(curve.components.size() == 2);
        const double t0 = curve.components[0].vertices.front().t;
        const double t1 = curve.components[1].vertices.front().t;
        CHECK(std::abs(t0 - t1) == doctest::Approx(height_threshold(tau)).epsilon(1e-12));
        CHECK(t0 == doctest::Approx(0.5 * height_threshold(tau)).epsilon(1e-12));
    }
    SUBCASE("tilted: gap twice the height integral") {
        auto curve = asymptotic_boundary(InvariantSurface::tilted(1, 1, +1, tau));
        REQUIRE(curve.components.size() == 2);
        const double gap = curve.components[0].vertices.front().t -
                           curve.components[1].vertices.front().t;
        CHECK(std::abs(gap) ==
              doctest::Approx(2.0 * tilted_height(1, 1, tau)).epsilon(1e-12));
    }
    SUBCASE("catenoid: arctan curves shifted by the neck height") {
        auto curve = asymptotic_boundary(InvariantSurface::catenoid(10, +1, tau), 33);
        REQUIRE(curve.components.size() == 2);
        const double h1 = catenoid_neck_height(10, tau);
        for (int comp = 0; comp < 2; ++comp) {
            const int sgn = comp == 0 ? +1 : -1;
            for (const auto& v : curve.components[comp].vertices) {
                if (v.at_inf) continue;
                CHECK(v.t == doctest::Approx(4.0 * tau.value * std::atan(v.pos) + sgn * h1)
                                 .epsilon(1e-10));
            }
        }
    }
    SUBCASE("tall rectangle: vertical sides match the total height") {
        auto curve = asymptotic_boundary(InvariantSurface::fan(0.5, +1, tau), 17);
        REQUIRE(curve.components.size() == 1);
        double tmin = 1e300, tmax = -1e300;
        for (const auto& v : curve.components[0].vertices) {
            tmin = std::min(tmin, v.t);
            tmax = std::max(tmax, v.t);
        }
        CHECK(tmax - tmin == doctest::Approx(fan_total_height(0.5, tau)).epsilon(1e-10));
    }
}
