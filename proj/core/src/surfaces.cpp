#include "sl2r/surfaces.hpp"

#include <cmath>
#include <optional>

#include "sl2r/numerics.hpp"

namespace sl2r {

namespace {

constexpr double kEndpointMargin = 1e-9;
constexpr double kCacheTol = 1e-13;
constexpr double kQuadTol = 1e-12;
constexpr double kFanCacheSpan = 64.0;  // |s| range covered by the fan cache

double sq(double v) { return v * v; }

// ---------------------------------------------------------------- slab

GraphFunction slab_graph(double d, int sign, Tau tau) {
    const double k = tau_factor(tau);
    GraphFunction g;
    g.eval = [d, sign, k](double, double y) { return sign * k * std::asin(d * y); };
    g.grad = [d, sign, k](double, double y) {
        return std::array<double, 2>{0.0, sign * k * d / std::sqrt(1.0 - sq(d * y))};
    };
    g.hess = [d, sign, k](double, double y) {
        const double w = 1.0 - sq(d * y);
        return std::array<double, 3>{0.0, 0.0, sign * k * d * d * d * y / (w * std::sqrt(w))};
    };
    g.domain = [d](double, double y) { return y > 0.0 && d * y < 1.0; };
    g.near_singular = [d](double, double y) {
        return y < kEndpointMargin || 1.0 / d - y < kEndpointMargin;
    };
    return g;
}

// ---------------------------------------------------------------- tilted

double tilted_integrand(double phi, double d, double l, Tau tau) {
    return std::sqrt(1.0 + sq(l * d * std::sin(phi) - 2.0 * tau.value));
}

GraphFunction tilted_graph(double d, double l, int sign, Tau tau, EvalMode mode) {
    // v(y) in the substituted variable phi = arcsin(y/d); the integrand is
    // smooth there, so a single Chebyshev antiderivative covers (0, d].
    std::shared_ptr<ChebyshevAntiderivative> cache;
    if (mode == EvalMode::Cached) {
        cache = std::make_shared<ChebyshevAntiderivative>(
            [d, l, tau](double phi) { return tilted_integrand(phi, d, l, tau); }, 0.0,
            0.5 * kPi, kCacheTol);
    }
    auto profile = [d, l, tau, cache](double y) {
        const double phi = std::asin(std::min(y / d, 1.0));
        if (cache) return (*cache)(phi);
        if (phi == 0.0) return 0.0;
        SingularIntegral s{[d, l, tau](double p) { return tilted_integrand(p, d, l, tau); },
                           0.0, phi, false, false, 0.5};
        return integrate(s, kQuadTol).value;
    };

    GraphFunction g;
    g.eval = [l, sign, profile](double x, double y) { return l * x + sign * profile(y); };
    g.grad = [d, l, sign, tau](double, double y) {
        const double vy = std::sqrt(1.0 + sq(l * y - 2.0 * tau.value)) / std::sqrt(d * d - y * y);
        return std::array<double, 2>{l, sign * vy};
    };
    g.hess = [d, l, sign, tau](double, double y) {
        const double a = 1.0 + sq(l * y - 2.0 * tau.value);
        const double w = d * d - y * y;
        const double vyy =
            l * (l * y - 2.0 * tau.value) / (std::sqrt(a) * std::sqrt(w)) +
            std::sqrt(a) * y / (w * std::sqrt(w));
        return std::array<double, 3>{0.0, 0.0, sign * vyy};
    };
    g.domain = [d](double, double y) { return y > 0.0 && y < d; };
    g.near_singular = [d](double, double y) {
        return y < kEndpointMargin || d - y < kEndpointMargin;
    };
    return g;
}

// ---------------------------------------------------------------- fan

struct FanProfile {
    double c, s0, K;
    int sign;
    Tau tau;
    std::shared_ptr<ChebyshevAntiderivative> cache;
    double cache_shift = 0.0;  // raw cache value at the normalization point c0
    EvalMode mode;

    // c (t^2 + 1) - 1, factored when 0 < c < 1 so the root at s0 is exact.
    double radicand(double t) const {
        if (c < 1.0) return c * (t - s0) * (t + s0);
        return c * (t * t + 1.0) - 1.0;
    }
    double q(double t) const {
        return std::sqrt(1.0 + K * t * t) / ((t * t + 1.0) * std::sqrt(radicand(t)));
    }
    double q_prime(double t) const {
        const double A = std::sqrt(1.0 + K * t * t);
        const double B = t * t + 1.0;
        const double C = std::sqrt(radicand(t));
        return t * (K / (A * B * C) - 2.0 * A / (B * B * C) - c * A / (B * C * C * C));
    }
    // Additive normalization: Q(c0) = 0 with c0 = 0 (c > 1), 1 (c = 1),
    // s0 (0 < c < 1).
    double lower_limit() const { return c > 1.0 ? 0.0 : (c == 1.0 ? 1.0 : s0); }

    double Q_direct(double s) const {
        const double c0 = lower_limit();
        if (s == c0) return 0.0;
        const bool singular_low = c < 1.0;
        if (s > c0) {
            SingularIntegral spec{[this](double t) { return q(t); }, c0, s, singular_low, false, 0.5};
            return integrate(spec, kQuadTol).value;
        }
        SingularIntegral spec{[this](double t) { return q(t); }, s, c0, false, false, 0.5};
        return -integrate(spec, kQuadTol).value;
    }

    double Q(double s) const {
        if (s == lower_limit()) return 0.0;
        if (mode == EvalMode::DirectQuadrature || !cache) return Q_direct(s);
        if (c > 1.0) {
            if (std::abs(s) <= kFanCacheSpan) return (*cache)(s)-cache_shift;
            const double edge = s > 0 ? kFanCacheSpan : -kFanCacheSpan;
            SingularIntegral spec{[this](double t) { return q(t); }, std::min(edge, s),
                                  std::max(edge, s), false, false, 0.5};
            return (*cache)(edge)-cache_shift +
                   (s > 0 ? 1.0 : -1.0) * integrate(spec, kQuadTol).value;
        }
        if (c == 1.0) {
            const double m = std::log(s);
            if (m >= cache->a() && m <= cache->b()) return (*cache)(m)-cache_shift;
            return Q_direct(s);
        }
        const double w = std::sqrt(std::max(s - s0, 0.0));
        if (w <= cache->b()) return (*cache)(w);
        return Q_direct(s);
    }
};

FanProfile make_fan_profile(double c, int sign, Tau tau, EvalMode mode) {
    FanProfile f;
    f.c = c;
    f.K = 1.0 + 4.0 * tau.value * tau.value;
    f.s0 = c < 1.0 ? std::sqrt((1.0 - c) / c) : 0.0;
    f.sign = sign;
    f.tau = tau;
    f.mode = mode;
    if (mode == EvalMode::Cached) {
        const double cc = c, K = f.K, s0 = f.s0;
        if (c > 1.0) {
            auto q = [cc, K](double t) {
                return std::sqrt(1.0 + K * t * t) / ((t * t + 1.0) * std::sqrt(cc * (t * t + 1.0) - 1.0));
            };
            f.cache = std::make_shared<ChebyshevAntiderivative>(q, -kFanCacheSpan, kFanCacheSpan,
                                                                kCacheTol);
            f.cache_shift = (*f.cache)(0.0);
        } else if (c == 1.0) {
            // t = e^m turns the 1/t endpoint into a smooth bounded integrand.
            auto qm = [K](double m) {
                const double t = std::exp(m);
                return std::sqrt(1.0 + K * t * t) / (t * t + 1.0);
            };
            f.cache = std::make_shared<ChebyshevAntiderivative>(qm, std::log(1e-6),
                                                                std::log(kFanCacheSpan), kCacheTol);
            f.cache_shift = (*f.cache)(0.0);  // m = log 1
        } else {
            // t = s0 + w^2 cancels the inverse-square-root endpoint exactly.
            auto qw = [s0, cc, K](double w) {
                const double t = s0 + w * w;
                return 2.0 * std::sqrt(1.0 + K * t * t) /
                       ((t * t + 1.0) * std::sqrt(cc) * std::sqrt(t + s0));
            };
            f.cache = std::make_shared<ChebyshevAntiderivative>(qw, 0.0,
                                                                std::sqrt(kFanCacheSpan), kCacheTol);
        }
    }
    return f;
}

GraphFunction fan_graph(double c, int sign, Tau tau, EvalMode mode) {
    auto f = std::make_shared<FanProfile>(make_fan_profile(c, sign, tau, mode));
    const double tv = tau.value;
    auto F = [f, tv](double s) { return 2.0 * tv * std::atan(s) + f->sign * f->Q(s); };
    auto Fp = [f, tv](double s) { return 2.0 * tv / (1.0 + s * s) + f->sign * f->q(s); };
    auto Fpp = [f, tv](double s) {
        return -4.0 * tv * s / sq(1.0 + s * s) + f->sign * f->q_prime(s);
    };

    GraphFunction g;
    g.eval = [F](double x, double y) { return F(x / y); };
    g.grad = [Fp](double x, double y) {
        const double s = x / y, fp = Fp(s);
        return std::array<double, 2>{fp / y, -s * fp / y};
    };
    g.hess = [Fp, Fpp](double x, double y) {
        const double s = x / y, fp = Fp(s), fpp = Fpp(s);
        const double y2 = y * y;
        return std::array<double, 3>{fpp / y2, -(s * fpp + fp) / y2,
                                     (s * s * fpp + 2.0 * s * fp) / y2};
    };
    const double s0 = f->s0;
    if (c > 1.0) {
        g.domain = [](double, double y) { return y > 0.0; };
    } else if (c == 1.0) {
        g.domain = [](double x, double y) { return y > 0.0 && x / y > 0.0; };
        g.near_singular = [](double x, double y) { return y > 0.0 && x / y < kEndpointMargin; };
    } else {
        g.domain = [s0](double x, double y) { return y > 0.0 && x / y > s0; };
        g.near_singular = [s0](double x, double y) {
            return y > 0.0 && x / y - s0 < kEndpointMargin;
        };
    }
    return g;
}

// ---------------------------------------------------------------- catenoid

struct CatenoidProfile {
    double c, r0, tau4;  // tau4 = 4 tau^2
    std::shared_ptr<ChebyshevAntiderivative> cache;  // variable w = sqrt(r - r0)
    EvalMode mode;

    // -3 + t^2 + c t - 4 t log t, written against the root (treated as exact)
    // so it stays well-conditioned down to t - r0 ~ 1e-14.
    double gpoly(double t) const {
        const double dt = t - r0;
        return dt * (t + r0 + c - 4.0 * std::log(t)) - 4.0 * r0 * std::log1p(dt / r0);
    }
    double gpoly_prime(double t) const { return 2.0 * t + c - 4.0 * std::log(t) - 4.0; }

    double h_integrand(double t) const {
        return std::sqrt(1.0 + tau4 * t) / std::sqrt(t * gpoly(t));
    }
    // 2 w h_integrand(r0 + w^2), continuous at the neck: gpoly/w^2 -> g'(r0).
    double h_integrand_w(double w) const {
        const double t = r0 + w * w;
        const double ratio = w == 0.0 ? gpoly_prime(r0) : gpoly(t) / (w * w);
        return 2.0 * std::sqrt(1.0 + tau4 * t) / std::sqrt(t * ratio);
    }
    double h_prime(double r) const { return h_integrand(r); }
    double h_second(double r) const {
        const double P = 1.0 + tau4 * r;
        const double S = r * gpoly(r);
        const double Sp = gpoly(r) + r * gpoly_prime(r);
        return (tau4 * S - P * Sp) / (2.0 * std::sqrt(P) * S * std::sqrt(S));
    }
    double h(double r) const {
        if (r <= r0) return 0.0;
        if (mode == EvalMode::Cached && cache) return (*cache)(std::sqrt(r - r0));
        SingularIntegral spec{[this](double w) { return h_integrand_w(w); }, 0.0,
                              std::sqrt(r - r0), false, false, 0.5};
        return integrate(spec, kQuadTol).value;
    }
};

std::shared_ptr<CatenoidProfile> make_catenoid_profile(double c, Tau tau, EvalMode mode) {
    auto p = std::make_shared<CatenoidProfile>();
    p->c = c;
    p->tau4 = 4.0 * tau.value * tau.value;
    p->r0 = catenoid_root(c);
    p->mode = mode;
    if (mode == EvalMode::Cached) {
        auto raw = *p;  // copy without cache for the integrand closure
        p->cache = std::make_shared<ChebyshevAntiderivative>(
            [raw](double w) { return raw.h_integrand_w(w); }, 0.0, std::sqrt(1.0 - p->r0),
            kCacheTol);
    }
    return p;
}

GraphFunction catenoid_graph(double c, int sign, Tau tau, EvalMode mode) {
    auto prof = make_catenoid_profile(c, tau, mode);
    const double tv = tau.value;
    const double r0 = prof->r0;

    // r = ((y-1)^2 + x^2) / (x^2 + (y+1)^2) = tanh^2(rho/2) with rho the
    // hyperbolic distance to (0, 1).
    auto rfun = [](double x, double y) {
        return (sq(y - 1.0) + x * x) / (x * x + sq(y + 1.0));
    };

    GraphFunction g;
    g.eval = [prof, sign, tv, rfun](double x, double y) {
        return sign * prof->h(rfun(x, y)) + 4.0 * tv * std::atan(x / (y + 1.0));
    };
    g.grad = [prof, sign, tv, rfun](double x, double y) {
        const double D = x * x + sq(y + 1.0);
        const double r = rfun(x, y);
        const double hp = prof->h_prime(r);
        const double rx = 8.0 * x * y / (D * D);
        const double ry = 4.0 * (y * y - 1.0 - x * x) / (D * D);
        return std::array<double, 2>{sign * hp * rx + 4.0 * tv * (y + 1.0) / D,
                                     sign * hp * ry - 4.0 * tv * x / D};
    };
    g.hess = [prof, sign, tv, rfun](double x, double y) {
        const double D = x * x + sq(y + 1.0);
        const double D2 = D * D, D3 = D2 * D;
        const double r = rfun(x, y);
        const double hp = prof->h_prime(r), hpp = prof->h_second(r);
        const double rx = 8.0 * x * y / D2;
        const double ry = 4.0 * (y * y - 1.0 - x * x) / D2;
        const double rxx = 8.0 * y * (D - 4.0 * x * x) / D3;
        const double rxy = 8.0 * x * (D - 4.0 * y * (y + 1.0)) / D3;
        const double ryy = 8.0 * y / D2 - 16.0 * (y + 1.0) * (y * y - 1.0 - x * x) / D3;
        const double axx = -8.0 * tv * x * (y + 1.0) / D2;
        const double axy = 4.0 * tv * (x * x - sq(y + 1.0)) / D2;
        const double ayy = 8.0 * tv * x * (y + 1.0) / D2;
        return std::array<double, 3>{sign * (hpp * rx * rx + hp * rxx) + axx,
                                     sign * (hpp * rx * ry + hp * rxy) + axy,
                                     sign * (hpp * ry * ry + hp * ryy) + ayy};
    };
    g.domain = [rfun, r0](double x, double y) {
        if (y <= 0.0) return false;
        const double r = rfun(x, y);
        return r > r0 && r < 1.0;
    };
    g.near_singular = [rfun, r0](double x, double y) {
        const double r = rfun(x, y);
        return r - r0 < kEndpointMargin || 1.0 - r < kEndpointMargin;
    };
    return g;
}

// ---------------------------------------------------------------- umbrella

GraphFunction umbrella_graph(double lambda, Tau tau) {
    const double tv = tau.value;
    GraphFunction g;
    g.eval = [lambda, tv](double x, double y) {
        return 4.0 * tv * std::atan2(x, y + lambda);
    };
    g.grad = [lambda, tv](double x, double y) {
        const double D = x * x + sq(y + lambda);
        return std::array<double, 2>{4.0 * tv * (y + lambda) / D, -4.0 * tv * x / D};
    };
    g.hess = [lambda, tv](double x, double y) {
        const double yl = y + lambda;
        const double D = x * x + yl * yl, D2 = D * D;
        return std::array<double, 3>{-8.0 * tv * x * yl / D2, 4.0 * tv * (x * x - yl * yl) / D2,
                                     8.0 * tv * x * yl / D2};
    };
    g.domain = [](double, double y) { return y > 0.0; };
    return g;
}

void check_family(bool ok, const char* what) {
    if (!ok) throw BadParameterError(what);
}

} // namespace

InvariantSurface InvariantSurface::slab_bigraph(double d, int sign, Tau tau) {
    check_family(d > 0, "slab bigraph requires d > 0");
    check_family(sign == 1 || sign == -1, "sign must be +1 or -1");
    InvariantSurface s;
    s.family = SurfaceFamily::SlabBigraph;
    s.d = d;
    s.sign = sign;
    s.tau = tau;
    return s;
}

InvariantSurface InvariantSurface::tilted(double d, double l, int sign, Tau tau) {
    check_family(d > 0, "tilted family requires d > 0");
    check_family(sign == 1 || sign == -1, "sign must be +1 or -1");
    InvariantSurface s;
    s.family = SurfaceFamily::Tilted;
    s.d = d;
    s.l = l;
    s.sign = sign;
    s.tau = tau;
    return s;
}

InvariantSurface InvariantSurface::fan(double c, int sign, Tau tau) {
    check_family(c > 0, "fan family requires c > 0");
    check_family(sign == 1 || sign == -1, "sign must be +1 or -1");
    InvariantSurface s;
    s.family = SurfaceFamily::Fan;
    s.c = c;
    s.sign = sign;
    s.tau = tau;
    return s;
}

InvariantSurface InvariantSurface::catenoid(double c, int sign, Tau tau) {
    check_family(sign == 1 || sign == -1, "sign must be +1 or -1");
    // The root of -3 + t^2 + c t - 4 t log t exists in (0, 1) iff the value at
    // t = 1 is positive; the polynomial part is increasing in t on (0, 1).
    check_family(c - 2.0 > 0, "catenoid requires a sign change of -3+t^2+ct-4t log t on (0,1)");
    InvariantSurface s;
    s.family = SurfaceFamily::Catenoid;
    s.c = c;
    s.sign = sign;
    s.tau = tau;
    return s;
}

InvariantSurface InvariantSurface::umbrella_limit(double lambda, Tau tau) {
    check_family(lambda >= 0, "umbrella limit requires lambda >= 0");
    InvariantSurface s;
    s.family = SurfaceFamily::UmbrellaLimit;
    s.lambda = lambda;
    s.tau = tau;
    return s;
}

GraphFunction as_graph(const InvariantSurface& s, EvalMode mode) {
    switch (s.family) {
        case SurfaceFamily::SlabBigraph:
            return slab_graph(s.d, s.sign, s.tau);
        case SurfaceFamily::Tilted:
            return tilted_graph(s.d, s.l, s.sign, s.tau, mode);
        case SurfaceFamily::Fan:
            return fan_graph(s.c, s.sign, s.tau, mode);
        case SurfaceFamily::Catenoid:
            return catenoid_graph(s.c, s.sign, s.tau, mode);
        case SurfaceFamily::UmbrellaLimit:
            return umbrella_graph(s.lambda, s.tau);
    }
    throw BadParameterError("unknown family");
}

double tilted_height(double d, double l, Tau tau) {
    if (!(d > 0)) throw BadParameterError("tilted_height requires d > 0");
    SingularIntegral spec{
        [d, l, tau](double phi) { return tilted_integrand(phi, d, l, tau); }, 0.0, 0.5 * kPi,
        false, false, 0.5};
    return integrate(spec, kQuadTol).value;
}

double fan_total_height(double c, Tau tau) {
    if (!(c > 0 && c < 1)) throw BadParameterError("fan_total_height requires 0 < c < 1");
    FanProfile f = make_fan_profile(c, +1, tau, EvalMode::DirectQuadrature);
    auto q = [&f](double t) { return f.q(t); };
    return 2.0 * integrate_to_infinity(q, f.s0, true, kQuadTol).value;
}

double catenoid_root(double c) {
    auto g = [c](double t) { return -3.0 + t * t + c * t - 4.0 * t * std::log(t); };
    // g is increasing on (0, 1) with g(0+) = -3; a root needs g(1) = c-2 > 0.
    if (!(g(1.0) > 0.0)) throw NoBracketError("no sign change of -3+t^2+ct-4t log t on (0,1)");
    double lo = 0.5;
    while (g(lo) >= 0.0) lo *= 0.5;
    double r = find_root(g, lo, 1.0, 1e-15);
    // One Newton polish drives the residual to rounding level.
    const double gp = 2.0 * r + c - 4.0 * std::log(r) - 4.0;
    r -= g(r) / gp;
    return r;
}

double catenoid_neck_height(double c, Tau tau) {
    auto prof = make_catenoid_profile(c, tau, EvalMode::DirectQuadrature);
    return prof->h(1.0);
}

double umbrella_limit(double lambda, double x, double y, Tau tau) {
    if (!(lambda >= 0)) throw BadParameterError("umbrella limit requires lambda >= 0");
    if (!(y > 0)) throw BoundaryPointError("umbrella limit requires y > 0");
    return 4.0 * tau.value * std::atan2(x, y + lambda);
}

namespace {

CurveComponent sampled_line(double t_height, double xmax, int resolution) {
    // A horizontal line closed through the ideal point at infinity.
    CurveComponent comp;
    for (int i = 0; i < resolution; ++i) {
        const double x = -xmax + 2.0 * xmax * i / (resolution - 1);
        comp.vertices.push_back({x, t_height, false});
    }
    comp.vertices.push_back({0.0, t_height, true});
    return comp;
}

CurveComponent open_line(double l, double offset, double xmax, int resolution) {
    CurveComponent comp;
    comp.closed = false;
    for (int i = 0; i < resolution; ++i) {
        const double x = -xmax + 2.0 * xmax * i / (resolution - 1);
        comp.vertices.push_back({x, l * x + offset, false});
    }
    return comp;
}

} // namespace

IdealBoundaryCurve asymptotic_boundary(const InvariantSurface& s, int resolution) {
    if (resolution < 2) throw BadParameterError("resolution must be at least 2");
    IdealBoundaryCurve curve;
    curve.model = Model::HalfSpace;
    const double X = 32.0;
    const double tv = s.tau.value;

    switch (s.family) {
        case SurfaceFamily::SlabBigraph: {
            const double half = 0.5 * height_threshold(s.tau);
            curve.components.push_back(sampled_line(+half, X, resolution));
            curve.components.push_back(sampled_line(-half, X, resolution));
            break;
        }
        case SurfaceFamily::Tilted: {
            const double v = tilted_height(s.d, s.l, s.tau);
            if (s.l == 0.0) {
                curve.components.push_back(sampled_line(+v, X, resolution));
                curve.components.push_back(sampled_line(-v, X, resolution));
            } else {
                curve.components.push_back(open_line(s.l, +v, X, resolution));
                curve.components.push_back(open_line(s.l, -v, X, resolution));
            }
            break;
        }
        case SurfaceFamily::Fan: {
            FanProfile f = make_fan_profile(s.c, s.sign, s.tau, EvalMode::DirectQuadrature);
            if (s.c < 1.0) {
                // Rectangle through the ideal points 0 and infinity; the two
                // half-lines sit at u^{+-}(inf) = tau pi +- half the height.
                const double mid = tv * kPi;
                const double half = 0.5 * fan_total_height(s.c, s.tau);
                const double top = mid + half, bot = mid - half;
                CurveComponent comp;
                comp.vertices.push_back({0.0, bot, false});
                comp.vertices.push_back({0.0, top, false});
                for (int i = 1; i < resolution; ++i)
                    comp.vertices.push_back({X * i / (resolution - 1.0), top, false});
                comp.vertices.push_back({0.0, top, true});
                comp.vertices.push_back({0.0, bot, true});
                for (int i = resolution - 1; i >= 1; --i)
                    comp.vertices.push_back({X * i / (resolution - 1.0), bot, false});
                curve.components.push_back(comp);
            } else if (s.c > 1.0) {
                // Two half-lines joined by vertical segments at 0 and infinity.
                const double Qinf = integrate_to_infinity([&f](double t) { return f.q(t); },
                                                          0.0, false, kQuadTol)
                                        .value;
                const double right = tv * kPi + s.sign * Qinf;
                const double left = -tv * kPi - s.sign * Qinf;
                CurveComponent comp;
                comp.vertices.push_back({0.0, left, false});
                comp.vertices.push_back({0.0, right, false});
                for (int i = 1; i < resolution; ++i)
                    comp.vertices.push_back({X * i / (resolution - 1.0), right, false});
                comp.vertices.push_back({0.0, right, true});
                comp.vertices.push_back({0.0, left, true});
                for (int i = resolution - 1; i >= 1; --i)
                    comp.vertices.push_back({-X * i / (resolution - 1.0), left, false});
                curve.components.push_back(comp);
            } else {
                // c = 1: the trace continues into the horizontal boundary; only
                // the finite-height half-line over x > 0 is reported.
                const double Qinf =
                    integrate_to_infinity([&f](double t) { return f.q(t); }, 1.0, false, kQuadTol)
                        .value;
                CurveComponent comp;
                comp.closed = false;
                const double level = tv * kPi + s.sign * Qinf;
                for (int i = 0; i < resolution; ++i) {
                    const double x = 1e-3 + (X - 1e-3) * i / (resolution - 1.0);
                    comp.vertices.push_back({x, level, false});
                }
                curve.components.push_back(comp);
            }
            break;
        }
        case SurfaceFamily::Catenoid: {
            const double h1 = catenoid_neck_height(s.c, s.tau);
            for (int sgn : {+1, -1}) {
                CurveComponent comp;
                for (int i = 0; i < resolution; ++i) {
                    const double x = -X + 2.0 * X * i / (resolution - 1);
                    comp.vertices.push_back({x, 4.0 * tv * std::atan(x) + sgn * h1, false});
                }
                comp.vertices.push_back({0.0, 2.0 * tv * kPi + sgn * h1, true});
                comp.vertices.push_back({0.0, -2.0 * tv * kPi + sgn * h1, true});
                curve.components.push_back(comp);
            }
            break;
        }
        case SurfaceFamily::UmbrellaLimit: {
            CurveComponent comp;
            if (s.lambda == 0.0) {
                comp.vertices.push_back({0.0, -2.0 * tv * kPi, false});
                comp.vertices.push_back({0.0, 2.0 * tv * kPi, false});
                for (int i = 1; i < resolution; ++i)
                    comp.vertices.push_back({X * i / (resolution - 1.0), 2.0 * tv * kPi, false});
            } else {
                for (int i = 0; i < resolution; ++i) {
                    const double x = -X + 2.0 * X * i / (resolution - 1);
                    comp.vertices.push_back({x, 4.0 * tv * std::atan(x / s.lambda), false});
                }
            }
            comp.vertices.push_back({0.0, 2.0 * tv * kPi, true});
            comp.vertices.push_back({0.0, -2.0 * tv * kPi, true});
            if (s.lambda == 0.0) {
                for (int i = resolution - 1; i >= 1; --i)
                    comp.vertices.push_back({-X * i / (resolution - 1.0), -2.0 * tv * kPi, false});
            }
            curve.components.push_back(comp);
            break;
        }
    }
    return curve;
}

} // namespace sl2r
