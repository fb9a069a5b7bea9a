#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace sl2r {

inline constexpr double kPi = 3.14159265358979323846;

// Bundle curvature of E(-1, tau). tau = 0 is the product H^2 x R.
struct Tau {
    double value = 0.0;
};

// sqrt(1 + 4 tau^2), the vertical scale factor that appears in every height
// estimate of the ambient space.
inline double tau_factor(Tau tau) {
    return std::sqrt(1.0 + 4.0 * tau.value * tau.value);
}

// The critical fiber height sqrt(1 + 4 tau^2) * pi.
inline double height_threshold(Tau tau) {
    return tau_factor(tau) * kPi;
}

inline bool approx_equal(double a, double b, double tol = 1e-10) {
    return std::abs(a - b) <= tol;
}

// Round-trip float formatting used by every CLI artifact (17 significant
// digits reproduce the double bit pattern).
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Deterministic low-discrepancy sequence for interior sampling.
inline double halton(unsigned index, unsigned base) {
    double f = 1.0, r = 0.0;
    for (unsigned i = index + 1; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
    }
    return r;
}

// Compensated accumulation; keeps parallel partitions of a sum
// partition-independent at double precision.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace sl2r
