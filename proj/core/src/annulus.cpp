#include "sl2r/annulus.hpp"

#include <algorithm>
#include <cmath>

#include "sl2r/errors.hpp"
#include "sl2r/numerics.hpp"

namespace sl2r {

namespace {

constexpr double kQuadTol = 1e-11;

void validate(const AnnulusSpec& s) {
    if (!(s.rho_bar > 0 && s.rho > s.rho_bar))
        throw BadParameterError("annulus requires 0 < rho_bar < rho");
}

// sinh^2 s - sinh^2 b = sinh(s - b) sinh(s + b); the product form has no
// cancellation for large arguments.
double sinh2_diff(double s, double b) { return std::sinh(s - b) * std::sinh(s + b); }

// U integrand after r = rho_bar + w^2: 2 w sinh(rho_bar)/sqrt(sinh^2 r - sinh^2 rho_bar).
double u_integrand_w(double w, double rho_bar) {
    const double shb = std::sinh(rho_bar);
    return 2.0 * w * shb / std::sqrt(sinh2_diff(rho_bar + w * w, rho_bar));
}

// 1 - tanh(rho/2) = 2 / (e^rho + 1), exact for large rho.
double one_minus_T(double rho) { return 2.0 / (std::exp(rho) + 1.0); }

} // namespace

double disk_area(double rho, Tau tau) {
    if (!(rho >= 0)) throw BadParameterError("disk_area requires rho >= 0");
    return 2.0 * kPi * tau_factor(tau) * (std::cosh(rho) - 1.0);
}

double catenoid_profile_U(double r, const AnnulusSpec& spec) {
    validate(spec);
    if (!(r >= spec.rho_bar)) throw BadParameterError("U(r) requires r >= rho_bar");
    if (r == spec.rho_bar) return 0.0;
    const double rb = spec.rho_bar;
    SingularIntegral s{[rb](double w) { return u_integrand_w(w, rb); }, 0.0,
                       std::sqrt(r - rb), false, false, 0.5};
    return integrate(s, kQuadTol).value;
}

double catenoid_profile_U_limit(const AnnulusSpec& spec) {
    validate(spec);
    const double rb = spec.rho_bar;
    SingularIntegral head{[rb](double w) { return u_integrand_w(w, rb); }, 0.0, 1.0, false,
                          false, 0.5};
    const double first = integrate(head, kQuadTol).value;  // r in [rho_bar, rho_bar + 1]
    auto tail = [rb](double s) { return std::sinh(rb) / std::sqrt(sinh2_diff(s, rb)); };
    const double rest = integrate_to_infinity(tail, rb + 1.0, false, kQuadTol).value;
    return first + rest;
}

double angular_shift_v(double theta, double rho, Tau tau) {
    const double T = std::tanh(0.5 * rho);
    const double em = one_minus_T(rho);
    const double s2 = std::sin(0.5 * theta);
    // 1 - T cos(theta) = (1 - T) + 2 T sin^2(theta/2)
    const double den = em + 2.0 * T * s2 * s2;
    return 4.0 * tau.value * std::atan2(T * std::sin(theta), den);
}

double angular_shift_v_prime(double theta, double rho, Tau tau) {
    const double T = std::tanh(0.5 * rho);
    const double em = one_minus_T(rho);
    const double s2 = std::sin(0.5 * theta);
    // cos(theta) - T = (1 - T) - 2 sin^2(theta/2)
    const double num = em - 2.0 * s2 * s2;
    // 1 - 2 T cos(theta) + T^2 = (1 - T)^2 + 4 T sin^2(theta/2)
    const double den = em * em + 4.0 * T * s2 * s2;
    return 4.0 * tau.value * T * num / den;
}

double annulus_area(const AnnulusSpec& spec) {
    validate(spec);
    const double rb = spec.rho_bar, rho = spec.rho;
    const double K = 1.0 + 4.0 * spec.tau.value * spec.tau.value;
    const double shb = std::sinh(rb);
    const double wmax = std::sqrt(rho - rb);

    auto inner = [&](double theta) {
        const double vp = angular_shift_v_prime(theta, rho, spec.tau);
        auto integrand = [&](double w) {
            const double r = rb + w * w;
            const double shr = std::sinh(r);
            const double up2 = K * shb * shb / sinh2_diff(r, rb);
            const double vert = vp + 2.0 * spec.tau.value * (1.0 - std::cosh(r));
            const double W2 = shr * shr * (up2 + 1.0) + vert * vert;
            return 2.0 * w * std::sqrt(W2);
        };
        SingularIntegral s{integrand, 0.0, wmax, false, false, 0.5};
        return integrate(s, kQuadTol, {1e-12, 4'000'000}).value;
    };

    // v' has a peak of width ~ e^{-rho} at theta = 0 (mod 2 pi); integrate the
    // two peak slivers separately so the adaptive rule resolves them.
    const double peak = std::min(0.5, 20.0 * std::exp(-rho));
    const double cuts[4] = {0.0, peak, 2.0 * kPi - peak, 2.0 * kPi};
    KahanSum total;
    for (int seg = 0; seg < 3; ++seg) {
        SingularIntegral s{inner, cuts[seg], cuts[seg + 1], false, false, 0.5};
        total.add(integrate(s, 10.0 * kQuadTol, {1e-12, 20'000'000}).value);
    }
    return 2.0 * total.value();  // both graph sheets of the annulus
}

DouglasResult douglas_check(const AnnulusSpec& spec) {
    validate(spec);
    DouglasResult r;
    r.area_disk = disk_area(spec.rho, spec.tau);
    r.area_annulus = annulus_area(spec);
    r.margin = 2.0 * r.area_disk - r.area_annulus;
    r.holds = r.margin > 0.0;
    return r;
}

double boundary_gap(const AnnulusSpec& spec) {
    return 2.0 * tau_factor(spec.tau) * catenoid_profile_U(spec.rho, spec);
}

double boundary_gap_limit(double rho_bar, Tau tau) {
    AnnulusSpec s{rho_bar, rho_bar + 1.0, tau};
    return 2.0 * tau_factor(tau) * catenoid_profile_U_limit(s);
}

Lemma42Report lemma42_audit(const AnnulusSpec& spec, int n_theta) {
    validate(spec);
    if (!(spec.tau.value > 0)) throw BadParameterError("the profile audit assumes tau > 0");
    if (n_theta < 8) throw BadParameterError("n_theta too small");
    const double rho = spec.rho, rb = spec.rho_bar, tv = spec.tau.value;
    Lemma42Report rep;

    // (1) 2 pi int sqrt(1+U_r^2) sinh r dr <= 2 pi sqrt(cosh^2 rho - cosh^2 rho_bar);
    // the integrand equals sinh^2 r / sqrt(sinh^2 r - sinh^2 rho_bar).
    auto lhs_integrand = [rb](double w) {
        const double r = rb + w * w;
        const double shr = std::sinh(r);
        return 2.0 * w * shr * shr / std::sqrt(sinh2_diff(r, rb));
    };
    SingularIntegral s1{lhs_integrand, 0.0, std::sqrt(rho - rb), false, false, 0.5};
    const double lhs = 2.0 * kPi * integrate(s1, kQuadTol, {1e-12, 4'000'000}).value;
    const double rhs = 2.0 * kPi * std::sqrt(sinh2_diff(rho, rb));
    rep.margin1 = rhs - lhs;
    rep.item1 = rep.margin1 > 0.0;

    // (2) -2 tau < v' < 2 tau e^rho - 2 tau everywhere; the upper bound is the
    // exact value at theta = 0.
    const double vp0 = angular_shift_v_prime(0.0, rho, spec.tau);
    const double upper = 2.0 * tv * std::expm1(rho);
    rep.margin2_upper = upper;     // tightest slack found below
    rep.margin2_lower = upper;
    double worst2 = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double th = 2.0 * kPi * (i + 0.5) / n_theta;
        const double vp = angular_shift_v_prime(th, rho, spec.tau);
        const double slack_low = vp + 2.0 * tv;
        const double slack_up = upper - vp;
        if (slack_low < rep.margin2_lower) rep.margin2_lower = slack_low;
        if (slack_up < rep.margin2_upper) {
            rep.margin2_upper = slack_up;
            worst2 = th;
        }
    }
    rep.worst_theta2 = worst2;
    rep.item2 = rep.margin2_lower > 0.0 && rep.margin2_upper > 0.0 &&
                std::abs(vp0 - upper) <= 1e-9 * std::max(1.0, upper);

    // (3) v' in (-2 tau, 0) on (2 e^{-rho/2}, 2 pi - 2 e^{-rho/2}).
    const double lo3 = 2.0 * std::exp(-0.5 * rho), hi3 = 2.0 * kPi - lo3;
    rep.margin3_lower = 4.0 * tv;
    rep.margin3_upper = 4.0 * tv;
    double worst3 = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double th = lo3 + (hi3 - lo3) * (i + 0.5) / n_theta;
        const double vp = angular_shift_v_prime(th, rho, spec.tau);
        const double slack_low = vp + 2.0 * tv;
        const double slack_up = -vp;
        if (slack_low < rep.margin3_lower) rep.margin3_lower = slack_low;
        if (slack_up < rep.margin3_upper) {
            rep.margin3_upper = slack_up;
            worst3 = th;
        }
    }
    rep.worst_theta3 = worst3;
    rep.item3 = rep.margin3_lower > 0.0 && rep.margin3_upper > 0.0;

    rep.all_hold = rep.item1 && rep.item2 && rep.item3;
    return rep;
}

} // namespace sl2r
