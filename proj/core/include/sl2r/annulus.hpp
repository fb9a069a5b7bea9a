#pragma once

#include <string>

#include "sl2r/support.hpp"

namespace sl2r {

// Rotational competitor annulus: neck at hyperbolic radius rho_bar, boundary
// circles at radius rho, both centered on the cylinder-model axis.
struct AnnulusSpec {
    double rho_bar = 1.0;
    double rho = 2.0;
    Tau tau;
};

// Area of the disk of hyperbolic radius rho inside a horizontal slice:
// 2 pi sqrt(1 + 4 tau^2) (cosh rho - 1).
double disk_area(double rho, Tau tau);

// Height profile of the product-space catenoid with neck rho_bar:
// U(r) = integral over (rho_bar, r) of sinh(rho_bar)/sqrt(sinh^2 s - sinh^2 rho_bar).
double catenoid_profile_U(double r, const AnnulusSpec& spec);
// U(inf), through the finite substitution of the tail.
double catenoid_profile_U_limit(const AnnulusSpec& spec);

// v(theta) = 4 tau arctan( T sin theta / (1 - T cos theta) ), T = tanh(rho/2),
// and its closed-form derivative. Written against e^{-rho} so both stay
// accurate for large rho.
double angular_shift_v(double theta, double rho, Tau tau);
double angular_shift_v_prime(double theta, double rho, Tau tau);

// Full area of the two-sheeted annulus: 2 x the (r, theta) integral of the
// area element W, W^2 = sinh^2 r (u'^2 + 1) + (v' + 2 tau - 2 tau cosh r)^2
// with u = sqrt(1 + 4 tau^2) U.
double annulus_area(const AnnulusSpec& spec);

struct DouglasResult {
    bool holds = false;
    double margin = 0;  // 2 area(disk) - area(annulus)
    double area_disk = 0;
    double area_annulus = 0;
};

// Douglas comparison: an area-minimizing annulus spanning the two boundary
// circles exists when twice the disk area exceeds the competitor area.
DouglasResult douglas_check(const AnnulusSpec& spec);

// Vertical separation 2 sqrt(1+4 tau^2) U(rho) of the two boundary circles
// after transport to the half-space model.
double boundary_gap(const AnnulusSpec& spec);
// Supremum of the gap over rho: 2 sqrt(1+4 tau^2) U(inf) < sqrt(1+4 tau^2) pi.
double boundary_gap_limit(double rho_bar, Tau tau);

struct Lemma42Report {
    bool item1 = false, item2 = false, item3 = false;
    bool all_hold = false;
    // worst margins (positive = inequality satisfied with that slack)
    double margin1 = 0;
    double margin2_lower = 0, margin2_upper = 0;
    double margin3_lower = 0, margin3_upper = 0;
    double worst_theta2 = 0, worst_theta3 = 0;
    std::string note;
};

// Grid audit of the profile estimates: (1) the integral bound
// 2 pi int sqrt(1+U_r^2) sinh r dr <= 2 pi sqrt(cosh^2 rho - cosh^2 rho_bar),
// (2) -2 tau < v' < 2 tau e^rho - 2 tau with the upper bound attained at 0,
// (3) v' in (-2 tau, 0) for theta in (2 e^{-rho/2}, 2 pi - 2 e^{-rho/2}).
// Requires tau > 0.
Lemma42Report lemma42_audit(const AnnulusSpec& spec, int n_theta);

} // namespace sl2r
