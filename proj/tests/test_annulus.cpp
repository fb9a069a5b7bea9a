#include <doctest.h>

#include <cmath>

#include "sl2r/annulus.hpp"
#include "sl2r/errors.hpp"

using namespace sl2r;

namespace {

// 1-D reduction of the disk-area double integral: integrating the slice
// density sqrt(1+4 tau^2)/y^2 in x first leaves
// 2 sqrt(1+4 tau^2) sqrt(2 cosh(rho) y - y^2 - 1) / y^2 over the y-extent.
double disk_area_oracle(double rho, double tv, long n) {
    const double ylo = std::cosh(rho) - std::sinh(rho);
    const double yhi = std::cosh(rho) + std::sinh(rho);
    double s = 0.0;
    const double h = (yhi - ylo) / n;
    for (long i = 0; i < n; ++i) {
        const double y = ylo + (i + 0.5) * h;
        const double rad = 2.0 * std::cosh(rho) * y - y * y - 1.0;
        if (rad <= 0) continue;
        s += 2.0 * std::sqrt(1.0 + 4.0 * tv * tv) * std::sqrt(rad) / (y * y);
    }
    return s * h;
}

// trapezoid-in-theta, midpoint-in-w oracle for the annulus area
double annulus_area_oracle(double rb, double rho, double tv, int ntheta, long nw) {
    const double K = 1.0 + 4.0 * tv * tv;
    const double shb = std::sinh(rb);
    const double wmax = std::sqrt(rho - rb);
    double total = 0.0;
    for (int k = 0; k < ntheta; ++k) {
        const double th = 2.0 * kPi * (k + 0.5) / ntheta;
        const double vp = angular_shift_v_prime(th, rho, Tau{tv});
        double inner = 0.0;
        const double hw = wmax / nw;
        for (long i = 0; i < nw; ++i) {
            const double w = (i + 0.5) * hw;
            const double r = rb + w * w;
            const double shr = std::sinh(r);
            const double diff = std::sinh(r - rb) * std::sinh(r + rb);
            const double up2 = K * shb * shb / diff;
            const double vert = vp + 2.0 * tv * (1.0 - std::cosh(r));
            inner += 2.0 * w * std::sqrt(shr * shr * (up2 + 1.0) + vert * vert);
        }
        total += inner * hw;
    }
    return 2.0 * total * (2.0 * kPi / ntheta);
}

} // namespace

TEST_CASE("disk area closed form and quadrature cross-check") {
    CHECK(disk_area(0.0, Tau{1.0}) == 0.0);
    CHECK(disk_area(1.0, Tau{0.5}) ==
          doctest::Approx(2.0 * kPi * std::sqrt(2.0) * (std::cosh(1.0) - 1.0)).epsilon(1e-14));
    CHECK(disk_area(1.0, Tau{0.5}) == doctest::Approx(4.8257).epsilon(1e-4));
    CHECK(disk_area(1.0, Tau{0}) == doctest::Approx(3.4127).epsilon(1e-4));
    for (double rho : {0.5, 1.0, 2.0})
        for (double tv : {0.0, 0.5})
            CHECK(disk_area(rho, Tau{tv}) ==
                  doctest::Approx(disk_area_oracle(rho, tv, 4'000'000)).epsilon(1e-6));
}

TEST_CASE("catenoid height profile") {
    AnnulusSpec spec{1.0, 2.0, Tau{0.5}};
    CHECK(catenoid_profile_U(1.0, spec) == 0.0);
    const double u12 = catenoid_profile_U(2.0, spec);
    CHECK(u12 == doctest::Approx(1.03861588089).epsilon(1e-9));  // frozen quadrature value
    CHECK(u12 > 0.0);
    // monotone in r
    CHECK(catenoid_profile_U(1.5, spec) < u12);
    CHECK(u12 < catenoid_profile_U(3.0, spec));

    // deep-neck limit of U(inf) approaches pi/2
    AnnulusSpec deep{8.0, 9.0, Tau{0.5}};
    CHECK(std::abs(catenoid_profile_U_limit(deep) - kPi / 2) < 0.01);
    // and stays strictly below it
    for (double rb : {0.5, 2.0, 5.0}) {
        AnnulusSpec s{rb, rb + 1.0, Tau{0.5}};
        CHECK(catenoid_profile_U_limit(s) < kPi / 2);
    }
}

TEST_CASE("angular shift closed forms") {
    for (double rho : {2.0, 5.0, 8.0}) {
        for (double tv : {0.25, 0.5, 1.0}) {
            CHECK(angular_shift_v(0.0, rho, Tau{tv}) == 0.0);
            // v'(0) = 2 tau e^rho - 2 tau, exactly
            CHECK(angular_shift_v_prime(0.0, rho, Tau{tv}) ==
                  doctest::Approx(2.0 * tv * std::expm1(rho)).epsilon(1e-13));
            // v'(pi) > -2 tau
            CHECK(angular_shift_v_prime(kPi, rho, Tau{tv}) > -2.0 * tv);
        }
    }
    // derivative consistency by central differences
    for (double th : {0.4, 1.5, 3.0, 5.2}) {
        const double h = 1e-6;
        const double fd = (angular_shift_v(th + h, 3.0, Tau{0.5}) -
                           angular_shift_v(th - h, 3.0, Tau{0.5})) /
                          (2 * h);
        CHECK(angular_shift_v_prime(th, 3.0, Tau{0.5}) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("annulus area") {
    CHECK_THROWS_AS(annulus_area({2.0, 1.0, Tau{0.5}}), BadParameterError);

    AnnulusSpec spec{2.0, 2.5, Tau{0.5}};
    const double area = annulus_area(spec);
    CHECK(area == doctest::Approx(83.0975920687).epsilon(1e-8));  // frozen nested quadrature
    CHECK(area == doctest::Approx(annulus_area_oracle(2.0, 2.5, 0.5, 2048, 4000)).epsilon(1e-4));

    // vanishing domain
    AnnulusSpec thin{2.0, 2.0 + 1e-8, Tau{0.5}};
    CHECK(annulus_area(thin) < 1e-3);

    // tau = 0 reduces to the product-space catenoid band and respects the
    // closed-form bound 2 pi sqrt(cosh^2 rho - cosh^2 rho_bar) per sheet
    for (auto [rb, rho] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {2.0, 2.5}}) {
        AnnulusSpec s0{rb, rho, Tau{0}};
        const double bound = 2.0 * kPi * std::sqrt(std::sinh(rho - rb) * std::sinh(rho + rb));
        CHECK(annulus_area(s0) / 2.0 < bound);
    }
}

TEST_CASE("Douglas comparison and boundary gap") {
    const Tau tau{0.5};
    SUBCASE("small necks fail, large necks pass") {
        DouglasResult small = douglas_check({0.5, 0.625, tau});
        CHECK_FALSE(small.holds);
        CHECK(small.margin == doctest::Approx(-0.018344761).epsilon(1e-5));
        DouglasResult large = douglas_check({2.0, 2.5, tau});
        CHECK(large.holds);
        CHECK(large.margin == doctest::Approx(8.1110534).epsilon(1e-6));
        DouglasResult deep = douglas_check({20.0, 25.0, tau});
        CHECK(deep.holds);
    }
    SUBCASE("gap values and bounds") {
        AnnulusSpec spec{8.0, 10.0, tau};
        const double gap = boundary_gap(spec);
        CHECK(gap == doctest::Approx(4.058918263).epsilon(1e-8));  // frozen
        CHECK(gap < std::sqrt(2.0) * kPi);
        // increasing in rho
        CHECK(boundary_gap({8.0, 9.0, tau}) < gap);
        CHECK(gap < boundary_gap({8.0, 12.0, tau}));
        // the supremum over rho comes within 2 percent of the threshold at
        // neck radius 8, and still stays below it
        const double sup = boundary_gap_limit(8.0, tau);
        CHECK(sup < std::sqrt(2.0) * kPi);
        CHECK(sup > 0.98 * std::sqrt(2.0) * kPi);
    }
}

TEST_CASE("profile estimate audit") {
    CHECK_THROWS_AS(lemma42_audit({1.0, 2.0, Tau{0}}, 100), BadParameterError);
    for (double rho : {2.0, 5.0, 8.0}) {
        auto rep = lemma42_audit({rho / 2.0, rho, Tau{0.5}}, 10000);
        CHECK(rep.item1);
        CHECK(rep.item2);
        CHECK(rep.item3);
        CHECK(rep.all_hold);
        CHECK(rep.margin1 > 0);
        CHECK(rep.margin2_lower > 0);
        CHECK(rep.margin3_upper > 0);
    }
}
