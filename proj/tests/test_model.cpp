#include <doctest.h>

#include <cmath>

#include "sblab/model.hpp"

using namespace sblab;

TEST_CASE("omega: rest mass, on-shell identity, direct value") {
    const auto p = ModelParams::reference();
    CHECK(omega(0.0, p) == doctest::Approx(1.0).epsilon(1e-15));
    const double r_star = std::sqrt(p.e1 * p.e1 - p.m * p.m);
    CHECK(omega(r_star, p) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(omega(3.0, p) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK_THROWS_AS(omega(-0.1, p), Error);
}

TEST_CASE("omega monotone, approaches the light cone") {
    const auto p = ModelParams::reference();
    double prev = omega(0.0, p);
    for (double r = 0.25; r <= 50.0; r += 0.25) {
        const double cur = omega(r, p);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK(omega(1e4, p) - 1e4 < 1e-3);
}

TEST_CASE("form factor: normalization, frozen value, Gaussian decay") {
    const auto p = ModelParams::reference();
    CHECK(form_factor(0.0, p) == doctest::Approx(1.0).epsilon(1e-15));
    // e^{-1} * 5^{-1/4}
    CHECK(form_factor(2.0, p) == doctest::Approx(0.24601580968354604).epsilon(1e-14));
    CHECK(form_factor(40.0, p) < 1e-100);
    double prev = form_factor(0.0, p);
    for (double r = 0.1; r < 8.0; r += 0.1) {
        const double cur = form_factor(r, p);
        CHECK(cur < prev);
        CHECK(cur > 0.0);
        prev = cur;
    }
}

TEST_CASE("xi: values, bounds and the algebraic identity") {
    const auto p = ModelParams::reference();
    CHECK(xi(0.0, p) == 0.0);
    CHECK(xi(1.0, p) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    for (double r = 0.0; r <= 12.0; r += 0.125) {
        const double om = omega(r, p);
        const double x = xi(r, p);
        CHECK(x >= 0.0);
        CHECK(x <= om + 1e-15);
        CHECK(x >= om - p.m - 1e-15);
        CHECK(x == doctest::Approx(om - p.m * p.m / om).epsilon(1e-13));
    }
}

TEST_CASE("delta_gap: reference value and violations") {
    CHECK(ModelParams::reference().delta_gap() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(ModelParams::make(3.0, 1.0, 2.0, 0.1), GapViolation);
    CHECK_THROWS_AS(ModelParams::make(0.8, 1.0, 2.0, 0.1), MassOrderViolation);
    // gap measured to the nearest positive multiple of m
    const auto p = ModelParams::make(2.2, 1.0, 2.0, 0.0);
    CHECK(p.delta_gap() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("constructor validation is total") {
    CHECK_THROWS_AS(ModelParams::make(2.5, -1.0, 2.0, 0.1), MassOrderViolation);
    CHECK_THROWS_AS(ModelParams::make(2.5, 1.0, 0.0, 0.1), ConfigError);
    CHECK_THROWS_AS(ModelParams::make(2.5, 1.0, 2.0, -0.2), ConfigError);
    const auto p = ModelParams::make(2.5, 1.0, 2.0, 0.0);
    CHECK(p.e0 == 0.0);
    CHECK(p.g == 0.0);
}

TEST_CASE("dilation profile matches a finite-difference derivative of f") {
    const auto p = ModelParams::reference();
    for (double r : {0.3, 1.0, 2.2913, 4.0}) {
        const double h = 1e-6;
        const double df = (form_factor(r + h, p) - form_factor(r - h, p)) / (2.0 * h);
        const double expected = r * df + 1.5 * form_factor(r, p);
        CHECK(dilation_profile(r, p) == doctest::Approx(expected).epsilon(1e-7));
    }
}
