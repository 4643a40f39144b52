#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "zfr/digamma.hpp"

namespace {

constexpr double euler = 0.57721566490153286061;

// 20-digit reference values computed with arbitrary-precision arithmetic.
struct RefPoint {
    double x;
    double psi;
};
constexpr RefPoint kRef[] = {
    {0.07, -14.753326705581839345},
    {0.5, -1.9635100260214234794},
    {1.0, -euler},
    {2.0, 0.42278433509846713939},
    {3.25, 1.0169909110681790364},
    {7.125, 1.8917959606533552671},
    {10.5, 2.3030010342976863753},
    {123.456, 4.8118293238289853873},
    {1e6, 13.815510057964190771},
    {0.999999, -0.57721730983680176682},
};

}  // namespace

TEST_CASE("digamma matches high-precision references", "[digamma]") {
    for (const auto& r : kRef) {
        const auto d = zfr::digamma(r.x);
        INFO("x = " << r.x);
        REQUIRE(std::abs(d.value - r.psi) <= 1e-13 * std::max(1.0, std::abs(r.psi)));
        // The reported error estimate must actually cover the observed error.
        REQUIRE(std::abs(d.value - r.psi) <= d.est_abs_error);
        REQUIRE(d.est_abs_error <= 1e-11);
    }
}

TEST_CASE("digamma closed-form spot values", "[digamma]") {
    REQUIRE(zfr::digamma(1.0).value == Catch::Approx(-euler).margin(1e-14));
    REQUIRE(zfr::digamma(0.5).value ==
            Catch::Approx(-euler - 2.0 * std::log(2.0)).margin(1e-13));
    REQUIRE(zfr::digamma(2.0).value == Catch::Approx(1.0 - euler).margin(1e-13));
    // psi(1/4) = -euler - 3 log 2 - pi/2
    REQUIRE(zfr::digamma(0.25).value ==
            Catch::Approx(-euler - 3.0 * std::log(2.0) - std::numbers::pi / 2.0)
                .margin(1e-13));
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x", "[digamma]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        const double lhs = zfr::digamma(x + 1.0).value;
        const double rhs = zfr::digamma(x).value + 1.0 / x;
        REQUIRE(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("digamma reflection psi(1-x) - psi(x) = pi cot(pi x)", "[digamma]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        if (std::abs(x - 0.5) < 1e-3) continue;  // cot blows through zero, fine either way
        const double lhs = zfr::digamma(1.0 - x).value - zfr::digamma(x).value;
        const double rhs = std::numbers::pi / std::tan(std::numbers::pi * x);
        REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("digamma is monotone increasing on the positive axis", "[digamma]") {
    double prev = zfr::digamma(0.05).value;
    for (int i = 1; i <= 400; ++i) {
        const double x = 0.05 + i * 0.1;
        const double cur = zfr::digamma(x).value;
        REQUIRE(cur > prev);
        prev = cur;
    }
}

TEST_CASE("digamma rejects non-positive and non-finite arguments", "[digamma]") {
    REQUIRE_THROWS_AS(zfr::digamma(0.0), std::domain_error);
    REQUIRE_THROWS_AS(zfr::digamma(-1.5), std::domain_error);
    REQUIRE_THROWS_AS(zfr::digamma(std::nan("")), std::domain_error);
    REQUIRE_THROWS_AS(zfr::digamma(std::numeric_limits<double>::infinity()),
                      std::domain_error);
}
