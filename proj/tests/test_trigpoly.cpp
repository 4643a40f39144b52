#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "zfr/reference.hpp"
#include "zfr/zfr.hpp"

namespace {

// Plain O(n) cosine sum used as an independent check of the recurrence.
double naive_eval(const zfr::TrigPoly& p, double phi) {
    double s = 0.0;
    for (int k = 0; k <= p.degree; ++k) s += p.coeffs[static_cast<std::size_t>(k)] * std::cos(k * phi);
    return s;
}

std::string data_path(const char* name) {
    return std::string(ZFR_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("TrigPoly::validate enforces the container shape", "[trigpoly]") {
    zfr::TrigPoly p{2, {1.0, 2.0, 0.5}};
    REQUIRE_NOTHROW(p.validate());

    SECTION("degree/coeff length mismatch") {
        zfr::TrigPoly bad{3, {1.0, 2.0, 0.5}};
        REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    }
    SECTION("negative degree") {
        zfr::TrigPoly bad{-1, {}};
        REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    }
    SECTION("non-finite coefficient") {
        zfr::TrigPoly bad{1, {1.0, std::nan("")}};
        REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    }
    SECTION("class membership is reported, not shape-validated") {
        // Negative coefficients form a valid container; verify_admissible is
        // the class check and flags them.
        zfr::TrigPoly neg{2, {1.0, 2.0, -0.5}};
        REQUIRE_NOTHROW(neg.validate());
        const auto rep = zfr::verify_admissible(neg, zfr::BoundConfig{});
        REQUIRE_FALSE(rep.coeff_sign_ok);
        REQUIRE_FALSE(rep.admissible());
    }
}

TEST_CASE("eval_poly agrees with the direct cosine sum", "[trigpoly]") {
    const zfr::TrigPoly p = zfr::mt16();
    for (int i = 0; i <= 1000; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / 1000.0;
        REQUIRE(zfr::eval_poly(p, phi) == Catch::Approx(naive_eval(p, phi)).margin(1e-12));
    }
    // Value at zero is the plain coefficient sum.
    double sum = 0.0;
    for (double a : p.coeffs) sum += a;
    REQUIRE(zfr::eval_poly(p, 0.0) == Catch::Approx(sum).margin(1e-12));
}

TEST_CASE("embedded degree-16 polynomial is admissible", "[trigpoly]") {
    const zfr::BoundConfig cfg;
    const auto rep = zfr::verify_admissible(zfr::mt16(), cfg);
    REQUIRE(rep.coeff_sign_ok);
    REQUIRE(rep.a0_lt_a1_ok);
    REQUIRE(rep.nonneg_ok);
    REQUIRE(rep.admissible());
    // The certified lower bound is slightly negative (the polynomial dips to
    // about -2.006e-4 near phi ~ 2.06) but stays inside the documented
    // tolerance; the witness must sit in the principal period.
    REQUIRE(rep.min_value_lower_bound < 0.0);
    REQUIRE(rep.min_value_lower_bound >= -cfg.nonneg_tol);
    REQUIRE(rep.witness_phi >= 0.0);
    REQUIRE(rep.witness_phi < 2.0 * std::numbers::pi);
    REQUIRE(zfr::eval_poly(zfr::mt16(), rep.witness_phi) < 0.0);
}

TEST_CASE("admissibility rejects a0 >= a1 and genuine negativity", "[trigpoly]") {
    const zfr::BoundConfig cfg;
    SECTION("a0 >= a1") {
        zfr::TrigPoly p{2, {1.0, 0.5, 0.1}};  // nonnegative but a0 > a1
        const auto rep = zfr::verify_admissible(p, cfg);
        REQUIRE(rep.coeff_sign_ok);
        REQUIRE_FALSE(rep.a0_lt_a1_ok);
        REQUIRE_FALSE(rep.admissible());
    }
    SECTION("polynomial with a deep negative dip") {
        zfr::TrigPoly p{1, {0.1, 1.0}};  // 0.1 + cos(phi) dips to -0.9
        const auto rep = zfr::verify_admissible(p, cfg);
        REQUIRE_FALSE(rep.nonneg_ok);
        REQUIRE(rep.min_value_lower_bound < -0.8);
        REQUIRE(zfr::eval_poly(p, rep.witness_phi) ==
                Catch::Approx(-0.9).margin(1e-6));
        REQUIRE_FALSE(rep.admissible());
    }
    SECTION("Fejer kernel is certified admissible for degree >= 2") {
        for (int n : {2, 3, 5, 16}) {
            const auto rep = zfr::verify_admissible(zfr::fejer_start(n), cfg);
            REQUIRE(rep.admissible());
        }
        // Degree 1 degenerates to a0 = a1 and leaves the class.
        const auto rep1 = zfr::verify_admissible(zfr::fejer_start(1), cfg);
        REQUIRE(rep1.nonneg_ok);
        REQUIRE_FALSE(rep1.a0_lt_a1_ok);
    }
}

TEST_CASE("grid refinement tightens the certified lower bound", "[trigpoly]") {
    const zfr::BoundConfig cfg;
    const auto coarse = zfr::verify_admissible(zfr::mt16(), cfg, 10'001);
    const auto fine = zfr::verify_admissible(zfr::mt16(), cfg, 1'000'001);
    // Both are valid lower bounds of the same minimum, and the fine grid's
    // Lipschitz correction is smaller, so its bound is at least as large.
    REQUIRE(fine.min_value_lower_bound >= coarse.min_value_lower_bound);
    REQUIRE(fine.min_value_lower_bound >= -cfg.nonneg_tol);
}

TEST_CASE("polynomial JSON round-trip is bit-exact", "[trigpoly]") {
    for (const zfr::TrigPoly& p : {zfr::mt16(), zfr::comparison_degree4()}) {
        const auto q = zfr::parse_poly_json(zfr::serialize_poly_json(p));
        REQUIRE(q.degree == p.degree);
        for (std::size_t i = 0; i < p.coeffs.size(); ++i)
            REQUIRE(q.coeffs[i] == p.coeffs[i]);
    }
}

TEST_CASE("data fixtures parse bit-identical to the embedded polynomials", "[trigpoly]") {
    const auto m = zfr::load_poly_file(data_path("mt16.json"));
    const auto b = zfr::mt16();
    REQUIRE(m.degree == b.degree);
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) REQUIRE(m.coeffs[i] == b.coeffs[i]);

    const auto q = zfr::load_poly_file(data_path("p4.json"));
    const auto d4 = zfr::comparison_degree4();
    REQUIRE(q.degree == d4.degree);
    for (std::size_t i = 0; i < d4.coeffs.size(); ++i) REQUIRE(q.coeffs[i] == d4.coeffs[i]);
}

TEST_CASE("polynomial JSON parser rejects malformed input", "[trigpoly]") {
    using zfr::parse_poly_json;
    REQUIRE_THROWS_AS(parse_poly_json("not json at all"), zfr::parse_error);
    REQUIRE_THROWS_AS(parse_poly_json(R"({"coeffs": ["1", "2"]})"), zfr::parse_error);
    REQUIRE_THROWS_AS(parse_poly_json(R"({"degree": 1})"), zfr::parse_error);
    REQUIRE_THROWS_AS(parse_poly_json(R"({"degree": 2, "coeffs": ["1", "2"]})"),
                      zfr::parse_error);  // length != degree+1
    REQUIRE_THROWS_AS(parse_poly_json(R"({"degree": 1, "coeffs": ["1", "oops"]})"),
                      zfr::parse_error);
    REQUIRE_THROWS_AS(parse_poly_json(R"({"degree": 1, "coeffs": [1.0, 2.5]})"),
                      zfr::parse_error);  // coefficients must be strings
    // A negative coefficient is syntactically fine; it fails the *class*
    // check, not the parse (verify-poly exits 1 for it, not 2).
    const auto neg = parse_poly_json(R"({"degree": 1, "coeffs": ["1", "-2"]})");
    REQUIRE_FALSE(zfr::verify_admissible(neg, zfr::BoundConfig{}).coeff_sign_ok);
    REQUIRE_THROWS_AS(zfr::load_poly_file("/nonexistent/poly.json"), zfr::parse_error);
    // Unknown keys are tolerated (the fixtures carry a "name" field).
    const auto p = parse_poly_json(R"({"degree": 1, "coeffs": ["1", "2.5"], "name": "x"})");
    REQUIRE(p.coeffs[1] == 2.5);
}

TEST_CASE("BoundConfig::validate guards every knob", "[trigpoly]") {
    zfr::BoundConfig cfg;
    REQUIRE_NOTHROW(cfg.validate());
    SECTION("epsilon out of range") {
        cfg.epsilon = 0.0;
        REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
        cfg.epsilon = 0.150001;
        REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
    }
    SECTION("kmax below one") {
        cfg.kmax = 0;
        REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
    }
    SECTION("grid too small") {
        cfg.grid_points_t = 1;
        REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
    }
    SECTION("negative tolerance") {
        cfg.nonneg_tol = -1e-9;
        REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
    }
}
