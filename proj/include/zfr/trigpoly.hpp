#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zfr/compensated.hpp"
#include "zfr/config.hpp"
#include "zfr/parallel.hpp"

namespace zfr {

// Cosine polynomial p(phi) = sum_{k=0}^{n} a_k cos(k phi).
struct TrigPoly {
    int degree = 0;
    std::vector<double> coeffs;  // a_0 ... a_n

    void validate() const {
        if (degree < 0) throw std::invalid_argument("degree must be non-negative");
        if (coeffs.size() != static_cast<std::size_t>(degree) + 1)
            throw std::invalid_argument("coeffs must have degree+1 entries");
        for (double a : coeffs)
            if (!std::isfinite(a))
                throw std::invalid_argument("coefficients must be finite");
    }
};

struct AdmissibilityReport {
    bool nonneg_ok = false;
    bool coeff_sign_ok = false;
    bool a0_lt_a1_ok = false;
    double min_value_lower_bound = 0.0;  // grid minimum minus Lipschitz slack
    double witness_phi = 0.0;            // angle of the grid minimum

    bool admissible() const { return nonneg_ok && coeff_sign_ok && a0_lt_a1_ok; }
};

// Direct evaluation with compensated summation; the coefficient tables mix
// magnitudes from 1 down to 1e-26.
inline double eval_poly(const TrigPoly& p, double phi) {
    p.validate();
    compensated_sum acc;
    for (int k = 0; k <= p.degree; ++k)
        acc.add(p.coeffs[static_cast<std::size_t>(k)] * std::cos(k * phi));
    return acc.value();
}

namespace detail {

// Grid evaluator: cos(k phi) by the Chebyshev three-term recurrence.  Error
// grows like k*eps, orders of magnitude below any admissibility tolerance,
// and avoids degree+1 cos calls per grid point.
inline double eval_poly_recurrence(const std::vector<double>& a, double phi) {
    double s = a[0];
    if (a.size() == 1) return s;
    const double c = std::cos(phi);
    double ckm1 = 1.0, ck = c;
    s += a[1] * c;
    for (std::size_t k = 2; k < a.size(); ++k) {
        const double ckp = 2.0 * c * ck - ckm1;
        ckm1 = ck;
        ck = ckp;
        s += a[k] * ck;
    }
    return s;
}

} // namespace detail

// Certifies membership in the class P_n: p >= 0 on [0,pi] (even symmetry
// covers the rest), a_k >= 0, a_0 < a_1.  The grid minimum is corrected by
// the Lipschitz slack L*h/2 with L = sum k*a_k, so min_value_lower_bound is a
// true lower bound for p on [0,pi].
inline AdmissibilityReport verify_admissible(const TrigPoly& p, const BoundConfig& cfg,
                                             std::size_t grid_points = 1'000'001) {
    p.validate();
    cfg.validate();
    if (grid_points < 2) throw std::invalid_argument("verification grid needs >= 2 points");

    AdmissibilityReport rep;
    rep.coeff_sign_ok = true;
    for (double a : p.coeffs)
        if (a < 0.0) rep.coeff_sign_ok = false;
    rep.a0_lt_a1_ok = p.degree >= 1 && p.coeffs[0] < p.coeffs[1];

    const double h = std::numbers::pi / static_cast<double>(grid_points - 1);
    const unsigned workers = thread_count();
    std::vector<double> mins(workers, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> argmins(workers, 0);
    parallel_chunks(grid_points, [&](std::size_t lo, std::size_t hi, unsigned w) {
        double m = std::numeric_limits<double>::infinity();
        std::size_t mi = lo;
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = detail::eval_poly_recurrence(p.coeffs, static_cast<double>(i) * h);
            if (v < m) { m = v; mi = i; }
        }
        mins[w] = m;
        argmins[w] = mi;
    });
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t gargmin = 0;
    for (unsigned w = 0; w < workers; ++w)
        if (mins[w] < gmin) { gmin = mins[w]; gargmin = argmins[w]; }

    double lipschitz = 0.0;
    for (int k = 1; k <= p.degree; ++k)
        lipschitz += k * p.coeffs[static_cast<std::size_t>(k)];
    rep.min_value_lower_bound = gmin - lipschitz * h / 2.0;
    rep.witness_phi = static_cast<double>(gargmin) * h;
    rep.nonneg_ok = rep.min_value_lower_bound >= -cfg.nonneg_tol;
    return rep;
}

// --- file format -----------------------------------------------------------
//
// {"degree": n, "coeffs": ["a0", "a1", ...]}  with decimal-string entries so
// values ingest at full binary64 precision regardless of producer rounding.

inline TrigPoly parse_poly_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("polynomial file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
        throw parse_error("polynomial file must be an object with \"degree\" and \"coeffs\"");
    if (!j["degree"].is_number_integer())
        throw parse_error("\"degree\" must be an integer");
    if (!j["coeffs"].is_array())
        throw parse_error("\"coeffs\" must be an array of decimal strings");

    TrigPoly p;
    p.degree = j["degree"].get<int>();
    for (const auto& entry : j["coeffs"]) {
        if (!entry.is_string())
            throw parse_error("coefficients must be decimal strings");
        const std::string s = entry.get<std::string>();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || (end && *end != '\0'))
            throw parse_error("coefficient is not a decimal number: \"" + s + "\"");
        p.coeffs.push_back(v);
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
    return p;
}

inline TrigPoly load_poly_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open polynomial file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_poly_json(ss.str());
}

inline std::string serialize_poly_json(const TrigPoly& p) {
    p.validate();
    nlohmann::json j;
    j["degree"] = p.degree;
    auto arr = nlohmann::json::array();
    for (double a : p.coeffs) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", a);
        arr.push_back(std::string(buf));
    }
    j["coeffs"] = arr;
    return j.dump(2) + "\n";
}

} // namespace zfr
