#pragma once

#include <stdexcept>

namespace zfr {

// Error raised when a numerical audit (grid maximization, monotonicity)
// contradicts a claimed bound.  Callers treat this as a check failure, not a
// usage error.
class audit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Error raised when an input file does not conform to the polynomial format.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shared knobs for every bound computation.
//
// nonneg_tol: the published degree-16 coefficients evaluate to a polynomial
// whose true minimum is -2.0057e-4 (the printed coefficients are rounded;
// the exact optimized polynomial is non-negative).  The default tolerance
// admits that slack; tighten it when certifying polynomials you control.
struct BoundConfig {
    double epsilon = 0.01;        // range (0, 0.15]
    int kmax = 16;                // matches the polynomial degree in use
    int grid_points_t = 400;      // audit grid resolution in t
    int grid_points_sigma = 400;  // audit grid resolution in sigma
    double nonneg_tol = 2.5e-4;   // admissibility slack (see note above)
    int table_round_dp = 8;       // directed rounding for published tables

    void validate() const {
        if (!(epsilon > 0.0) || !(epsilon <= 0.15))
            throw std::domain_error("epsilon must lie in (0, 0.15]");
        if (kmax < 1) throw std::domain_error("kmax must be positive");
        if (grid_points_t < 2 || grid_points_sigma < 2)
            throw std::domain_error("audit grids need at least 2 points per axis");
        if (!(nonneg_tol > 0.0)) throw std::domain_error("nonneg_tol must be positive");
        if (table_round_dp < 1) throw std::domain_error("table_round_dp must be positive");
    }
};

} // namespace zfr
