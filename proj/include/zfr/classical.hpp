#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "zfr/compensated.hpp"
#include "zfr/config.hpp"
#include "zfr/digamma.hpp"
#include "zfr/trigpoly.hpp"

namespace zfr {

// kappa = 1/sqrt(5), the extremal constant of the differencing trick.
inline double kappa() { return 1.0 / std::sqrt(5.0); }

// (1-kappa)/2 multiplies every log d_L contribution.
inline double half_one_minus_kappa() { return (1.0 - kappa()) / 2.0; }

// sigma1 = (1 + sqrt(1 + 4 sigma^2))/2, the shifted abscissa; the positive
// root of x^2 - x = sigma^2.  sigma1(1) is the golden ratio.
inline double sigma1(double sigma) {
    if (!std::isfinite(sigma) || sigma < 0.0)
        throw std::domain_error("sigma1 requires finite sigma >= 0");
    return (1.0 + std::sqrt(1.0 + 4.0 * sigma * sigma)) / 2.0;
}

// F(s,z) = Re(1/(s-z) + 1/(s-1+conj(z))).
inline double eval_F(double s_re, double s_im, double z_re, double z_im) {
    const std::complex<double> s(s_re, s_im), z(z_re, z_im);
    const std::complex<double> d1 = s - z;
    const std::complex<double> d2 = s - 1.0 + std::conj(z);
    if (std::norm(d1) == 0.0 || std::norm(d2) == 0.0)
        throw std::domain_error("eval_F pole: s = z or s = 1 - conj(z)");
    return (1.0 / d1).real() + (1.0 / d2).real();
}

// g(sigma, beta) = -1/(sigma-1+beta) + kappa/(sigma1-beta) + kappa/(sigma1-1+beta).
// g(1,1) = 0 exactly by the golden-ratio identity kappa*(phi + 1/phi) = 1;
// on the rest of the audit box it is strictly negative.
inline double stechkin_gap(double sigma, double beta) {
    if (!(sigma >= 1.0) || !(sigma <= 1.15))
        throw std::domain_error("stechkin_gap requires sigma in [1, 1.15]");
    if (!(beta >= 0.85) || !(beta <= 1.0))
        throw std::domain_error("stechkin_gap requires beta in [0.85, 1]");
    const double s1 = sigma1(sigma);
    if (s1 == beta) throw std::domain_error("stechkin_gap pole: sigma1 = beta");
    return -1.0 / (sigma - 1.0 + beta) + kappa() / (s1 - beta) + kappa() / (s1 - 1.0 + beta);
}

// h(sigma) = 1/sigma - kappa/sigma1 - kappa/(sigma1 - 1); Sigma_0 = 1/(sigma-1) + h.
inline double h_func(double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("h_func requires sigma > 0");
    const double s1 = sigma1(sigma);
    return 1.0 / sigma - kappa() / s1 - kappa() / (s1 - 1.0);
}

// alpha_eps = h(1+eps).  The published prose states "< 0.021467"; the exact
// value at eps = 0.15 is 0.0214699497..., and the published c4 values are
// reproducible only with the exact value, so that is what we return.
inline double alpha_eps(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon <= 0.15))
        throw std::domain_error("alpha_eps requires epsilon in (0, 0.15]");
    return h_func(1.0 + epsilon);
}

namespace detail {

inline double Sigma_k_with_s1(double sigma, double s1, double kt2) {
    return sigma / (sigma * sigma + kt2) + (sigma - 1.0) / ((sigma - 1.0) * (sigma - 1.0) + kt2) -
           kappa() * s1 / (s1 * s1 + kt2) -
           kappa() * (s1 - 1.0) / ((s1 - 1.0) * (s1 - 1.0) + kt2);
}

} // namespace detail

// Sigma_k(sigma,t) = F(sigma+ikt, 1) - kappa F(sigma1+ikt, 1).
inline double Sigma_k(double sigma, double t, int k) {
    if (k < 0) throw std::domain_error("Sigma_k requires k >= 0");
    if (k == 0 && sigma == 1.0) throw std::domain_error("Sigma_0 pole at sigma = 1");
    const double kt = static_cast<double>(k) * t;
    return detail::Sigma_k_with_s1(sigma, sigma1(sigma), kt * kt);
}

// Directed rounding: smallest multiple of 10^-dp at or above x, nudged by one
// ulp before the ceiling so a product that rounded *down* across an integer
// boundary still lands on the admissible side.
inline double round_up_dp(double x, int dp) {
    const double scale = std::pow(10.0, dp);
    double y = x * scale;
    y = std::nextafter(y, std::numeric_limits<double>::infinity());
    return std::ceil(y) / scale;
}

// --- maximization audits ----------------------------------------------------
//
// The table bounds rest on "the maximum of Sigma_k(sigma,t) occurs at
// sigma = 1+eps and t = 1" and the matching claim for Xi_2.  Both claims are
// re-checked on a grid before any table is emitted; a failure throws rather
// than emitting a table that silently overstates the bounds.

inline constexpr double audit_tol = 1e-10;

namespace detail {

template <typename F>
void audit_corner_max(const BoundConfig& cfg, double corner, F&& value_at,
                      const std::string& label) {
    const double sig_lo = 1.0 + 1e-6, sig_hi = 1.0 + cfg.epsilon;
    const double t_lo = 1.0, t_hi = 100.0;
    const int ns = cfg.grid_points_sigma, nt = cfg.grid_points_t;
    for (int i = 0; i < ns; ++i) {
        const double sigma = sig_lo + (sig_hi - sig_lo) * i / (ns - 1);
        const double s1 = sigma1(sigma);
        for (int j = 0; j < nt; ++j) {
            const double t = t_lo + (t_hi - t_lo) * j / (nt - 1);
            const double v = value_at(sigma, s1, t);
            if (v > corner + audit_tol)
                throw audit_error(label + ": grid value " + std::to_string(v) +
                                  " exceeds the claimed corner maximum " +
                                  std::to_string(corner) + " at sigma=" +
                                  std::to_string(sigma) + ", t=" + std::to_string(t));
        }
    }
}

} // namespace detail

// Grid audit for Sigma_k: maximum over [1+1e-6, 1+eps] x [1, 100] must sit at
// (1+eps, 1); also checks the t->infinity tail.
inline void sigma_k_audit(const BoundConfig& cfg) {
    cfg.validate();
    for (int k = 1; k <= cfg.kmax; ++k) {
        const double corner = Sigma_k(1.0 + cfg.epsilon, 1.0, k);
        detail::audit_corner_max(
            cfg, corner,
            [k](double sigma, double s1, double t) {
                const double kt = k * t;
                return detail::Sigma_k_with_s1(sigma, s1, kt * kt);
            },
            "Sigma_" + std::to_string(k) + " maximization audit");
        if (Sigma_k(1.0 + cfg.epsilon, 1e9, k) >= corner)
            throw audit_error("Sigma_" + std::to_string(k) + " t->infinity check failed");
    }
}

// B_eps(k) = Sigma_k(1+eps, 1) rounded up at table_round_dp places, k = 1..kmax.
inline std::vector<double> B_eps_table(const BoundConfig& cfg) {
    cfg.validate();
    sigma_k_audit(cfg);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(cfg.kmax));
    for (int k = 1; k <= cfg.kmax; ++k)
        out.push_back(round_up_dp(Sigma_k(1.0 + cfg.epsilon, 1.0, k), cfg.table_round_dp));
    return out;
}

// d_eps(0) = max over delta in {0,1} of (psi((1+eps+delta)/2) -
// kappa psi((sigma1(1+eps)+delta)/2)) / 2.
inline double d_eps0(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon <= 0.15))
        throw std::domain_error("d_eps0 requires epsilon in (0, 0.15]");
    const double s1 = sigma1(1.0 + epsilon);
    double best = -std::numeric_limits<double>::infinity();
    for (int delta = 0; delta <= 1; ++delta) {
        const double v = (digamma((1.0 + epsilon + delta) / 2.0).value -
                          kappa() * digamma((s1 + delta) / 2.0).value) / 2.0;
        best = std::max(best, v);
    }
    return best;
}

// --- the two Xi bounds on the gamma-factor difference ------------------------

namespace detail {

inline double Xi1_with_s1(double sigma, double s1, double k, double t, double delta) {
    const double kt2 = (k * t) * (k * t);
    const double sd = sigma + delta, s1d = s1 + delta;
    return -sd / (2.0 * (sd * sd + kt2)) + kappa() * s1d / (2.0 * (s1d * s1d + kt2));
}

inline double Xi2_with_s1(double sigma, double s1, double k, double t, double delta) {
    const double kt = k * t;
    const double sd = (sigma + delta) / kt, s1d = (s1 + delta) / kt;
    return std::log1p(sd * sd) / 4.0 - kappa() * std::log1p(s1d * s1d) / 4.0;
}

} // namespace detail

// Rational part; non-positive on the whole domain (audited, not assumed).
inline double Xi1(double sigma, int k, double t, int delta) {
    if (k < 1 || t <= 0.0 || (delta != 0 && delta != 1))
        throw std::domain_error("Xi1 requires k >= 1, t > 0, delta in {0,1}");
    return detail::Xi1_with_s1(sigma, sigma1(sigma), k, t, delta);
}

// Logarithmic part.  Its published characterization ("positive for t >= 1 and
// decreasing in t", hence maximal at (1+eps, 1)) holds only where the corner
// value is positive; for delta = 0 and larger k the corner value is negative
// while Xi2 -> 0^- as t grows, so the corner is *not* the maximum there.  The
// certified invariant, checked by xi2_audit, is
//   Xi2(sigma,k,t,delta) <= max(Xi2(1+eps,k,1,delta), 0)
// on the whole box (and the same cap bounds Xi = Xi1 + Xi2, since Xi1 <= 0).
inline double Xi2(double sigma, int k, double t, int delta) {
    if (k < 1 || t <= 0.0 || (delta != 0 && delta != 1))
        throw std::domain_error("Xi2 requires k >= 1, t > 0, delta in {0,1}");
    return detail::Xi2_with_s1(sigma, sigma1(sigma), k, t, delta);
}

inline double Xi(double sigma, int k, double t, int delta) {
    return Xi1(sigma, k, t, delta) + Xi2(sigma, k, t, delta);
}

// Grid audit for Xi2, same box as sigma_k_audit but against the capped bound
// max(corner, 0): the published corner-maximum claim fails for delta = 0 at
// larger k (the corner value is negative there while Xi2 -> 0^- as t -> inf),
// so the corner alone is not a valid supremum.  See the Xi2 doc comment.
inline void xi2_audit(const BoundConfig& cfg) {
    cfg.validate();
    for (int k = 1; k <= cfg.kmax; ++k) {
        for (int delta = 0; delta <= 1; ++delta) {
            const double corner = Xi2(1.0 + cfg.epsilon, k, 1.0, delta);
            detail::audit_corner_max(
                cfg, std::max(corner, 0.0),
                [k, delta](double sigma, double s1, double t) {
                    return detail::Xi2_with_s1(sigma, s1, k, t, delta);
                },
                "Xi2 bound audit (k=" + std::to_string(k) +
                    ", delta=" + std::to_string(delta) + ")");
        }
    }
}

// t_k(eps): the root, if any, of dXi(1+eps,k,t,1)/dt on [1, infinity); the
// derivative is taken by central differences and the root located by scan +
// bisection.  Returns 1 when the derivative is already non-negative at t = 1.
inline double t_star(int k, double epsilon) {
    if (k < 1 || k > 3) throw std::domain_error("t_star is defined for k in {1,2,3}");
    if (!(epsilon > 0.0) || !(epsilon <= 0.15))
        throw std::domain_error("t_star requires epsilon in (0, 0.15]");
    const double sigma = 1.0 + epsilon;
    const double fd_step = 1e-6;
    auto dXi_dt = [&](double t) {
        return (Xi(sigma, k, t + fd_step, 1) - Xi(sigma, k, t - fd_step, 1)) / (2.0 * fd_step);
    };
    if (dXi_dt(1.0) >= 0.0) return 1.0;

    const double scan_step = 1e-2, scan_max = 100.0;
    double lo = 1.0, hi = 0.0;
    int sign_changes = 0;
    double prev_t = 1.0, prev_v = dXi_dt(1.0);
    for (double t = 1.0 + scan_step; t <= scan_max; t += scan_step) {
        const double v = dXi_dt(t);
        if ((prev_v < 0.0) != (v < 0.0)) {
            ++sign_changes;
            if (sign_changes == 1) { lo = prev_t; hi = t; }
        }
        prev_t = t;
        prev_v = v;
    }
    if (sign_changes == 0)
        throw audit_error("t_star: derivative negative on the whole scan range");
    if (sign_changes > 1)
        throw audit_error("t_star: multiple derivative sign changes, root not unique");
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (dXi_dt(mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// A(k,delta,eps), the closed bound on Xi used by Method II.  The k = 2 case
// is pinned at sigma = 1.15 (not 1+eps) in the published derivation.
inline double A_bound(int k, int delta, double epsilon) {
    if (k < 1 || (delta != 0 && delta != 1))
        throw std::domain_error("A_bound requires k >= 1 and delta in {0,1}");
    if (!(epsilon > 0.0) || !(epsilon <= 0.15))
        throw std::domain_error("A_bound requires epsilon in (0, 0.15]");
    if (delta == 0) return 0.0;
    if (k == 1) return Xi(1.0 + epsilon, 1, 1.0, 1);
    if (k == 2) return Xi(1.15, 2, 1.0, 1);
    return 0.0;
}

namespace detail {

// Shared tail of both C-bounds: (1-kappa)/2 log(k/2) plus the two arctan
// corrections with the worst-case |theta_i| = 1.
inline double C_common(int k, int delta) {
    const double kd = static_cast<double>(k);
    const double phi = sigma1(1.0);
    return half_one_minus_kappa() * std::log(kd / 2.0) +
           (std::numbers::pi / 2.0 - std::atan((1.0 + delta) / kd)) / (2.0 * kd) +
           kappa() * (std::numbers::pi / 2.0 - std::atan((phi + delta) / kd)) / (2.0 * kd);
}

} // namespace detail

// Method I per-delta bound, and its delta-maximum S1(k, eps).
inline double S1k(int k, double epsilon) {
    if (k < 1) throw std::domain_error("S1k requires k >= 1");
    double best = -std::numeric_limits<double>::infinity();
    for (int delta = 0; delta <= 1; ++delta)
        best = std::max(best, detail::C_common(k, delta) + Xi2(1.0 + epsilon, k, 1.0, delta));
    return best;
}

// Method II per-delta bound, and its delta-maximum S2(k, eps).
inline double S2k(int k, double epsilon) {
    if (k < 1) throw std::domain_error("S2k requires k >= 1");
    double best = -std::numeric_limits<double>::infinity();
    for (int delta = 0; delta <= 1; ++delta)
        best = std::max(best, detail::C_common(k, delta) + A_bound(k, delta, epsilon));
    return best;
}

inline double Sk(int k, double epsilon) { return std::min(S1k(k, epsilon), S2k(k, epsilon)); }

// --- assembled tables and constants ------------------------------------------

struct GammaBoundRow {
    int k = 0;
    double B_raw = 0.0;      // Sigma_k(1+eps, 1), unrounded
    double B_eps = 0.0;      // directed-rounded admissible value
    double S1 = 0.0;
    double S2 = 0.0;
    double S = 0.0;
};

struct GammaBoundTable {
    double epsilon = 0.0;
    double alpha_eps = 0.0;
    double d_eps0 = 0.0;
    std::vector<GammaBoundRow> rows;  // k = 1..kmax
};

// Runs both maximization audits, then assembles every per-k bound.
inline GammaBoundTable gamma_bound_table(const BoundConfig& cfg) {
    cfg.validate();
    sigma_k_audit(cfg);
    xi2_audit(cfg);
    GammaBoundTable tab;
    tab.epsilon = cfg.epsilon;
    tab.alpha_eps = alpha_eps(cfg.epsilon);
    tab.d_eps0 = d_eps0(cfg.epsilon);
    tab.rows.reserve(static_cast<std::size_t>(cfg.kmax));
    for (int k = 1; k <= cfg.kmax; ++k) {
        GammaBoundRow row;
        row.k = k;
        row.B_raw = Sigma_k(1.0 + cfg.epsilon, 1.0, k);
        row.B_eps = round_up_dp(row.B_raw, cfg.table_round_dp);
        row.S1 = S1k(k, cfg.epsilon);
        row.S2 = S2k(k, cfg.epsilon);
        row.S = std::min(row.S1, row.S2);
        tab.rows.push_back(row);
    }
    return tab;
}

struct RegionConstants {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    double M = 0.0;
    double r_star = 0.0;                       // maximizer behind M
    double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0;
    std::array<double, 4> published{};         // directed-rounded C_i
};

// Publication rounding: ceiling at 4 decimal places, 5 when the value is
// below 0.1 (keeps at least four significant digits).
inline double publication_round_up(double x) {
    return round_up_dp(x, std::abs(x) < 0.1 ? 5 : 4);
}

// The Theorem-1.1 constants for a given polynomial:
//   c1 = (1-kappa)/2 sum a_k,  c2 = (1-kappa)/2 sum_{k>=1} a_k,
//   c3 = a0 (d_eps(0) - (1-kappa)/2 log pi) + sum a_k ((1-kappa)/2 log(k/pi) + S(k,eps)),
//   c4 = alpha_eps a0 + sum a_k Sigma_k(1+eps, 1),
//   M  = a1/(1+r*) - a0/r*  with  r* = sqrt(a0)/(sqrt(a1) - sqrt(a0)).
// c4 uses the unrounded Sigma values: the published constants reproduce to
// ~1e-8 that way (vs ~2e-7 through the rounded table).
inline RegionConstants region_constants(const TrigPoly& p, const BoundConfig& cfg) {
    BoundConfig local = cfg;
    local.kmax = p.degree;
    local.validate();
    const AdmissibilityReport rep = verify_admissible(p, local);
    if (!rep.admissible())
        throw std::invalid_argument("region_constants requires an admissible polynomial");
    const GammaBoundTable tab = gamma_bound_table(local);

    const auto& a = p.coeffs;
    RegionConstants rc;
    compensated_sum all, tail, c3s, c4s;
    for (int k = 0; k <= p.degree; ++k) {
        const double ak = a[static_cast<std::size_t>(k)];
        all.add(ak);
        if (k >= 1) {
            const auto& row = tab.rows[static_cast<std::size_t>(k - 1)];
            tail.add(ak);
            c3s.add(ak * (half_one_minus_kappa() * std::log(k / std::numbers::pi) + row.S));
            c4s.add(ak * row.B_raw);
        }
    }
    rc.c1 = half_one_minus_kappa() * all.value();
    rc.c2 = half_one_minus_kappa() * tail.value();
    rc.c3 = a[0] * (tab.d_eps0 - half_one_minus_kappa() * std::log(std::numbers::pi)) + c3s.value();
    rc.c4 = tab.alpha_eps * a[0] + c4s.value();

    rc.r_star = std::sqrt(a[0]) / (std::sqrt(a[1]) - std::sqrt(a[0]));
    rc.M = a[1] / (1.0 + rc.r_star) - a[0] / rc.r_star;

    rc.C1 = rc.c1 / rc.M;
    rc.C2 = rc.c2 / rc.M;
    rc.C3 = rc.c3 / rc.M;
    rc.C4 = rc.c4 / rc.M;
    rc.published = {publication_round_up(rc.C1), publication_round_up(rc.C2),
                    publication_round_up(rc.C3), publication_round_up(rc.C4)};
    return rc;
}

// Width of the zero-free region at (d_L, n_L, t):
// 1/(C1 log d_L + C2 n_L log t + C3 n_L + C4).
inline double zero_free_width(const RegionConstants& consts, double logdL, int nL, double t) {
    if (!(logdL >= 0.0)) throw std::domain_error("zero_free_width requires log d_L >= 0");
    if (nL < 1) throw std::domain_error("zero_free_width requires n_L >= 1");
    if (!(t >= 1.0)) throw std::domain_error("zero_free_width requires t >= 1");
    const double denom =
        consts.C1 * logdL + consts.C2 * nL * std::log(t) + consts.C3 * nL + consts.C4;
    if (!(denom > 0.0)) throw std::domain_error("zero_free_width: non-positive denominator");
    return 1.0 / denom;
}

} // namespace zfr
