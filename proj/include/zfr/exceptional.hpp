#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "zfr/classical.hpp"
#include "zfr/compensated.hpp"
#include "zfr/parallel.hpp"
#include "zfr/trigpoly.hpp"

namespace zfr {

// Partition of the low-height ordinates t*log(dL) into (0, d1], (d1, d2] and
// (d2, log dL); the three regions are analyzed separately.
struct RegionSplit {
    double d1 = 0.0;
    double d2 = 0.0;

    void validate() const {
        if (!std::isfinite(d1) || !std::isfinite(d2) || !(d1 > 0.0) || !(d2 > d1))
            throw std::domain_error("RegionSplit requires 0 < d1 < d2");
    }
};

// Everything the low-height pipeline reports for one split: the three
// per-region optima, the constraint audit for regions B and C, and the number
// of sign changes the root scanner saw (root uniqueness is observed, not
// assumed).
struct ExceptionalResult {
    RegionSplit split;
    double rA = 0.0, cA = 0.0, invA = 0.0;
    double rB = 0.0, cB = 0.0, invB = 0.0;
    double rC = 0.0, cC = 0.0, invC = 0.0;
    double R = 0.0;
    bool constraints_ok_B = false;
    bool constraints_ok_C = false;
    int sign_changes_B = 0;
    int sign_changes_C = 0;
};

// Smallest admissible c on region A:
//   c = (sqrt(r^2 - d1^2 (1+Br)^2) - B r^2) / (1 + Br),  B = (1-kappa)/2,
// the positive root of the region-A inequality 0 <= 1/r - 2(r+c)/((r+c)^2+d1^2) + B.
inline double cA_closed_form(double d1, double r) {
    if (!(d1 > 0.0) || !(r > 0.0))
        throw std::domain_error("cA_closed_form requires d1 > 0 and r > 0");
    const double B = half_one_minus_kappa();
    const double disc = r * r - d1 * d1 * (1.0 + B * r) * (1.0 + B * r);
    if (disc < 0.0)
        throw std::domain_error("cA_closed_form: negative discriminant (r too small for d1)");
    return (std::sqrt(disc) - B * r * r) / (1.0 + B * r);
}

struct CAOptimum {
    double r_star = 0.0;
    double cA = 0.0;
    double inv_cA = 0.0;
};

// Minimizes 1/cA over r in (d1, 10]: coarse grid of step 1e-4, then
// golden-section refinement of the best cell down to an r-interval of 1e-6.
inline CAOptimum optimize_cA(double d1) {
    if (!(d1 > 0.0)) throw std::domain_error("optimize_cA requires d1 > 0");
    const double B = half_one_minus_kappa();
    auto c_of = [&](double r) -> double {
        const double disc = r * r - d1 * d1 * (1.0 + B * r) * (1.0 + B * r);
        if (disc < 0.0) return -1.0;
        return (std::sqrt(disc) - B * r * r) / (1.0 + B * r);
    };
    const double step = 1e-4;
    double best_r = 0.0, best_inv = std::numeric_limits<double>::infinity();
    for (double r = d1 + step; r <= 10.0 + step / 2; r += step) {
        const double rr = std::min(r, 10.0);
        const double c = c_of(rr);
        if (c > 0.0 && 1.0 / c < best_inv) {
            best_inv = 1.0 / c;
            best_r = rr;
        }
    }
    if (!(best_inv < std::numeric_limits<double>::infinity()))
        throw std::domain_error("optimize_cA: no feasible r in (d1, 10]");

    // Golden-section on the bracketing cell.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(d1 + step / 2, best_r - step), hi = std::min(10.0, best_r + step);
    auto inv_of = [&](double r) {
        const double c = c_of(r);
        return c > 0.0 ? 1.0 / c : std::numeric_limits<double>::infinity();
    };
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = inv_of(x1), f2 = inv_of(x2);
    while (hi - lo > 1e-6) {
        if (f1 <= f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = inv_of(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = inv_of(x2);
        }
    }
    CAOptimum out;
    out.r_star = 0.5 * (lo + hi);
    out.cA = c_of(out.r_star);
    if (!(out.cA > 0.0)) { out.r_star = best_r; out.cA = c_of(best_r); }
    out.inv_cA = 1.0 / out.cA;
    return out;
}

namespace detail {

inline void check_region_constraints(const TrigPoly& p, double d2, double r, double c) {
    const double a0 = p.coeffs[0], a1 = p.coeffs[1];
    if (!(c > 0.0) || !(c < 1.0))
        throw std::domain_error("region constraint violated: 0 < c < 1");
    if (!(r > 0.0) || !(r < 1.0))
        throw std::domain_error("region constraint violated: 0 < r < 1");
    if (!(a0 / (a1 - a0) * c < r))
        throw std::domain_error("region constraint violated: (a0/(a1-a0)) c < r");
    if (!(d2 > std::sqrt(r * (r + c)) / 2.0))
        throw std::domain_error("region constraint violated: d2 > sqrt(r(r+c))/2");
}

inline double sum_coeffs(const TrigPoly& p) {
    compensated_sum s;
    for (double a : p.coeffs) s.add(a);
    return s.value();
}

} // namespace detail

// E_B(d1, d2, r, c): non-negative exactly when (r, c) is admissible on region B.
inline double eval_EB(const TrigPoly& p, const RegionSplit& split, double r, double c) {
    p.validate();
    split.validate();
    if (p.degree < 2) throw std::domain_error("eval_EB requires degree >= 2");
    detail::check_region_constraints(p, split.d2, r, c);
    const auto& a = p.coeffs;
    const double d1 = split.d1, d2 = split.d2, rc = r + c;
    compensated_sum v;
    v.add(a[0] / r);
    v.add(-a[1] / rc);
    v.add(a[1] * r / (r * r + d1 * d1));
    v.add(-a[0] * rc / (rc * rc + d1 * d1));
    v.add(-a[0] * rc / (rc * rc + d2 * d2));
    v.add(-a[1] * rc / (rc * rc + 4.0 * d2 * d2));
    v.add(half_one_minus_kappa() * detail::sum_coeffs(p));
    for (int k = 2; k <= p.degree; ++k) {
        const double ak = a[static_cast<std::size_t>(k)];
        v.add(ak * (r / (r * r + k * k * d1 * d1) -
                    rc / (rc * rc + (k - 1.0) * (k - 1.0) * d2 * d2) -
                    rc / (rc * rc + (k + 1.0) * (k + 1.0) * d2 * d2)));
    }
    return v.value();
}

// E_C(d2, r, c): the region-C counterpart (only the k = 0, 1 terms survive).
inline double eval_EC(const TrigPoly& p, double d2, double r, double c) {
    p.validate();
    if (!(d2 > 0.0)) throw std::domain_error("eval_EC requires d2 > 0");
    detail::check_region_constraints(p, d2, r, c);
    const auto& a = p.coeffs;
    const double rc = r + c;
    compensated_sum v;
    v.add(a[0] / r);
    v.add(-a[1] / rc);
    v.add(a[1] * r / (r * r + d2 * d2));
    v.add(-a[0] * rc / (rc * rc + d2 * d2));
    v.add(half_one_minus_kappa() * detail::sum_coeffs(p));
    return v.value();
}

// Upper end of the c-scan: the region constraints cap c at min(1, r(a1-a0)/a0).
inline double c_scan_limit(const TrigPoly& p, double r) {
    return std::min(1.0, r * (p.coeffs[1] - p.coeffs[0]) / p.coeffs[0]);
}

// Smallest positive root of c -> E(c) inside (0, c_scan_limit): fixed scan of
// step 1e-6, first bracketing pair, bisection to a 1e-12 interval.  The total
// number of sign changes seen along the scan is reported through
// sign_changes (the scan covers the whole box even after the first bracket).
template <typename EvalC>
double smallest_root_in_c(EvalC&& E, const TrigPoly& p, double r, int* sign_changes = nullptr) {
    const double cmax = c_scan_limit(p, r);
    if (!(cmax > 0.0)) throw std::domain_error("smallest_root_in_c: empty c-interval");
    const double step = 1e-6;
    double lo = 0.0, hi = 0.0;
    int changes = 0;
    double prev_c = step, prev_v = E(prev_c);
    for (double c = 2 * step; c < cmax; c += step) {
        const double v = E(c);
        if ((prev_v < 0.0) != (v < 0.0)) {
            ++changes;
            if (changes == 1) { lo = prev_c; hi = c; }
        }
        prev_c = c;
        prev_v = v;
    }
    if (sign_changes) *sign_changes = changes;
    if (changes == 0) throw std::domain_error("smallest_root_in_c: no sign change in (0, cmax)");
    double flo = E(lo);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = E(mid);
        if ((flo < 0.0) == (fmid < 0.0)) { lo = mid; flo = fmid; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct RegionOptimum {
    double r = 0.0;
    double c = 0.0;
    double inv_c = 0.0;
    int sign_changes = 0;
};

namespace detail {

// Fast inner root finder used only while sweeping r: both E_B and E_C rise
// from negative (c -> 0+, where -a1/(r+c) dominates a0/r) to positive at the
// top of the box, so an endpoint bracket plus bisection finds the same root
// the exhaustive scanner does.  The final optimum is re-derived with the
// exhaustive scanner, which also counts the sign changes this shortcut
// assumes away.
template <typename EvalRC>
double cheap_root(EvalRC&& E, const TrigPoly& p, double r) {
    const double cmax = c_scan_limit(p, r);
    if (!(cmax > 0.0)) return -1.0;
    double lo = 1e-9, hi = cmax * (1.0 - 1e-9);
    double flo, fhi;
    try {
        flo = E(r, lo);
        fhi = E(r, hi);
    } catch (const std::domain_error&) {
        return -1.0;
    }
    if (!(flo < 0.0) || fhi < 0.0) return -1.0;
    for (int it = 0; it < 64 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (E(r, mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

// Minimizes 1/c (the root of c -> E(r, c)) over r in (0, 1): grid of step
// 1e-4, local refinement at 1e-5 and 1e-6, then the exhaustive scanner at the
// winning r.
template <typename EvalRC>
RegionOptimum optimize_region(EvalRC&& E, const TrigPoly& p) {
    const double step = 1e-4;
    double best_r = -1.0, best_inv = std::numeric_limits<double>::infinity();
    for (double r = step; r < 1.0; r += step) {
        const double root = detail::cheap_root(E, p, r);
        if (root > 0.0 && 1.0 / root < best_inv) {
            best_inv = 1.0 / root;
            best_r = r;
        }
    }
    if (best_r < 0.0) throw std::domain_error("optimize_region: no feasible r in (0, 1)");
    for (double fine : {1e-5, 1e-6}) {
        const double r0 = best_r;
        for (int i = -10; i <= 10; ++i) {
            const double r = r0 + i * fine;
            if (!(r > 0.0) || !(r < 1.0)) continue;
            const double root = detail::cheap_root(E, p, r);
            if (root > 0.0 && 1.0 / root < best_inv) {
                best_inv = 1.0 / root;
                best_r = r;
            }
        }
    }
    RegionOptimum out;
    out.r = best_r;
    out.c = smallest_root_in_c([&](double c) { return E(best_r, c); }, p, best_r,
                               &out.sign_changes);
    out.inv_c = 1.0 / out.c;
    return out;
}

namespace detail {

inline bool constraints_hold(const TrigPoly& p, double d2, double r, double c) {
    const double a0 = p.coeffs[0], a1 = p.coeffs[1];
    return c > 0.0 && c < 1.0 && r > 0.0 && r < 1.0 && a0 / (a1 - a0) * c < r &&
           d2 > std::sqrt(r * (r + c)) / 2.0;
}

} // namespace detail

// The full Theorem-1.2 pipeline for one split: region A in closed form,
// regions B and C by root-finding and r-optimization, R = max of the three
// reciprocals.
inline ExceptionalResult compute_R(const TrigPoly& p, const RegionSplit& split) {
    p.validate();
    split.validate();
    if (p.degree < 2) throw std::domain_error("compute_R requires degree >= 2");
    if (!(p.coeffs[1] > p.coeffs[0]))
        throw std::domain_error("compute_R requires a0 < a1");

    ExceptionalResult res;
    res.split = split;

    const CAOptimum A = optimize_cA(split.d1);
    res.rA = A.r_star;
    res.cA = A.cA;
    res.invA = A.inv_cA;

    const RegionOptimum B = optimize_region(
        [&](double r, double c) { return eval_EB(p, split, r, c); }, p);
    res.rB = B.r;
    res.cB = B.c;
    res.invB = B.inv_c;
    res.sign_changes_B = B.sign_changes;
    res.constraints_ok_B = detail::constraints_hold(p, split.d2, B.r, B.c);

    const RegionOptimum C = optimize_region(
        [&](double r, double c) { return eval_EC(p, split.d2, r, c); }, p);
    res.rC = C.r;
    res.cC = C.c;
    res.invC = C.inv_c;
    res.sign_changes_C = C.sign_changes;
    res.constraints_ok_C = detail::constraints_hold(p, split.d2, C.r, C.c);

    res.R = std::max({res.invA, res.invB, res.invC});
    return res;
}

// One evaluated cell of the (d1, d2) search; infeasible cells are kept with
// feasible = false so the emitted CSV shows what was skipped.
struct SplitCell {
    double d1 = 0.0, d2 = 0.0;
    double invA = 0.0, invB = 0.0, invC = 0.0, R = 0.0;
    bool feasible = false;
};

struct SplitSearchResult {
    ExceptionalResult best;
    std::vector<SplitCell> cells;
    std::size_t skipped = 0;
};

// Exhaustive (d1, d2) grid search; defaults follow the printed precision of
// the split values (1e-4 on d1, 1e-3 on d2).  Cells compute independently;
// the argmin is taken in fixed row-major cell order, first strict improvement
// wins, so the result does not depend on scheduling.
inline SplitSearchResult search_split(const TrigPoly& p, double d1_lo, double d1_hi,
                                      double d2_lo, double d2_hi, double d1_step = 1e-4,
                                      double d2_step = 1e-3) {
    if (!(d1_lo > 0.0) || !(d1_hi >= d1_lo) || !(d2_hi >= d2_lo))
        throw std::domain_error("search_split requires 0 < d1_lo <= d1_hi and d2_lo <= d2_hi");
    if (!(d1_step > 0.0) || !(d2_step > 0.0))
        throw std::domain_error("search_split requires positive steps");

    std::vector<RegionSplit> grid;
    const int n1 = static_cast<int>(std::floor((d1_hi - d1_lo) / d1_step + 1e-9)) + 1;
    const int n2 = static_cast<int>(std::floor((d2_hi - d2_lo) / d2_step + 1e-9)) + 1;
    grid.reserve(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            RegionSplit s{d1_lo + i * d1_step, d2_lo + j * d2_step};
            if (s.d2 > s.d1) grid.push_back(s);
        }
    if (grid.empty()) throw std::domain_error("search_split: empty grid");

    std::vector<SplitCell> cells(grid.size());
    std::vector<ExceptionalResult> results(grid.size());
    parallel_chunks(grid.size(), [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            SplitCell cell;
            cell.d1 = grid[idx].d1;
            cell.d2 = grid[idx].d2;
            try {
                results[idx] = compute_R(p, grid[idx]);
                cell.invA = results[idx].invA;
                cell.invB = results[idx].invB;
                cell.invC = results[idx].invC;
                cell.R = results[idx].R;
                cell.feasible = true;
            } catch (const std::domain_error&) {
                cell.feasible = false;
            }
            cells[idx] = cell;
        }
    });

    SplitSearchResult out;
    out.cells = std::move(cells);
    std::size_t best_idx = out.cells.size();
    for (std::size_t idx = 0; idx < out.cells.size(); ++idx) {
        if (!out.cells[idx].feasible) {
            ++out.skipped;
            continue;
        }
        if (best_idx == out.cells.size() || out.cells[idx].R < out.cells[best_idx].R)
            best_idx = idx;
    }
    if (best_idx == out.cells.size())
        throw std::domain_error("search_split: every cell was infeasible");
    out.best = results[best_idx];
    return out;
}

} // namespace zfr
