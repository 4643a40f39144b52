#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "zfr/classical.hpp"
#include "zfr/config.hpp"
#include "zfr/exceptional.hpp"
#include "zfr/trigpoly.hpp"

namespace zfr {

enum class Objective { C1_ratio, R_exceptional };

struct AnnealConfig {
    int degree = 16;
    std::uint64_t seed = 1;
    double initial_temp = 1.0;
    double cooling_rate = 0.999;
    std::int64_t steps = 10000;
    double move_scale = 0.05;
    Objective objective = Objective::C1_ratio;

    void validate() const {
        if (degree < 1) throw std::domain_error("AnnealConfig: degree must be >= 1");
        if (!(initial_temp > 0.0)) throw std::domain_error("AnnealConfig: initial_temp must be > 0");
        if (!(cooling_rate > 0.0) || !(cooling_rate < 1.0))
            throw std::domain_error("AnnealConfig: cooling_rate must lie in (0, 1)");
        if (steps < 1) throw std::domain_error("AnnealConfig: steps must be >= 1");
        if (!(move_scale > 0.0)) throw std::domain_error("AnnealConfig: move_scale must be > 0");
    }
};

// C1 = c1/M in closed form: with r* = sqrt(a0)/(sqrt(a1)-sqrt(a0)) the
// denominator collapses to M = (sqrt(a1) - sqrt(a0))^2, so
// C1 = (1-kappa)/2 * sum(a_k) / (sqrt(a1) - sqrt(a0))^2.  Degree-1
// homogeneous numerator and denominator make the ratio scale-invariant.
inline double c1_ratio(const TrigPoly& p) {
    const double a0 = p.coeffs[0], a1 = p.coeffs[1];
    const double root_gap = std::sqrt(a1) - std::sqrt(a0);
    double sum = 0.0;
    for (double a : p.coeffs) sum += a;
    return half_one_minus_kappa() * sum / (root_gap * root_gap);
}

// The split used when annealing against the Theorem-1.2 constant.
inline RegionSplit r_objective_split() { return RegionSplit{1.0015, 2.318}; }

// Fejer kernel in cosine form, 1 + 2 sum_{k<=n} (1 - k/(n+1)) cos(k phi) >= 0:
// an admissible start polynomial for any degree >= 2 (a0 = 1 < a1 = 2n/(n+1);
// at degree 1 the kernel degenerates to a0 = a1 and leaves the class).
inline TrigPoly fejer_start(int degree) {
    if (degree < 1) throw std::domain_error("fejer_start requires degree >= 1");
    TrigPoly p;
    p.degree = degree;
    p.coeffs.resize(static_cast<std::size_t>(degree) + 1);
    p.coeffs[0] = 1.0;
    for (int k = 1; k <= degree; ++k)
        p.coeffs[static_cast<std::size_t>(k)] = 2.0 * (1.0 - static_cast<double>(k) / (degree + 1));
    return p;
}

// Scalar the annealer minimizes; inadmissible or infeasible polynomials map
// to +infinity so they are rejected rather than raised.
inline double objective_value(const TrigPoly& p, const BoundConfig& cfg, Objective which) {
    const double inf = std::numeric_limits<double>::infinity();
    try {
        p.validate();
        if (!verify_admissible(p, cfg).admissible()) return inf;
        if (which == Objective::C1_ratio) return c1_ratio(p);
        return compute_R(p, r_objective_split()).R;
    } catch (const std::exception&) {
        return inf;
    }
}

struct TraceRow {
    std::int64_t step = 0;
    double temperature = 0.0;
    double current_value = 0.0;
    double best_value = 0.0;
};

struct AnnealResult {
    TrigPoly best;
    double best_value = 0.0;
    std::vector<TraceRow> trace;
};

namespace detail {

// RNG primitives built directly on the mt19937_64 word stream so the trace is
// bit-identical across standard libraries (the std distributions are
// implementation-defined sequences).
inline double uniform_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double gaussian(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform_u01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace detail

// Metropolis annealing over the coefficient vector with a0 pinned at 1 (the
// objectives are scale-invariant, so the pin removes a flat direction).
// Moves perturb one uniformly chosen coefficient k >= 1 by a Gaussian of
// scale move_scale * temperature and clamp at 0; temperature cools
// geometrically.  Candidate screening uses a coarse 10^4+1-point
// non-negativity grid; the final best polynomial must pass the full
// certification in verify_admissible or the start polynomial is returned.
inline AnnealResult anneal(const TrigPoly& start, const AnnealConfig& acfg,
                           const BoundConfig& cfg) {
    acfg.validate();
    start.validate();
    if (start.degree != acfg.degree)
        throw std::domain_error("anneal: start.degree does not match AnnealConfig.degree");

    TrigPoly current = start;
    for (double& a : current.coeffs) a /= start.coeffs[0];
    if (!verify_admissible(current, cfg).admissible())
        throw std::invalid_argument("anneal: start polynomial is not admissible");
    const TrigPoly anchor = current;  // certified fallback

    auto value_of = [&](const TrigPoly& q) -> double {
        if (acfg.objective == Objective::C1_ratio) return c1_ratio(q);
        try {
            return compute_R(q, r_objective_split()).R;
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // Coarse screening grid: polynomial values held incrementally, a move
    // shifts them by delta * cos(k phi_i).
    constexpr int N = 10001;
    const int ncoef = acfg.degree + 1;
    std::vector<double> costab(static_cast<std::size_t>(ncoef) * N);
    for (int k = 0; k < ncoef; ++k)
        for (int i = 0; i < N; ++i)
            costab[static_cast<std::size_t>(k) * N + i] =
                std::cos(k * (std::numbers::pi * i / (N - 1)));
    std::vector<double> vals(N, 0.0);
    for (int i = 0; i < N; ++i) {
        double v = 0.0;
        for (int k = 0; k < ncoef; ++k)
            v += current.coeffs[static_cast<std::size_t>(k)] *
                 costab[static_cast<std::size_t>(k) * N + i];
        vals[i] = v;
    }

    std::mt19937_64 rng(acfg.seed);
    double temperature = acfg.initial_temp;
    double current_value = value_of(current);
    if (!std::isfinite(current_value))
        throw std::invalid_argument("anneal: start polynomial has infinite objective");
    TrigPoly best = current;
    double best_value = current_value;

    AnnealResult out;
    out.trace.reserve(static_cast<std::size_t>(acfg.steps));

    for (std::int64_t step = 1; step <= acfg.steps; ++step) {
        const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(acfg.degree));
        const double old_aj = current.coeffs[static_cast<std::size_t>(j)];
        const double proposal =
            std::max(0.0, old_aj + detail::gaussian(rng) * acfg.move_scale * temperature);
        const double delta = proposal - old_aj;

        double cand_value = std::numeric_limits<double>::infinity();
        bool screen_ok = !(j == 1 && !(proposal > current.coeffs[0]));
        if (screen_ok && delta != 0.0) {
            double gmin = std::numeric_limits<double>::infinity();
            const double* col = &costab[static_cast<std::size_t>(j) * N];
            for (int i = 0; i < N; ++i) gmin = std::min(gmin, vals[i] + delta * col[i]);
            screen_ok = gmin >= -cfg.nonneg_tol;
        }
        if (screen_ok) {
            current.coeffs[static_cast<std::size_t>(j)] = proposal;
            cand_value = value_of(current);
            current.coeffs[static_cast<std::size_t>(j)] = old_aj;
        }

        bool accept = false;
        const double dv = cand_value - current_value;
        if (dv <= 0.0) accept = true;
        else if (std::isfinite(dv))
            accept = detail::uniform_u01(rng) < std::exp(-dv / temperature);

        if (accept && delta != 0.0) {
            current.coeffs[static_cast<std::size_t>(j)] = proposal;
            const double* col = &costab[static_cast<std::size_t>(j) * N];
            for (int i = 0; i < N; ++i) vals[i] += delta * col[i];
            current_value = cand_value;
            if (current_value < best_value) {
                best_value = current_value;
                best = current;
            }
        }

        out.trace.push_back({step, temperature, current_value, best_value});
        temperature *= acfg.cooling_rate;
    }

    // The screening grid has no Lipschitz slack, so certify the winner on the
    // full grid before reporting it; on failure fall back to the certified
    // start, which keeps best_value <= objective_value(start).
    if (!verify_admissible(best, cfg).admissible()) {
        best = anchor;
        best_value = value_of(best);
    }
    out.best = std::move(best);
    out.best_value = best_value;
    return out;
}

} // namespace zfr
