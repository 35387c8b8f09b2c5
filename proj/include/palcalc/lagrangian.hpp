#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "palette.hpp"

namespace palcalc {

/// A probability distribution over the colors of a palette.
using SimplexPoint = std::vector<double>;

inline bool is_simplex_point(std::span<const double> x, double tol = 1e-12) {
    double sum = 0.0;
    for (double w : x) {
        if (!(w >= 0.0 && w <= 1.0)) return false;
        sum += w;
    }
    return std::abs(sum - 1.0) <= tol;
}

inline SimplexPoint uniform_point(std::size_t k) { return SimplexPoint(k, 1.0 / static_cast<double>(k)); }

inline double objective(const Palette& p, std::span<const double> x) {
    if (x.size() != p.color_count()) throw std::invalid_argument("objective: dimension mismatch");
    double sum = 0.0;
    for (const auto& t : p.triples()) sum += x[t.left] * x[t.middle] * x[t.right];
    return sum;
}

inline std::vector<double> gradient(const Palette& p, std::span<const double> x) {
    if (x.size() != p.color_count()) throw std::invalid_argument("gradient: dimension mismatch");
    std::vector<double> g(x.size(), 0.0);
    for (const auto& t : p.triples()) {
        g[t.left] += x[t.middle] * x[t.right];
        g[t.middle] += x[t.left] * x[t.right];
        g[t.right] += x[t.left] * x[t.middle];
    }
    return g;
}

/// Euclidean projection onto the probability simplex (sort and threshold).
inline SimplexPoint project_to_simplex(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cumulative += u[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    SimplexPoint x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::clamp(v[i] - theta, 0.0, 1.0);
    return x;
}

/// Largest first-order optimality violation at x. The multiplier is 3f(x),
/// the weighted mean of the gradient (Euler's identity for a cubic form).
/// Colors with weight above `support_tol` need gradient equal to it; the
/// rest need gradient no larger.
inline double kkt_residual(std::span<const double> x, std::span<const double> g, double value,
                           double support_tol) {
    const double lambda = 3.0 * value;
    double residual = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double gap = g[i] - lambda;
        residual = std::max(residual, x[i] > support_tol ? std::abs(gap) : std::max(0.0, gap));
    }
    return residual;
}

struct LagrangianResult {
    double value = 0.0;
    SimplexPoint argmax;
    std::vector<double> gradient;
    double kkt_residual = 0.0;
    int restarts_used = 0;
};

struct LagrangianOptions {
    int restarts = 200;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    int max_iterations = 10000;
};

namespace detail {

struct AscentRun {
    SimplexPoint x;
    double value;
    double residual;
};

// Bound on the floating-point error of objective(): a sum of |T| nonnegative
// products accumulates at most a few ulps of f per term.
inline double rounding_noise(const Palette& p, double f) {
    return 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(p.triples().size() + 2) *
           std::max(1.0, std::abs(f));
}

inline AscentRun projected_ascent(const Palette& p, SimplexPoint x, double tol, int max_iterations) {
    double f = objective(p, x);
    auto g = gradient(p, x);
    double residual = kkt_residual(x, g, f, tol);
    double step = 1.0;
    for (int it = 0; it < max_iterations && residual > tol; ++it) {
        bool moved = false;
        while (step > 1e-20) {
            std::vector<double> trial(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * g[i];
            auto y = project_to_simplex(trial);
            const double fy = objective(p, y);
            double dir_dot = 0.0, dist2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                dir_dot += g[i] * (y[i] - x[i]);
                dist2 += (y[i] - x[i]) * (y[i] - x[i]);
            }
            if (dist2 == 0.0) break;
            // sufficient increase along the projected arc; near the optimum the
            // gain drops below rounding noise in f, which is tolerated
            const double noise = rounding_noise(p, f);
            if (fy >= f + 1e-4 * dir_dot - noise) {
                moved = true;
                x = std::move(y);
                f = fy;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        g = gradient(p, x);
        residual = kkt_residual(x, g, f, tol);
        step = std::min(1.0, step * 2.0);
    }
    return {std::move(x), f, residual};
}

/// One Newton step on the stationarity system restricted to `support`:
/// gradient entries equal to a common multiplier, weights summing to one.
/// Weights outside the support are set to zero. Returns false if the step
/// leaves the support.
inline bool newton_step(const Palette& p, const SimplexPoint& x, const std::vector<std::size_t>& support,
                        SimplexPoint& y) {
    const std::size_t m = support.size();
    std::vector<std::size_t> slot(x.size(), m);
    for (std::size_t a = 0; a < m; ++a) slot[support[a]] = a;
    y.assign(x.size(), 0.0);
    for (auto i : support) y[i] = x[i];

    const auto g = gradient(p, y);
    const double lambda = 3.0 * objective(p, y);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    for (const auto& t : p.triples()) {
        const ColorId c[3] = {t.left, t.middle, t.right};
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v)
                if (u != v && slot[c[u]] < m && slot[c[v]] < m) a(slot[c[u]], slot[c[v]]) += y[c[3 - u - v]];
    }
    for (std::size_t r = 0; r < m; ++r) {
        a(r, m) = -1.0;
        a(m, r) = 1.0;
        rhs(r) = lambda - g[support[r]];
    }
    rhs(m) = 1.0 - std::accumulate(y.begin(), y.end(), 0.0);
    // minimum-norm solution, so flat directions of a non-isolated maximum are harmless
    const Eigen::VectorXd delta = a.completeOrthogonalDecomposition().solve(rhs);
    for (std::size_t r = 0; r < m; ++r) {
        y[support[r]] += delta(r);
        if (!(y[support[r]] > 0.0)) return false;
    }
    const double sum = std::accumulate(y.begin(), y.end(), 0.0);
    for (auto& w : y) w /= sum;
    return true;
}

/// Polishes an ascent run with Newton steps. Gradient ascent stalls about
/// sqrt(eps) away from a maximizer because f is flat there; Newton steps do
/// not need f to improve measurably. Starting from the support {x_i > tol},
/// weights a step would drive to zero are dropped and the step retried. A
/// step is kept only if it lowers the residual without losing value beyond
/// rounding.
inline void newton_polish(const Palette& p, AscentRun& run, double tol) {
    const double noise = rounding_noise(p, run.value);
    for (int it = 0; it < 30 && run.residual > tol; ++it) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < run.x.size(); ++i)
            if (run.x[i] > tol) support.push_back(i);
        SimplexPoint y;
        bool ok = false;
        while (!support.empty() && !(ok = newton_step(p, run.x, support, y))) {
            std::erase_if(support, [&](std::size_t i) { return !(y[i] > 0.0); });
        }
        if (!ok) return;
        const double fy = objective(p, y);
        const double ry = kkt_residual(y, gradient(p, y), fy, tol);
        if (!(ry < run.residual) || fy < run.value - noise) return;
        run.x = std::move(y);
        run.value = fy;
        run.residual = ry;
    }
}
}  // namespace detail

/// Multi-start projected gradient ascent for the maximum of the palette
/// polynomial over the simplex. The uniform point is always the first
/// start; `restarts` further starts are drawn uniformly from the simplex.
/// The best value wins, ties going to the earlier start.
inline LagrangianResult lagrangian(const Palette& p, const LagrangianOptions& opts = {}) {
    const auto k = p.color_count();
    if (k == 0) throw std::invalid_argument("lagrangian: empty palette");
    std::mt19937_64 rng(opts.seed);
    std::exponential_distribution<double> expo(1.0);

    LagrangianResult best;
    auto consider = [&](SimplexPoint start) {
        auto run = detail::projected_ascent(p, std::move(start), opts.tol, opts.max_iterations);
        detail::newton_polish(p, run, opts.tol);
        ++best.restarts_used;
        if (best.restarts_used == 1 || run.value > best.value) {
            best.value = run.value;
            best.argmax = std::move(run.x);
        }
    };
    consider(uniform_point(k));
    if (!p.triples().empty()) {
        for (int r = 0; r < opts.restarts; ++r) {
            SimplexPoint start(k);
            double sum = 0.0;
            for (auto& w : start) sum += (w = expo(rng));
            for (auto& w : start) w /= sum;
            consider(std::move(start));
        }
    }
    best.value = objective(p, best.argmax);
    best.gradient = gradient(p, best.argmax);
    best.kkt_residual = kkt_residual(best.argmax, best.gradient, best.value, opts.tol);
    return best;
}

inline LagrangianResult lagrangian(const Palette& p, int restarts, double tol, std::uint64_t seed) {
    LagrangianOptions opts;
    opts.restarts = restarts;
    opts.tol = tol;
    opts.seed = seed;
    return lagrangian(p, opts);
}

/// Exact maximum of the palette polynomial over the grid points of the
/// simplex with denominator `grid_steps`; a lower bound on the Lagrangian.
inline Rational brute_force_lagrangian(const Palette& p, int grid_steps) {
    const auto k = p.color_count();
    if (k == 0) throw std::invalid_argument("brute_force_lagrangian: empty palette");
    if (k > 5) throw std::invalid_argument("brute_force_lagrangian: at most 5 colors supported");
    if (grid_steps <= 0) throw std::invalid_argument("brute_force_lagrangian: grid_steps must be positive");

    std::vector<std::int64_t> counts(k, 0);
    std::int64_t best = 0;
    auto visit = [&](auto&& self, std::size_t i, std::int64_t remaining) -> void {
        if (i + 1 == k) {
            counts[i] = remaining;
            std::int64_t sum = 0;
            for (const auto& t : p.triples()) sum += counts[t.left] * counts[t.middle] * counts[t.right];
            best = std::max(best, sum);
            return;
        }
        for (std::int64_t c = 0; c <= remaining; ++c) {
            counts[i] = c;
            self(self, i + 1, remaining - c);
        }
    };
    visit(visit, 0, grid_steps);
    const std::int64_t n = grid_steps;
    return Rational(best, n * n * n);
}

}  // namespace palcalc
