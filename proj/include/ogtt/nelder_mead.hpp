#ifndef OGTT_NELDER_MEAD_HPP
#define OGTT_NELDER_MEAD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace ogtt {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

struct SimplexOptions {
    double initial_step = 0.1;
    int max_iterations = 2000;
    double tolerance = 1e-8;  // simplex diameter (max vertex distance from the best vertex)
};

/// Nelder-Mead minimisation with the standard coefficients (1, 2, 1/2, 1/2).
/// Objective values of +inf are allowed and are always ranked worst, so hard
/// constraints can be expressed by returning +inf. The starting point is a
/// vertex of the initial simplex, so the result is never worse than f(start).
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start, const SimplexOptions& opt) {
    using Point = std::array<double, N>;
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    std::array<Point, N + 1> vertex{};
    std::array<double, N + 1> value{};
    vertex[0] = start;
    value[0] = f(start);
    for (std::size_t i = 0; i < N; ++i) {
        Point p = start;
        p[i] += opt.initial_step;
        double fp = f(p);
        if (!std::isfinite(fp)) {
            Point q = start;
            q[i] -= opt.initial_step;
            const double fq = f(q);
            if (fq < fp) {
                p = q;
                fp = fq;
            }
        }
        vertex[i + 1] = p;
        value[i + 1] = fp;
    }

    std::array<std::size_t, N + 1> order{};
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        std::array<Point, N + 1> v2{};
        std::array<double, N + 1> f2{};
        for (std::size_t i = 0; i <= N; ++i) {
            v2[i] = vertex[order[i]];
            f2[i] = value[order[i]];
        }
        vertex = v2;
        value = f2;
    };
    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t i = 1; i <= N; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < N; ++k)
                s += (vertex[i][k] - vertex[0][k]) * (vertex[i][k] - vertex[0][k]);
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };
    auto along = [](const Point& from, const Point& to, double t) {
        Point p{};
        for (std::size_t k = 0; k < N; ++k)
            p[k] = from[k] + t * (to[k] - from[k]);
        return p;
    };

    SimplexResult<N> result;
    sort_vertices();
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        if (diameter() < opt.tolerance) {
            result.converged = true;
            break;
        }
        Point centroid{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k)
                centroid[k] += vertex[i][k] / static_cast<double>(N);

        const Point& worst = vertex[N];
        const Point xr = along(centroid, worst, -kReflect);
        const double fr = f(xr);
        if (fr < value[0]) {
            const Point xe = along(centroid, worst, -kExpand);
            const double fe = f(xe);
            if (fe < fr) {
                vertex[N] = xe;
                value[N] = fe;
            } else {
                vertex[N] = xr;
                value[N] = fr;
            }
        } else if (fr < value[N - 1]) {
            vertex[N] = xr;
            value[N] = fr;
        } else {
            bool accepted = false;
            if (fr < value[N]) {
                const Point xc = along(centroid, worst, -kContract);
                const double fc = f(xc);
                if (fc <= fr) {
                    vertex[N] = xc;
                    value[N] = fc;
                    accepted = true;
                }
            } else {
                const Point xc = along(centroid, worst, kContract);
                const double fc = f(xc);
                if (fc < value[N]) {
                    vertex[N] = xc;
                    value[N] = fc;
                    accepted = true;
                }
            }
            if (!accepted) {
                for (std::size_t i = 1; i <= N; ++i) {
                    vertex[i] = along(vertex[0], vertex[i], kShrink);
                    value[i] = f(vertex[i]);
                }
            }
        }
        sort_vertices();
    }
    if (!result.converged && diameter() < opt.tolerance)
        result.converged = true;
    result.x = vertex[0];
    result.value = value[0];
    result.iterations = it;
    return result;
}

/// Nelder-Mead followed by restarts from the incumbent with a shrinking initial
/// step, until a restart no longer improves the value. Restarts undo the
/// premature collapse plain Nelder-Mead is prone to.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead_restarted(F&& f, const std::array<double, N>& start, const SimplexOptions& opt,
                                       int max_restarts = 3) {
    auto best = nelder_mead<N>(f, start, opt);
    SimplexOptions again = opt;
    for (int r = 0; r < max_restarts; ++r) {
        again.initial_step = std::max(again.initial_step * 0.1, 100.0 * opt.tolerance);
        auto next = nelder_mead<N>(f, best.x, again);
        const bool improved = next.value < best.value;
        next.iterations += best.iterations;
        if (!(next.value <= best.value))
            break;
        best = next;
        if (!improved)
            break;
    }
    return best;
}

} // namespace ogtt

#endif // OGTT_NELDER_MEAD_HPP
