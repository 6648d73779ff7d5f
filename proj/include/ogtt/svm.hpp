#ifndef OGTT_SVM_HPP
#define OGTT_SVM_HPP

// Linear soft-margin SVM on the (A, alpha) plane.
//
//   min_{w,b}  1/2 |w|^2 + C sum_i max(0, 1 - y_i (w . x_i + b))
//
// over standardised features. The dual is solved by SMO with second-order
// working-set selection; the bias is then chosen by exact minimisation of the
// primal over b for the recovered w.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ogtt/bayes.hpp"
#include "ogtt/error.hpp"

namespace ogtt {

inline constexpr int kHealthy = +1;
inline constexpr int kCondition = -1;

struct LabeledPoint {
    double A = 0.0;
    double alpha = 0.0;
    int y = kHealthy;  // +1 healthy, -1 any diabetic condition
};

inline int binary_class(Label l) { return l == Label::Healthy ? kHealthy : kCondition; }

using Feature = std::array<double, 2>;

struct Standardization {
    Feature mean{0.0, 0.0};
    Feature scale{1.0, 1.0};

    Feature apply(double A, double alpha) const {
        return {(A - mean[0]) / scale[0], (alpha - mean[1]) / scale[1]};
    }

    /// Per-feature mean and population standard deviation (scale 1 for a constant feature).
    static Standardization fit(std::span<const LabeledPoint> pts) {
        Standardization s;
        const auto n = static_cast<double>(pts.size());
        for (const auto& p : pts) {
            s.mean[0] += p.A / n;
            s.mean[1] += p.alpha / n;
        }
        Feature var{0.0, 0.0};
        for (const auto& p : pts) {
            var[0] += (p.A - s.mean[0]) * (p.A - s.mean[0]) / n;
            var[1] += (p.alpha - s.mean[1]) * (p.alpha - s.mean[1]) / n;
        }
        for (std::size_t j = 0; j < 2; ++j)
            s.scale[j] = var[j] > 0.0 ? std::sqrt(var[j]) : 1.0;
        return s;
    }
};

struct SvmConfig {
    double C = 1.0;
    bool standardize = true;
    double tolerance = 1e-10;  // maximal KKT violation at convergence
    int max_iterations = 1'000'000;
};

struct SvmModel {
    Feature w{0.0, 0.0};
    double b = 0.0;
    double C = 1.0;
    Standardization standardization;
    int iterations = 0;
    bool converged = false;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    std::vector<double> dual_alpha;
    std::vector<double> objective_trace;  // 1/2 |w|^2 - sum(alpha) after each SMO step; non-increasing
};

inline double hinge(double margin) { return margin < 1.0 ? 1.0 - margin : 0.0; }

/// Primal objective on already standardised features.
inline double primal_objective(const Feature& w, double b, double C, std::span<const Feature> x,
                               std::span<const int> y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        loss += hinge(y[i] * (w[0] * x[i][0] + w[1] * x[i][1] + b));
    return 0.5 * (w[0] * w[0] + w[1] * w[1]) + C * loss;
}

namespace detail {

/// Interval of minimisers of sum_i hinge(y_i (f_i + b)) over b.
inline Interval optimal_bias_interval(std::span<const double> f, std::span<const int> y) {
    auto loss = [&](double b) {
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            s += hinge(y[i] * (f[i] + b));
        return s;
    };
    std::vector<double> breaks;
    breaks.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        breaks.push_back(y[i] - f[i]);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> vals(breaks.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        vals[k] = loss(breaks[k]);
        best = std::min(best, vals[k]);
    }
    const double eps = 1e-12 * (1.0 + std::abs(best));
    Interval iv{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        if (vals[k] <= best + eps) {
            iv.lo = std::min(iv.lo, breaks[k]);
            iv.hi = std::max(iv.hi, breaks[k]);
        }
    }
    return iv;
}

} // namespace detail

inline SvmModel train(std::span<const LabeledPoint> points, const SvmConfig& cfg = {}) {
    if (!(cfg.C > 0.0))
        throw std::invalid_argument("train: C must be positive");
    bool has_pos = false;
    bool has_neg = false;
    for (const auto& p : points) {
        if (!std::isfinite(p.A) || !std::isfinite(p.alpha))
            throw std::invalid_argument("train: non-finite feature");
        if (p.y != kHealthy && p.y != kCondition)
            throw std::invalid_argument("train: labels must be +1 or -1");
        (p.y > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg)
        throw DegenerateClasses("train: need at least one point of each class");

    SvmModel m;
    m.C = cfg.C;
    if (cfg.standardize)
        m.standardization = Standardization::fit(points);

    const std::size_t n = points.size();
    const double C = cfg.C;
    std::vector<Feature> x(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = m.standardization.apply(points[i].A, points[i].alpha);
        y[i] = points[i].y;
    }
    auto kernel = [&](std::size_t i, std::size_t j) { return x[i][0] * x[j][0] + x[i][1] * x[j][1]; };

    std::vector<double> a(n, 0.0);
    Feature w{0.0, 0.0};
    double sum_a = 0.0;
    std::vector<double> grad(n);  // (Q a)_t - 1 = y_t (w . x_t) - 1
    constexpr double kTau = 1e-12;

    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        for (std::size_t t = 0; t < n; ++t)
            grad[t] = y[t] * (w[0] * x[t][0] + w[1] * x[t][1]) - 1.0;

        auto in_up = [&](std::size_t t) { return (y[t] > 0 && a[t] < C) || (y[t] < 0 && a[t] > 0.0); };
        auto in_low = [&](std::size_t t) { return (y[t] < 0 && a[t] < C) || (y[t] > 0 && a[t] > 0.0); };

        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (in_up(t) && -y[t] * grad[t] > gmax) {
                gmax = -y[t] * grad[t];
                i = t;
            }
        }
        double gmin = std::numeric_limits<double>::infinity();
        double best_obj = std::numeric_limits<double>::infinity();
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t))
                continue;
            gmin = std::min(gmin, -y[t] * grad[t]);
            if (i == n)
                continue;
            const double bdiff = gmax + y[t] * grad[t];
            if (bdiff > 0.0) {
                double quad = kernel(i, i) + kernel(t, t) - 2.0 * kernel(i, t);
                if (quad <= 0.0)
                    quad = kTau;
                const double obj = -(bdiff * bdiff) / quad;
                if (obj < best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        if (i == n || j == n || gmax - gmin < cfg.tolerance) {
            m.converged = true;
            break;
        }

        const double old_i = a[i];
        const double old_j = a[j];
        double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
        if (quad <= 0.0)
            quad = kTau;
        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = a[i] - a[j];
            a[i] += delta;
            a[j] += delta;
            if (diff > 0.0) {
                if (a[j] < 0.0) {
                    a[j] = 0.0;
                    a[i] = diff;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = -diff;
            }
            if (diff > 0.0) {
                if (a[i] > C) {
                    a[i] = C;
                    a[j] = C - diff;
                }
            } else if (a[j] > C) {
                a[j] = C;
                a[i] = C + diff;
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = a[i] + a[j];
            a[i] -= delta;
            a[j] += delta;
            if (sum > C) {
                if (a[i] > C) {
                    a[i] = C;
                    a[j] = sum - C;
                }
            } else if (a[j] < 0.0) {
                a[j] = 0.0;
                a[i] = sum;
            }
            if (sum > C) {
                if (a[j] > C) {
                    a[j] = C;
                    a[i] = sum - C;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = sum;
            }
        }
        const double di = (a[i] - old_i) * y[i];
        const double dj = (a[j] - old_j) * y[j];
        if (di == 0.0 && dj == 0.0) {
            m.converged = true;  // no representable progress left
            break;
        }
        for (std::size_t k = 0; k < 2; ++k)
            w[k] += di * x[i][k] + dj * x[j][k];
        sum_a += (a[i] - old_i) + (a[j] - old_j);
        m.objective_trace.push_back(0.5 * (w[0] * w[0] + w[1] * w[1]) - sum_a);
    }
    m.iterations = it;

    // Rebuild w from the multipliers to shed accumulated rounding.
    w = {0.0, 0.0};
    sum_a = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        w[0] += a[t] * y[t] * x[t][0];
        w[1] += a[t] * y[t] * x[t][1];
        sum_a += a[t];
    }
    m.w = w;
    m.dual_alpha = a;
    m.dual_objective = sum_a - 0.5 * (w[0] * w[0] + w[1] * w[1]);

    std::vector<double> f(n);
    for (std::size_t t = 0; t < n; ++t)
        f[t] = w[0] * x[t][0] + w[1] * x[t][1];
    const Interval bias = detail::optimal_bias_interval(f, y);
    double kkt_sum = 0.0;
    int free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (a[t] > 0.0 && a[t] < C) {
            kkt_sum += y[t] - f[t];
            ++free_count;
        }
    }
    const double b_kkt = free_count > 0 ? kkt_sum / free_count : 0.5 * (bias.lo + bias.hi);
    m.b = bias.clamp(b_kkt);
    m.primal_objective = primal_objective(m.w, m.b, C, x, y);
    return m;
}

inline double decision_value(const SvmModel& m, double A, double alpha) {
    const auto x = m.standardization.apply(A, alpha);
    return m.w[0] * x[0] + m.w[1] * x[1] + m.b;
}

struct Prediction {
    int label = kHealthy;
    double margin = 0.0;  // signed distance to the boundary in standardised space
};

/// Points exactly on the boundary are classified healthy (+1).
inline Prediction classify(const SvmModel& m, double A, double alpha) {
    const double f = decision_value(m, A, alpha);
    const double norm = std::hypot(m.w[0], m.w[1]);
    return {f >= 0.0 ? kHealthy : kCondition, norm > 0.0 ? f / norm : 0.0};
}

inline double accuracy(const SvmModel& m, std::span<const LabeledPoint> points) {
    if (points.empty())
        throw std::invalid_argument("accuracy: no points");
    std::size_t correct = 0;
    for (const auto& p : points)
        if (classify(m, p.A, p.alpha).label == p.y)
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(points.size());
}

/// a_A * A + a_alpha * alpha + c = 0 in original coordinates.
struct BoundaryLine {
    double a_A = 0.0;
    double a_alpha = 0.0;
    double c = 0.0;
};

inline BoundaryLine boundary_line(const SvmModel& m) {
    const auto& s = m.standardization;
    return {m.w[0] / s.scale[0], m.w[1] / s.scale[1],
            m.b - m.w[0] * s.mean[0] / s.scale[0] - m.w[1] * s.mean[1] / s.scale[1]};
}

struct Segment {
    Feature from{};
    Feature to{};
};

/// Separating line clipped to the rectangle A_range x alpha_range; nullopt when
/// the line misses the rectangle.
inline std::optional<Segment> export_boundary(const SvmModel& m, Interval A_range, Interval alpha_range) {
    if (m.w[0] == 0.0 && m.w[1] == 0.0)
        throw ZeroWeight("export_boundary: weight vector is zero");
    const auto line = boundary_line(m);
    std::vector<Feature> hits;
    if (line.a_alpha != 0.0) {
        for (double A : {A_range.lo, A_range.hi}) {
            const double al = -(line.a_A * A + line.c) / line.a_alpha;
            if (alpha_range.contains(al))
                hits.push_back({A, al});
        }
    }
    if (line.a_A != 0.0) {
        for (double al : {alpha_range.lo, alpha_range.hi}) {
            const double A = -(line.a_alpha * al + line.c) / line.a_A;
            if (A_range.contains(A))
                hits.push_back({A, al});
        }
    }
    if (hits.empty())
        return std::nullopt;
    std::sort(hits.begin(), hits.end());
    return Segment{hits.front(), hits.back()};
}

} // namespace ogtt

#endif // OGTT_SVM_HPP
