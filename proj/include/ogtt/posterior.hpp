#ifndef OGTT_POSTERIOR_HPP
#define OGTT_POSTERIOR_HPP

// Posterior summaries from MCMC output: conditional mean, equal-tailed credible
// intervals, marginal densities and a mode count of the smoothed marginal.
//
// The phase delta is reported folded into one period [mu - pi, mu + pi), where mu
// is the circular mean of the delta samples; A, alpha and omega are reported on
// their prior intervals.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "ogtt/bayes.hpp"
#include "ogtt/ensemble.hpp"
#include "ogtt/error.hpp"

namespace ogtt {

inline constexpr int kHistogramBins = 64;
inline constexpr int kDensityGrid = 256;
inline constexpr double kCredibleLevel = 0.95;
inline constexpr double kModeProminence = 0.05;

inline double circular_mean(std::span<const double> angles) {
    if (angles.empty())
        throw EmptySamples("circular_mean: no samples");
    double s = 0.0;
    double c = 0.0;
    for (double a : angles) {
        s += std::sin(a);
        c += std::cos(a);
    }
    return std::atan2(s, c);
}

/// Folds each angle into [anchor - pi, anchor + pi).
inline std::vector<double> fold_phase(std::span<const double> angles, double anchor) {
    std::vector<double> out;
    out.reserve(angles.size());
    for (double a : angles)
        out.push_back(anchor + wrap_phase(a - anchor));
    return out;
}

inline double mean_of(std::span<const double> v) {
    if (v.empty())
        throw EmptySamples("mean_of: no samples");
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

/// Component-wise sample mean; delta is averaged after folding around its circular mean.
inline ParamVector conditional_mean(std::span<const ParamVector> samples) {
    if (samples.empty())
        throw EmptySamples("conditional_mean: no samples");
    ParamVector m{};
    std::vector<double> col(samples.size());
    for (std::size_t i = 0; i < kParamCount; ++i) {
        for (std::size_t k = 0; k < samples.size(); ++k)
            col[k] = samples[k][i];
        if (i == kDelta) {
            const auto folded = fold_phase(col, circular_mean(col));
            m[i] = mean_of(folded);
        } else {
            m[i] = mean_of(col);
        }
    }
    return m;
}

/// Linear-interpolated quantile (type 7) of already sorted values.
inline double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty())
        throw EmptySamples("quantile: no samples");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline Interval credible_interval(std::span<const double> values, double level = kCredibleLevel) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double tail = (1.0 - level) / 2.0;
    return {sorted_quantile(v, tail), sorted_quantile(v, 1.0 - tail)};
}

struct MarginalDensity {
    Interval support;
    std::vector<double> bin_density;  // kHistogramBins values, integrates to 1 over support
    std::vector<double> grid;         // kDensityGrid points spanning support, endpoints included
    std::vector<double> histogram;    // histogram sampled on grid
    std::vector<double> smoothed;     // Gaussian kernel estimate on grid
    double bandwidth = 0.0;
};

namespace detail {

inline double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

inline void normalize_on_grid(std::span<const double> x, std::vector<double>& y) {
    const double area = trapezoid(x, y);
    if (area > 0.0)
        for (auto& v : y)
            v /= area;
}

inline double sample_sd(std::span<const double> v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return v.size() > 1 ? std::sqrt(s / static_cast<double>(v.size() - 1)) : 0.0;
}

} // namespace detail

/// Histogram and kernel estimate of one marginal over `support`.
///
/// Values outside the support are counted in the nearest edge bin. The grid
/// representations are rescaled so their trapezoidal integral is exactly one;
/// the kernel bandwidth is the normal-reference rule 1.06 s n^(-1/5), floored
/// at one grid spacing.
inline MarginalDensity marginal_density(std::span<const double> values, Interval support,
                                        int bins = kHistogramBins, int grid_points = kDensityGrid) {
    if (values.empty())
        throw EmptySamples("marginal_density: no samples");
    if (values.size() < 100)
        throw std::invalid_argument("marginal_density: need at least 100 samples");
    if (!(support.hi > support.lo))
        throw std::invalid_argument("marginal_density: empty support");

    MarginalDensity md;
    md.support = support;
    const double width = support.width();
    const double bin_w = width / bins;
    const auto n = static_cast<double>(values.size());

    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double v : values) {
        auto b = static_cast<long>(std::floor((v - support.lo) / bin_w));
        b = std::clamp(b, 0L, static_cast<long>(bins - 1));
        counts[static_cast<std::size_t>(b)] += 1.0;
    }
    md.bin_density.resize(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b)
        md.bin_density[b] = counts[b] / (n * bin_w);

    const double h_grid = width / (grid_points - 1);
    md.grid.resize(static_cast<std::size_t>(grid_points));
    md.histogram.resize(md.grid.size());
    for (std::size_t i = 0; i < md.grid.size(); ++i) {
        md.grid[i] = support.lo + static_cast<double>(i) * h_grid;
        auto b = static_cast<long>(std::floor((md.grid[i] - support.lo) / bin_w));
        b = std::clamp(b, 0L, static_cast<long>(bins - 1));
        md.histogram[i] = md.bin_density[static_cast<std::size_t>(b)];
    }
    detail::normalize_on_grid(md.grid, md.histogram);

    md.bandwidth = std::max(1.06 * detail::sample_sd(values) * std::pow(n, -0.2), h_grid);
    // Binned kernel sum: accumulate samples on a fine lattice first so the cost
    // does not scale with samples x grid points.
    const int fine = 4 * grid_points;
    const double h_fine = width / fine;
    std::vector<double> mass(static_cast<std::size_t>(fine), 0.0);
    for (double v : values) {
        auto b = static_cast<long>(std::floor((support.clamp(v) - support.lo) / h_fine));
        b = std::clamp(b, 0L, static_cast<long>(fine - 1));
        mass[static_cast<std::size_t>(b)] += 1.0;
    }
    md.smoothed.assign(md.grid.size(), 0.0);
    const double inv_bw = 1.0 / md.bandwidth;
    for (std::size_t j = 0; j < mass.size(); ++j) {
        if (mass[j] == 0.0)
            continue;
        const double c = support.lo + (static_cast<double>(j) + 0.5) * h_fine;
        for (std::size_t i = 0; i < md.grid.size(); ++i) {
            const double z = (md.grid[i] - c) * inv_bw;
            if (std::abs(z) < 8.0)
                md.smoothed[i] += mass[j] * std::exp(-0.5 * z * z);
        }
    }
    detail::normalize_on_grid(md.grid, md.smoothed);
    return md;
}

/// Number of local maxima whose topographic prominence is at least
/// `fraction` of the global maximum. Plateaus count once; endpoints may be peaks.
inline int count_modes(std::span<const double> density, double fraction = kModeProminence) {
    const std::size_t n = density.size();
    if (n == 0)
        return 0;
    const double top = *std::max_element(density.begin(), density.end());
    if (!(top > 0.0))
        return 0;
    const double threshold = fraction * top;

    int modes = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && density[j + 1] == density[i])
            ++j;
        const double h = density[i];
        const bool left_lower = i == 0 || density[i - 1] < h;
        const bool right_lower = j + 1 == n || density[j + 1] < h;
        if (left_lower && right_lower) {
            // Walk outwards until a strictly higher point; the deeper of the two
            // key saddles fixes the prominence.
            double left_min = h;
            bool left_higher = false;
            for (std::size_t k = i; k-- > 0;) {
                if (density[k] > h) {
                    left_higher = true;
                    break;
                }
                left_min = std::min(left_min, density[k]);
            }
            double right_min = h;
            bool right_higher = false;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (density[k] > h) {
                    right_higher = true;
                    break;
                }
                right_min = std::min(right_min, density[k]);
            }
            double base = 0.0;
            if (left_higher && right_higher)
                base = std::max(left_min, right_min);
            else if (left_higher)
                base = left_min;
            else if (right_higher)
                base = right_min;
            else
                base = std::min(left_min, right_min);
            const double prominence = (left_higher || right_higher) ? h - base : h;
            if (prominence >= threshold)
                ++modes;
        }
        i = j + 1;
    }
    return modes;
}

struct ParameterSummary {
    double map = 0.0;
    double cm = 0.0;
    Interval credible;
    Interval support;  // prior interval, or the folded period for delta
    MarginalDensity density;
    int mode_count = 0;
};

struct PosteriorSummary {
    std::array<ParameterSummary, kParamCount> params;
    double acceptance_rate = 0.0;
    std::size_t sample_count = 0;
};

/// Builds the per-parameter summary from MCMC samples and the MAP point.
inline PosteriorSummary summarize(const SampleSet<kParamCount>& set, const MapResult& map, const PriorBox& box) {
    if (set.samples.empty())
        throw EmptySamples("summarize: no samples");
    PosteriorSummary s;
    s.acceptance_rate = set.acceptance_rate;
    s.sample_count = set.size();
    const auto cm = conditional_mean(set.samples);
    const auto map_v = map.params.to_array();
    for (std::size_t i = 0; i < kParamCount; ++i) {
        auto& p = s.params[i];
        auto col = set.column(i);
        p.support = box[i];
        p.map = map_v[i];
        if (i == kDelta) {
            const double mu = circular_mean(col);
            col = fold_phase(col, mu);
            p.support = {mu - std::numbers::pi, mu + std::numbers::pi};
            p.map = mu + wrap_phase(map_v[i] - mu);
        }
        p.cm = cm[i];
        p.credible = credible_interval(col);
        if (p.support.width() > 0.0 && col.size() >= 100) {
            p.density = marginal_density(col, p.support);
            p.mode_count = count_modes(p.density.smoothed);
        } else {
            p.mode_count = 1;
        }
    }
    return s;
}

struct ConcentrationReport {
    double relative_width = 0.0;  // credible width / support width
    int mode_count = 0;
};

inline ConcentrationReport concentration_report(const PosteriorSummary& s, ParamIndex param = kAlpha) {
    const auto& p = s.params[param];
    const double w = p.support.width();
    return {w > 0.0 ? p.credible.width() / w : 0.0, p.mode_count};
}

} // namespace ogtt

#endif // OGTT_POSTERIOR_HPP
