#ifndef OGTT_BAYES_HPP
#define OGTT_BAYES_HPP

// Prior, likelihood and posterior over u = (A, alpha, omega, delta), the MAP
// estimator, and the Gaussian-prior/Tikhonov pair.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ogtt/cohort.hpp"
#include "ogtt/error.hpp"
#include "ogtt/nelder_mead.hpp"
#include "ogtt/oscillator.hpp"
#include "ogtt/random.hpp"

namespace ogtt {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Tunable constants of the prior box. Defaults reproduce
///   A ~ U[0.5 g_m, 2.5 g_M + 15], alpha ~ U[0, 0.1], omega ~ U[0, 0.15], delta ~ U[-2 pi, 2 pi].
struct PriorSettings {
    double A_lower_factor = 0.5;
    double A_upper_factor = 2.5;
    double A_upper_offset = 15.0;
    double alpha_max = 0.1;
    double omega_max = 0.15;
    double delta_bound = 2.0 * std::numbers::pi;
};

struct PriorBox {
    std::array<Interval, kParamCount> bounds{};

    const Interval& operator[](std::size_t i) const { return bounds[i]; }
    Interval& operator[](std::size_t i) { return bounds[i]; }

    bool contains(const OscillatorParams& u) const {
        const auto v = u.to_array();
        for (std::size_t i = 0; i < kParamCount; ++i)
            if (!bounds[i].contains(v[i]))
                return false;
        return true;
    }

    void validate() const {
        for (const auto& b : bounds)
            if (!(b.lo <= b.hi))
                throw std::invalid_argument("PriorBox: lower bound exceeds upper bound");
        if (bounds[kAmplitude].lo < 0.0)
            throw std::invalid_argument("PriorBox: amplitude bounds must be nonnegative");
    }

    /// Data-driven box. Flat data (g_m = g_M = 0) gives A in [0, 15].
    static PriorBox from_data(const DeviationData& d, const PriorSettings& s = {}) {
        PriorBox box;
        box.bounds[kAmplitude] = {s.A_lower_factor * d.g_min, s.A_upper_factor * d.g_max + s.A_upper_offset};
        box.bounds[kAlpha] = {0.0, s.alpha_max};
        box.bounds[kOmega] = {0.0, s.omega_max};
        box.bounds[kDelta] = {-s.delta_bound, s.delta_bound};
        box.validate();
        return box;
    }
};

/// Selects the Gaussian exponent: exp(-|r|^2 / gamma^2) or exp(-|r|^2 / (2 gamma^2)).
enum class LikelihoodConvention { Unscaled, Conventional };

struct NoiseModel {
    double gamma = 5.0;
    LikelihoodConvention convention = LikelihoodConvention::Unscaled;

    /// Coefficient c in log rho(r) = -c |r|^2.
    double precision() const {
        const double g2 = gamma * gamma;
        return convention == LikelihoodConvention::Unscaled ? 1.0 / g2 : 0.5 / g2;
    }
};

inline double log_prior(const OscillatorParams& u, const PriorBox& box) {
    return box.contains(u) ? 0.0 : kNegInf;
}

inline double squared_residual(const OscillatorParams& u, const DeviationData& y) {
    const auto pred = predict_ogtt(u);
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double r = y.y[i] - pred[i];
        s += r * r;
    }
    return s;
}

inline double log_likelihood(const OscillatorParams& u, const DeviationData& y, const NoiseModel& noise) {
    return -noise.precision() * squared_residual(u, y);
}

inline double log_posterior(const OscillatorParams& u, const DeviationData& y, const PriorBox& box,
                            const NoiseModel& noise) {
    if (!box.contains(u))
        return kNegInf;
    return log_likelihood(u, y, noise);
}

// ---------------------------------------------------------------------------
// Gaussian prior and the Tikhonov functional
// ---------------------------------------------------------------------------

struct GaussianPrior {
    ParamVector center{};
    double sigma = 1.0;
};

inline double squared_distance(const OscillatorParams& u, const ParamVector& c) {
    const auto v = u.to_array();
    double s = 0.0;
    for (std::size_t i = 0; i < kParamCount; ++i)
        s += (v[i] - c[i]) * (v[i] - c[i]);
    return s;
}

/// Isotropic Gaussian log-prior, using the same exponent convention as the noise model.
inline double gaussian_log_prior(const OscillatorParams& u, const GaussianPrior& gp, LikelihoodConvention conv) {
    const double s2 = gp.sigma * gp.sigma;
    const double c = conv == LikelihoodConvention::Unscaled ? 1.0 / s2 : 0.5 / s2;
    return -c * squared_distance(u, gp.center);
}

inline double gaussian_log_posterior(const OscillatorParams& u, const DeviationData& y, const GaussianPrior& gp,
                                     const NoiseModel& noise) {
    return log_likelihood(u, y, noise) + gaussian_log_prior(u, gp, noise.convention);
}

/// |y - G(u)|^2 + (gamma / sigma)^2 |u - u0|^2.
inline double tikhonov_objective(const OscillatorParams& u, const DeviationData& y, const GaussianPrior& gp,
                                 const NoiseModel& noise) {
    const double reg = (noise.gamma / gp.sigma) * (noise.gamma / gp.sigma);
    return squared_residual(u, y) + reg * squared_distance(u, gp.center);
}

// ---------------------------------------------------------------------------
// Multi-start optimisation
// ---------------------------------------------------------------------------

struct OptimizerConfig {
    int starts = 32;
    int max_iterations = 2000;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
};

struct MultiStartResult {
    ParamVector best{};
    double value = std::numeric_limits<double>::infinity();  // minimised objective
    int best_start = -1;
    std::vector<ParamVector> starts;
    std::vector<double> start_values;
};

/// Minimises `objective(ParamVector)` by Nelder-Mead from `cfg.starts` points drawn
/// uniformly in `start_box`. The search runs in box-normalised coordinates so the
/// simplex sees comparable scales; the domain itself is whatever `objective` allows.
/// Ties between starts go to the lowest start index.
template <class F>
MultiStartResult minimize_multistart(F&& objective, const PriorBox& start_box, const OptimizerConfig& cfg) {
    if (cfg.starts < 1)
        throw std::invalid_argument("minimize_multistart: need at least one start");
    Rng rng(cfg.seed);
    auto to_param = [&](const ParamVector& x) {
        ParamVector u{};
        for (std::size_t i = 0; i < kParamCount; ++i)
            u[i] = start_box[i].lo + x[i] * start_box[i].width();
        return u;
    };
    auto scaled = [&](const ParamVector& x) {
        const double v = objective(to_param(x));
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    SimplexOptions opt;
    opt.max_iterations = cfg.max_iterations;
    opt.tolerance = cfg.tolerance;
    opt.initial_step = 0.1;

    MultiStartResult result;
    for (int s = 0; s < cfg.starts; ++s) {
        ParamVector x0{};
        for (auto& xi : x0)
            xi = uniform01(rng);
        const ParamVector u0 = to_param(x0);
        result.starts.push_back(u0);
        result.start_values.push_back(scaled(x0));
        const auto local = nelder_mead_restarted<kParamCount>(scaled, x0, opt);
        if (local.value < result.value) {
            result.value = local.value;
            result.best = to_param(local.x);
            result.best_start = s;
        }
    }
    return result;
}

struct MapResult {
    OscillatorParams params;
    double log_posterior = kNegInf;
    int best_start = -1;
};

/// Maximum a posteriori estimate under the uniform prior box.
inline MapResult map_estimate(const DeviationData& y, const PriorBox& box, const NoiseModel& noise,
                              const OptimizerConfig& cfg) {
    box.validate();
    auto neg = [&](const ParamVector& u) { return -log_posterior(OscillatorParams::from_array(u), y, box, noise); };
    const auto ms = minimize_multistart(neg, box, cfg);
    if (!std::isfinite(ms.value))
        throw NoFiniteStart("map_estimate: no start produced a finite log-posterior");
    return {OscillatorParams::from_array(ms.best), -ms.value, ms.best_start};
}

/// MAP under the Gaussian prior; starts are drawn from `start_box`, the search is unconstrained.
inline MapResult map_estimate_gaussian(const DeviationData& y, const GaussianPrior& gp, const NoiseModel& noise,
                                       const PriorBox& start_box, const OptimizerConfig& cfg) {
    auto neg = [&](const ParamVector& u) { return -gaussian_log_posterior(OscillatorParams::from_array(u), y, gp, noise); };
    const auto ms = minimize_multistart(neg, start_box, cfg);
    return {OscillatorParams::from_array(ms.best), -ms.value, ms.best_start};
}

struct TikhonovResult {
    OscillatorParams params;
    double objective = 0.0;
    int best_start = -1;
};

inline TikhonovResult tikhonov_minimize(const DeviationData& y, const GaussianPrior& gp, const NoiseModel& noise,
                                        const PriorBox& start_box, const OptimizerConfig& cfg) {
    auto obj = [&](const ParamVector& u) { return tikhonov_objective(OscillatorParams::from_array(u), y, gp, noise); };
    const auto ms = minimize_multistart(obj, start_box, cfg);
    return {OscillatorParams::from_array(ms.best), ms.value, ms.best_start};
}

/// Folds an angle into [-pi, pi).
inline double wrap_phase(double delta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(delta + std::numbers::pi, two_pi);
    if (r < 0.0)
        r += two_pi;
    return r - std::numbers::pi;
}

/// Smallest distance between two phases modulo 2 pi.
inline double phase_distance(double a, double b) { return std::abs(wrap_phase(a - b)); }

} // namespace ogtt

#endif // OGTT_BAYES_HPP
