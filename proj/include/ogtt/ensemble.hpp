#ifndef OGTT_ENSEMBLE_HPP
#define OGTT_ENSEMBLE_HPP

// Affine-invariant ensemble MCMC (stretch move).
//
// The ensemble is split into two halves that are updated in turn; each walker X
// in the active half picks a partner Y from the other half and proposes
//     X' = Y + z (X - Y),   z ~ g(z) proportional to 1/sqrt(z) on [1/a, a],
// accepted with probability min(1, z^(d-1) pi(X') / pi(X)).
//
// Every walker owns its own random stream, so the sequence of draws does not
// depend on the order in which walkers of one half are processed.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ogtt/bayes.hpp"
#include "ogtt/error.hpp"
#include "ogtt/random.hpp"

namespace ogtt {

template <std::size_t D>
using Point = std::array<double, D>;

struct SamplerConfig {
    int walkers = 32;
    double stretch = 2.0;  // a
    int iterations = 20000;
    int burn_in = 5000;
    int thin = 10;
    std::uint64_t seed = 0;
    int max_init_attempts = 10000;

    void validate(std::size_t dim) const {
        if (walkers % 2 != 0 || walkers < static_cast<int>(2 * dim + 2))
            throw std::invalid_argument("SamplerConfig: walker count must be even and >= 2d+2");
        if (!(stretch > 1.0))
            throw std::invalid_argument("SamplerConfig: stretch parameter must exceed 1");
        if (iterations < 1 || burn_in < 0 || burn_in >= iterations)
            throw std::invalid_argument("SamplerConfig: need 0 <= burn_in < iterations");
        if (thin < 1)
            throw std::invalid_argument("SamplerConfig: thinning stride must be >= 1");
    }
};

template <std::size_t D>
struct EnsembleState {
    std::vector<Point<D>> positions;
    std::vector<double> log_density;  // cached target value per walker, always finite
    std::vector<Rng> streams;         // one engine per walker
    long iteration = 0;
    long proposed = 0;
    long accepted = 0;

    std::size_t walkers() const { return positions.size(); }
    double acceptance_rate() const {
        return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
    }
};

/// Inverse-CDF draw from g(z) proportional to 1/sqrt(z) on [1/a, a]; u in [0, 1].
inline double stretch_factor(double a, double u) {
    const double s = (a - 1.0) * u + 1.0;
    return s * s / a;
}

/// log of z^(d-1) pi(X') / pi(X). -inf when the proposal has zero density.
inline double stretch_log_ratio(double z, std::size_t dim, double log_new, double log_old) {
    if (log_new == kNegInf)
        return kNegInf;
    return static_cast<double>(dim - 1) * std::log(z) + (log_new - log_old);
}

inline double stretch_acceptance_probability(double z, std::size_t dim, double log_new, double log_old) {
    const double lr = stretch_log_ratio(z, dim, log_new, log_old);
    return lr >= 0.0 ? 1.0 : std::exp(lr);
}

namespace detail {

template <std::size_t D>
EnsembleState<D> make_state(const SamplerConfig& cfg) {
    EnsembleState<D> st;
    const auto k = static_cast<std::size_t>(cfg.walkers);
    st.positions.resize(k);
    st.log_density.resize(k);
    st.streams.reserve(k);
    for (std::size_t w = 0; w < k; ++w)
        st.streams.emplace_back(derive_seed(cfg.seed, 0x57a7e, w));
    return st;
}

} // namespace detail

/// K walkers uniform in the box, each redrawn until the target is finite there.
template <std::size_t D, class Target>
EnsembleState<D> init_ensemble(const std::array<Interval, D>& box, const SamplerConfig& cfg, Target&& target) {
    cfg.validate(D);
    auto st = detail::make_state<D>(cfg);
    for (std::size_t w = 0; w < st.walkers(); ++w) {
        bool ok = false;
        for (int attempt = 0; attempt < cfg.max_init_attempts && !ok; ++attempt) {
            Point<D> p{};
            for (std::size_t i = 0; i < D; ++i)
                p[i] = box[i].lo + uniform01(st.streams[w]) * box[i].width();
            const double lp = target(p);
            if (std::isfinite(lp)) {
                st.positions[w] = p;
                st.log_density[w] = lp;
                ok = true;
            }
        }
        if (!ok)
            throw InitFailure("init_ensemble: target is not finite anywhere the walkers were drawn");
    }
    return st;
}

/// K walkers in a tight Gaussian ball around `centre` (scale: `spread` times the
/// box width per coordinate), clamped into the box and redrawn until finite.
///
/// Walkers started uniformly can strand in a remote local mode: a stretch move
/// towards the main cluster lands in low density, so they stay put for the whole
/// run and leave a spurious bump in the marginals. Starting at the optimum avoids
/// that; the ball expands to the posterior's width during burn-in.
template <std::size_t D, class Target>
EnsembleState<D> init_ensemble_around(const std::array<Interval, D>& box, const Point<D>& centre,
                                      const SamplerConfig& cfg, Target&& target, double spread = 1e-3) {
    cfg.validate(D);
    auto st = detail::make_state<D>(cfg);
    std::normal_distribution<double> normal;
    for (std::size_t w = 0; w < st.walkers(); ++w) {
        bool ok = false;
        for (int attempt = 0; attempt < cfg.max_init_attempts && !ok; ++attempt) {
            Point<D> p{};
            for (std::size_t i = 0; i < D; ++i)
                p[i] = box[i].clamp(centre[i] + spread * box[i].width() * normal(st.streams[w]));
            const double lp = target(p);
            if (std::isfinite(lp)) {
                st.positions[w] = p;
                st.log_density[w] = lp;
                ok = true;
            }
        }
        if (!ok)
            throw InitFailure("init_ensemble_around: target is not finite near the starting point");
    }
    return st;
}

/// Starts from caller-supplied walker positions.
template <std::size_t D, class Target>
EnsembleState<D> init_ensemble_at(std::span<const Point<D>> positions, const SamplerConfig& cfg, Target&& target) {
    cfg.validate(D);
    if (positions.size() != static_cast<std::size_t>(cfg.walkers))
        throw std::invalid_argument("init_ensemble_at: position count differs from walker count");
    auto st = detail::make_state<D>(cfg);
    for (std::size_t w = 0; w < st.walkers(); ++w) {
        const double lp = target(positions[w]);
        if (!std::isfinite(lp))
            throw InitFailure("init_ensemble_at: initial walker has zero density");
        st.positions[w] = positions[w];
        st.log_density[w] = lp;
    }
    return st;
}

/// Advances the ensemble by one iteration (both half-sweeps).
template <std::size_t D, class Target>
void stretch_move(EnsembleState<D>& st, double a, Target&& target) {
    const std::size_t k = st.walkers();
    const std::size_t half = k / 2;
    for (std::size_t part = 0; part < 2; ++part) {
        const std::size_t first = part * half;
        const std::size_t other = (1 - part) * half;
        for (std::size_t w = first; w < first + half; ++w) {
            Rng& rng = st.streams[w];
            const auto partner = other + std::uniform_int_distribution<std::size_t>(0, half - 1)(rng);
            const double z = stretch_factor(a, uniform01(rng));
            const double u = uniform01(rng);

            const Point<D>& x = st.positions[w];
            const Point<D>& y = st.positions[partner];
            Point<D> proposal{};
            for (std::size_t i = 0; i < D; ++i)
                proposal[i] = y[i] + z * (x[i] - y[i]);
            const double lp = target(proposal);
            const double lr = stretch_log_ratio(z, D, lp, st.log_density[w]);
            ++st.proposed;
            if (std::log(u) < lr) {
                st.positions[w] = proposal;
                st.log_density[w] = lp;
                ++st.accepted;
            }
        }
    }
    ++st.iteration;
}

template <std::size_t D>
struct SampleSet {
    std::vector<Point<D>> samples;
    std::vector<double> log_density;
    std::vector<int> walker;
    std::vector<long> iteration;  // 1-based iteration that produced the sample
    double acceptance_rate = 0.0; // accepted / proposed after burn-in

    std::size_t size() const { return samples.size(); }

    std::vector<double> column(std::size_t i) const {
        std::vector<double> out;
        out.reserve(samples.size());
        for (const auto& s : samples)
            out.push_back(s[i]);
        return out;
    }
};

/// Runs `cfg.iterations` iterations from `st`; keeps iterations i > burn_in with
/// (i - burn_in) divisible by `thin`, flattened walker-major within each kept iteration.
template <std::size_t D, class Target>
SampleSet<D> run_sampler(EnsembleState<D>& st, const SamplerConfig& cfg, Target&& target) {
    cfg.validate(D);
    SampleSet<D> out;
    const auto kept = static_cast<std::size_t>((cfg.iterations - cfg.burn_in) / cfg.thin);
    out.samples.reserve(kept * st.walkers());
    out.log_density.reserve(kept * st.walkers());
    out.walker.reserve(kept * st.walkers());
    out.iteration.reserve(kept * st.walkers());

    long post_proposed = 0;
    long post_accepted = 0;
    for (int i = 1; i <= cfg.iterations; ++i) {
        const long p0 = st.proposed;
        const long a0 = st.accepted;
        stretch_move<D>(st, cfg.stretch, target);
        if (i <= cfg.burn_in)
            continue;
        post_proposed += st.proposed - p0;
        post_accepted += st.accepted - a0;
        if ((i - cfg.burn_in) % cfg.thin != 0)
            continue;
        for (std::size_t w = 0; w < st.walkers(); ++w) {
            out.samples.push_back(st.positions[w]);
            out.log_density.push_back(st.log_density[w]);
            out.walker.push_back(static_cast<int>(w));
            out.iteration.push_back(i);
        }
    }
    out.acceptance_rate = post_proposed > 0 ? static_cast<double>(post_accepted) / static_cast<double>(post_proposed)
                                            : 0.0;
    return out;
}

/// Posterior sampling for one patient: walkers start uniform in the prior box.
inline SampleSet<kParamCount> run(const DeviationData& y, const PriorBox& box, const NoiseModel& noise,
                                  const SamplerConfig& cfg) {
    auto target = [&](const Point<kParamCount>& u) {
        return log_posterior(OscillatorParams::from_array(u), y, box, noise);
    };
    auto st = init_ensemble<kParamCount>(box.bounds, cfg, target);
    return run_sampler<kParamCount>(st, cfg, target);
}

/// Same, with walkers started in a small ball around `start` (normally the MAP).
inline SampleSet<kParamCount> run(const DeviationData& y, const PriorBox& box, const NoiseModel& noise,
                                  const SamplerConfig& cfg, const OscillatorParams& start) {
    auto target = [&](const Point<kParamCount>& u) {
        return log_posterior(OscillatorParams::from_array(u), y, box, noise);
    };
    auto st = init_ensemble_around<kParamCount>(box.bounds, start.to_array(), cfg, target);
    return run_sampler<kParamCount>(st, cfg, target);
}

} // namespace ogtt

#endif // OGTT_ENSEMBLE_HPP
