#ifndef OGTT_TESTS_SUPPORT_HPP
#define OGTT_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>

#include "ogtt/bayes.hpp"

namespace ogtt::testing {

inline DeviationData noiseless(const OscillatorParams& truth) { return make_deviation(predict_ogtt(truth)); }

inline DeviationData noisy(const OscillatorParams& truth, double gamma, std::mt19937_64& rng) {
    auto y = predict_ogtt(truth);
    std::normal_distribution<double> n(0.0, gamma);
    for (auto& v : y)
        v += n(rng);
    return make_deviation(y);
}

/// Generating parameters with a well-conditioned, non-aliased OGTT response.
inline OscillatorParams draw_truth(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> A(50.0, 150.0), al(0.008, 0.035), om(0.02, 0.05), de(0.8, 1.6);
    return {A(rng), al(rng), om(rng), de(rng)};
}

/// Largest per-component relative error, comparing delta modulo 2 pi (relative to 2 pi).
inline double recovery_error(const OscillatorParams& est, const OscillatorParams& truth) {
    double e = 0.0;
    e = std::max(e, std::abs(est.A - truth.A) / std::abs(truth.A));
    e = std::max(e, std::abs(est.alpha - truth.alpha) / std::abs(truth.alpha));
    e = std::max(e, std::abs(est.omega - truth.omega) / std::abs(truth.omega));
    e = std::max(e, phase_distance(est.delta, truth.delta) / std::abs(truth.delta));
    return e;
}

} // namespace ogtt::testing

#endif // OGTT_TESTS_SUPPORT_HPP
