#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ogtt/bayes.hpp"
#include "test_support.hpp"

namespace ogtt {
namespace {

using testing::noiseless;

const DeviationData kData = make_deviation({60, 50, 30, 10});
const PriorBox kBox = PriorBox::from_data(kData);

TEST(PriorBox, BoundsFollowTheData) {
    EXPECT_EQ(kBox[kAmplitude], (Interval{5.0, 165.0}));
    EXPECT_EQ(kBox[kAlpha], (Interval{0.0, 0.1}));
    EXPECT_EQ(kBox[kOmega], (Interval{0.0, 0.15}));
    EXPECT_EQ(kBox[kDelta], (Interval{-2 * std::numbers::pi, 2 * std::numbers::pi}));
}

TEST(PriorBox, FlatDataGivesAmplitudeZeroToFifteen) {
    const auto box = PriorBox::from_data(make_deviation({0, 0, 0, 0}));
    EXPECT_EQ(box[kAmplitude], (Interval{0.0, 15.0}));
}

TEST(LogPrior, InsideIsZero) { EXPECT_EQ(log_prior({50, 0.02, 0.05, 1.0}, kBox), 0.0); }

TEST(LogPrior, AlphaOutsideIsMinusInfinity) {
    EXPECT_EQ(log_prior({50, 0.2, 0.05, 1.0}, kBox), -std::numeric_limits<double>::infinity());
}

TEST(LogPrior, ClosedAtTheBoundary) {
    EXPECT_EQ(log_prior({50, 0.02, 0.05, -2 * std::numbers::pi}, kBox), 0.0);
    EXPECT_EQ(log_prior({5.0, 0.0, 0.15, 2 * std::numbers::pi}, kBox), 0.0);
}

DeviationData with_residual(const OscillatorParams& u, std::array<double, 4> r) {
    auto y = predict_ogtt(u);
    for (std::size_t i = 0; i < 4; ++i)
        y[i] += r[i];
    return make_deviation(y);
}

TEST(LogLikelihood, ExactFitIsZero) {
    const OscillatorParams u{80, 0.02, 0.04, 1.0};
    EXPECT_EQ(log_likelihood(u, noiseless(u), NoiseModel{}), 0.0);
}

TEST(LogLikelihood, UsesOneOverGammaSquared) {
    const OscillatorParams u{0, 0.02, 0.04, 1.0};  // zero prediction keeps the residual exact
    EXPECT_DOUBLE_EQ(log_likelihood(u, make_deviation({5, 0, 0, 0}), NoiseModel{}), -1.0);
    EXPECT_DOUBLE_EQ(log_likelihood(u, make_deviation({3, 4, 0, 0}), NoiseModel{}), -1.0);
    const NoiseModel conventional{5.0, LikelihoodConvention::Conventional};
    EXPECT_DOUBLE_EQ(log_likelihood(u, make_deviation({3, 4, 0, 0}), conventional), -0.5);
}

TEST(LogPosterior, Examples) {
    const OscillatorParams inside{0, 0.02, 0.04, 1.0};
    EXPECT_EQ(log_posterior({80, 0.5, 0.04, 1.0}, kData, kBox, NoiseModel{}),
              -std::numeric_limits<double>::infinity());
    const OscillatorParams u{80, 0.02, 0.04, 1.0};
    EXPECT_EQ(log_posterior(u, noiseless(u), PriorBox::from_data(noiseless(u)), NoiseModel{}), 0.0);
    const auto y = make_deviation({5, 0, 0, 0});
    auto box = PriorBox::from_data(y);
    EXPECT_DOUBLE_EQ(log_posterior(inside, y, box, NoiseModel{}), -1.0);
}

TEST(LogPosteriorProperty, SmallerResidualStrictlyIncreasesPosterior) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const auto u = testing::draw_truth(rng);
        std::array<double, 4> r{n(rng), n(rng), n(rng), n(rng)};
        PriorBox box = kBox;
        box[kAmplitude] = {0.0, 500.0};
        double prev = -std::numeric_limits<double>::infinity();
        for (double s : {1.0, 0.8, 0.5, 0.2, 0.0}) {
            std::array<double, 4> rs{};
            for (std::size_t i = 0; i < 4; ++i)
                rs[i] = s * r[i];
            const double lp = log_posterior(u, with_residual(u, rs), box, NoiseModel{});
            ASSERT_GT(lp, prev);
            prev = lp;
        }
    }
}

TEST(LogPosteriorProperty, InvariantUnderFullPhaseTurn) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-2 * std::numbers::pi, 0.0);
    for (int k = 0; k < 100; ++k) {
        auto u = testing::draw_truth(rng);
        u.delta = d(rng);
        auto v = u;
        v.delta += 2 * std::numbers::pi;
        const auto y = testing::noisy(u, 5.0, rng);
        const auto box = PriorBox::from_data(y);
        if (!box.contains(u))
            continue;
        EXPECT_NEAR(log_posterior(u, y, box, NoiseModel{}), log_posterior(v, y, box, NoiseModel{}), 1e-9);
    }
}

TEST(MapEstimate, RecoversNoiselessParameters) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 3; ++k) {
        const auto truth = testing::draw_truth(rng);
        const auto y = noiseless(truth);
        const auto box = PriorBox::from_data(y);
        const auto map = map_estimate(y, box, NoiseModel{}, OptimizerConfig{.seed = 100u + k});
        EXPECT_LE(testing::recovery_error(map.params, truth), 1e-3);
        EXPECT_TRUE(box.contains(map.params));
        // MAP dominance over the generating point.
        EXPECT_GE(map.log_posterior, log_posterior(truth, y, box, NoiseModel{}) - 1e-12);
    }
}

TEST(MapEstimate, FlatDataReachesZeroResidual) {
    const auto y = make_deviation({0, 0, 0, 0});
    const auto box = PriorBox::from_data(y);
    const auto map = map_estimate(y, box, NoiseModel{}, OptimizerConfig{});
    EXPECT_GE(map.log_posterior, -1e-12);
    EXPECT_TRUE(box.contains(map.params));
}

TEST(MapEstimate, DeterministicUnderSeed) {
    const auto a = map_estimate(kData, kBox, NoiseModel{}, OptimizerConfig{.seed = 5});
    const auto b = map_estimate(kData, kBox, NoiseModel{}, OptimizerConfig{.seed = 5});
    EXPECT_EQ(a.params, b.params);
    EXPECT_EQ(a.log_posterior, b.log_posterior);
    EXPECT_EQ(a.best_start, b.best_start);
}

TEST(MapEstimate, NeverWorseThanAnyStart) {
    auto neg = [&](const ParamVector& u) { return -log_posterior(OscillatorParams::from_array(u), kData, kBox, {}); };
    const auto ms = minimize_multistart(neg, kBox, OptimizerConfig{.starts = 16, .seed = 8});
    ASSERT_EQ(ms.start_values.size(), 16u);
    for (double v : ms.start_values)
        EXPECT_LE(ms.value, v);
    const auto map = map_estimate(kData, kBox, NoiseModel{}, OptimizerConfig{.starts = 16, .seed = 8});
    EXPECT_EQ(map.log_posterior, -ms.value);
}

TEST(Tikhonov, ZeroAtCenterWithExactFit) {
    const OscillatorParams u{80, 0.02, 0.04, 1.0};
    EXPECT_EQ(tikhonov_objective(u, noiseless(u), GaussianPrior{u.to_array(), 2.0}, NoiseModel{}), 0.0);
}

TEST(Tikhonov, UnitRegularizer) {
    const OscillatorParams u{80, 0.02, 0.04, 1.0};
    GaussianPrior gp{u.to_array(), 5.0};
    gp.center[kAmplitude] += 1.0;
    EXPECT_DOUBLE_EQ(tikhonov_objective(u, noiseless(u), gp, NoiseModel{5.0}), 1.0);
}

TEST(Tikhonov, IsAScaledNegativeGaussianLogPosterior) {
    std::mt19937_64 rng(4);
    for (auto conv : {LikelihoodConvention::Unscaled, LikelihoodConvention::Conventional}) {
        const NoiseModel noise{5.0, conv};
        const double scale = conv == LikelihoodConvention::Unscaled ? 25.0 : 50.0;
        for (int k = 0; k < 50; ++k) {
            const auto u = testing::draw_truth(rng);
            const auto v = testing::draw_truth(rng);
            const auto y = testing::noisy(u, 5.0, rng);
            const GaussianPrior gp{u.to_array(), 3.0};
            EXPECT_NEAR(tikhonov_objective(v, y, gp, noise), -scale * gaussian_log_posterior(v, y, gp, noise),
                        1e-9 * (1 + tikhonov_objective(v, y, gp, noise)));
        }
    }
}

TEST(Tikhonov, MinimizerCoincidesWithGaussianMap) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 3; ++k) {
        const auto truth = testing::draw_truth(rng);
        const auto y = testing::noisy(truth, 5.0, rng);
        const auto box = PriorBox::from_data(y);
        auto center = truth.to_array();
        center[kAmplitude] += 10.0;
        const GaussianPrior gp{center, 4.0};
        const OptimizerConfig cfg{.starts = 8, .seed = 40u + k};
        const auto map = map_estimate_gaussian(y, gp, NoiseModel{}, box, cfg);
        const auto tik = tikhonov_minimize(y, gp, NoiseModel{}, box, cfg);
        EXPECT_NEAR(tikhonov_objective(map.params, y, gp, NoiseModel{}), tik.objective, 1e-6);
    }
}

TEST(Phase, WrapAndDistance) {
    EXPECT_NEAR(wrap_phase(3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(phase_distance(0.1, 0.1 + 4 * std::numbers::pi), 0.0, 1e-14);
    EXPECT_NEAR(phase_distance(-3.1, 3.1), 2 * std::numbers::pi - 6.2, 1e-14);
}

TEST(NelderMead, MinimisesRosenbrock) {
    auto f = [](const std::array<double, 2>& x) {
        return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
    };
    const auto r = nelder_mead_restarted<2>(f, {-1.2, 1.0}, SimplexOptions{0.1, 5000, 1e-10});
    EXPECT_NEAR(r.x[0], 1.0, 1e-6);
    EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(NelderMead, RespectsInfiniteBarrier) {
    auto f = [](const std::array<double, 1>& x) {
        return x[0] < 0.0 ? std::numeric_limits<double>::infinity() : (x[0] + 1) * (x[0] + 1);
    };
    const auto r = nelder_mead<1>(f, {0.5}, SimplexOptions{});
    EXPECT_GE(r.x[0], 0.0);
    EXPECT_NEAR(r.x[0], 0.0, 1e-7);
}

} // namespace
} // namespace ogtt
