#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ogtt/ensemble.hpp"
#include "ogtt/posterior.hpp"
#include "test_support.hpp"

namespace ogtt {
namespace {

auto standard_gaussian = [](const Point<4>& x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return -0.5 * s;
};

const std::array<Interval, 4> kUnitBox{Interval{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}};

TEST(StretchFactor, SpansOneOverAToA) {
    EXPECT_DOUBLE_EQ(stretch_factor(2.0, 0.0), 0.5);
    EXPECT_DOUBLE_EQ(stretch_factor(2.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(stretch_factor(2.0, std::sqrt(2.0) - 1.0), 1.0);
}

TEST(StretchFactor, InverseCdfMatchesDensity) {
    // g(z) ~ 1/sqrt(z) on [1/a, a] gives P(z <= 1) = (1 - 1/sqrt(a)) / (sqrt(a) - 1/sqrt(a)).
    std::mt19937_64 rng(1);
    const double a = 2.0;
    int below = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
        below += stretch_factor(a, uniform01(rng)) <= 1.0;
    const double expected = (1 - 1 / std::sqrt(a)) / (std::sqrt(a) - 1 / std::sqrt(a));
    EXPECT_NEAR(static_cast<double>(below) / n, expected, 0.005);
}

TEST(StretchAcceptance, IdentityStretchIsAlwaysAccepted) {
    EXPECT_EQ(stretch_acceptance_probability(1.0, 4, -3.0, -3.0), 1.0);
}

TEST(StretchAcceptance, ZeroDensityProposalIsNeverAccepted) {
    EXPECT_EQ(stretch_acceptance_probability(1.3, 4, kNegInf, -3.0), 0.0);
}

TEST(StretchAcceptance, IncludesJacobianFactor) {
    EXPECT_NEAR(stretch_acceptance_probability(0.5, 4, -1.0, -1.0), 0.125, 1e-15);
    EXPECT_NEAR(stretch_acceptance_probability(0.5, 4, -1.0, -2.0), 0.125 * std::exp(1.0), 1e-15);
}

TEST(SamplerConfig, Validation) {
    SamplerConfig c;
    EXPECT_NO_THROW(c.validate(4));
    c.walkers = 31;
    EXPECT_THROW(c.validate(4), std::invalid_argument);
    c.walkers = 8;
    EXPECT_THROW(c.validate(4), std::invalid_argument);
    c = {};
    c.stretch = 1.0;
    EXPECT_THROW(c.validate(4), std::invalid_argument);
    c = {};
    c.burn_in = c.iterations;
    EXPECT_THROW(c.validate(4), std::invalid_argument);
}

TEST(InitEnsemble, UniformTargetGivesEqualCachedValues) {
    auto flat = [](const Point<4>&) { return -1.5; };
    const auto st = init_ensemble<4>(kUnitBox, SamplerConfig{}, flat);
    ASSERT_EQ(st.walkers(), 32u);
    for (std::size_t w = 0; w < st.walkers(); ++w) {
        EXPECT_EQ(st.log_density[w], -1.5);
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_TRUE(kUnitBox[i].contains(st.positions[w][i]));
    }
}

TEST(InitEnsemble, DeterministicUnderSeed) {
    const auto a = init_ensemble<4>(kUnitBox, SamplerConfig{.seed = 4}, standard_gaussian);
    const auto b = init_ensemble<4>(kUnitBox, SamplerConfig{.seed = 4}, standard_gaussian);
    EXPECT_EQ(a.positions, b.positions);
    EXPECT_EQ(a.log_density, b.log_density);
}

TEST(InitEnsemble, DegeneratePointBox) {
    const std::array<Interval, 4> point{Interval{1, 1}, {2, 2}, {3, 3}, {4, 4}};
    const auto st = init_ensemble<4>(point, SamplerConfig{}, standard_gaussian);
    for (const auto& p : st.positions)
        EXPECT_EQ(p, (Point<4>{1, 2, 3, 4}));
}

TEST(InitEnsemble, FailsWhenTargetIsNowhereFinite) {
    auto dead = [](const Point<4>&) { return kNegInf; };
    SamplerConfig c;
    c.max_init_attempts = 50;
    EXPECT_THROW(init_ensemble<4>(kUnitBox, c, dead), InitFailure);
}

TEST(InitEnsemble, BallAroundCentreStaysInBoxAndNearCentre) {
    const Point<4> centre{0.9999, 0.0, -0.5, 0.25};
    const auto st = init_ensemble_around<4>(kUnitBox, centre, SamplerConfig{.seed = 6}, standard_gaussian);
    for (std::size_t w = 0; w < st.walkers(); ++w) {
        EXPECT_EQ(st.log_density[w], standard_gaussian(st.positions[w]));
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_TRUE(kUnitBox[i].contains(st.positions[w][i]));
            EXPECT_NEAR(st.positions[w][i], centre[i], 0.02);
        }
    }
    const auto again = init_ensemble_around<4>(kUnitBox, centre, SamplerConfig{.seed = 6}, standard_gaussian);
    EXPECT_EQ(st.positions, again.positions);
}

TEST(InitEnsemble, BallFailsWhenCentreRegionIsDead) {
    auto dead = [](const Point<4>&) { return kNegInf; };
    SamplerConfig c;
    c.max_init_attempts = 20;
    EXPECT_THROW(init_ensemble_around<4>(kUnitBox, Point<4>{}, c, dead), InitFailure);
}

TEST(RunSampler, BurnInPlusOneKeepsOneSamplePerWalker) {
    SamplerConfig c{.walkers = 16, .iterations = 11, .burn_in = 10, .thin = 1};
    auto st = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    const auto s = run_sampler<4>(st, c, standard_gaussian);
    EXPECT_EQ(s.size(), 16u);
    EXPECT_EQ(s.iteration.front(), 11);
}

TEST(RunSampler, ThinningCount) {
    SamplerConfig c{.walkers = 10, .iterations = 100, .burn_in = 20, .thin = 7};
    auto st = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    EXPECT_EQ(run_sampler<4>(st, c, standard_gaussian).size(), 10u * (80 / 7));
}

TEST(RunSampler, SameSeedSameSamples) {
    SamplerConfig c{.iterations = 500, .burn_in = 100, .thin = 5, .seed = 21};
    auto s1 = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    auto s2 = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    const auto a = run_sampler<4>(s1, c, standard_gaussian);
    const auto b = run_sampler<4>(s2, c, standard_gaussian);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.acceptance_rate, b.acceptance_rate);
}

TEST(RunSampler, CachedValuesMatchTarget) {
    SamplerConfig c{.iterations = 300, .burn_in = 0, .thin = 1, .seed = 3};
    auto st = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    run_sampler<4>(st, c, standard_gaussian);
    for (std::size_t w = 0; w < st.walkers(); ++w)
        EXPECT_EQ(st.log_density[w], standard_gaussian(st.positions[w]));
}

TEST(RunSampler, StandardGaussianMoments) {
    SamplerConfig c{.iterations = 20000, .burn_in = 2000, .thin = 10, .seed = 99};
    auto st = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    const auto s = run_sampler<4>(st, c, standard_gaussian);
    const auto n = static_cast<double>(s.size());
    Point<4> mean{};
    for (const auto& x : s.samples)
        for (std::size_t i = 0; i < 4; ++i)
            mean[i] += x[i] / n;
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(mean[i], 0.0, 0.05);
        for (std::size_t j = 0; j < 4; ++j) {
            double cov = 0.0;
            for (const auto& x : s.samples)
                cov += (x[i] - mean[i]) * (x[j] - mean[j]) / (n - 1);
            EXPECT_NEAR(cov, i == j ? 1.0 : 0.0, 0.1);
        }
    }
    EXPECT_GT(s.acceptance_rate, 0.1);
    EXPECT_LT(s.acceptance_rate, 0.9);
}

TEST(RunSampler, MarginalMatchesAnalyticWithinTotalVariation) {
    SamplerConfig c{.iterations = 20000, .burn_in = 2000, .thin = 10, .seed = 7};
    auto st = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    const auto s = run_sampler<4>(st, c, standard_gaussian);
    const int bins = 20;
    const double lo = -4, hi = 4, w = (hi - lo) / bins;
    std::vector<double> emp(bins, 0.0);
    for (const auto& x : s.samples) {
        const int b = std::clamp(static_cast<int>(std::floor((x[0] - lo) / w)), 0, bins - 1);
        emp[static_cast<std::size_t>(b)] += 1.0 / static_cast<double>(s.size());
    }
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double tv = 0.0;
    for (int b = 0; b < bins; ++b) {
        double p = cdf(lo + (b + 1) * w) - cdf(lo + b * w);
        if (b == 0)
            p += cdf(lo);
        if (b == bins - 1)
            p += 1 - cdf(hi);
        tv += 0.5 * std::abs(emp[static_cast<std::size_t>(b)] - p);
    }
    EXPECT_LE(tv, 0.05);
}

TEST(RunSampler, AffineInvariance) {
    // T(x) = M x + c with a non-orthogonal, badly scaled M.
    const double M[4][4] = {{3.0, 0.5, 0.0, 0.0}, {0.0, 0.2, 0.1, 0.0}, {1.0, 0.0, 1.5, 0.3}, {0.0, 0.0, -0.4, 0.05}};
    const Point<4> shift{10.0, -2.0, 0.5, 100.0};
    // Inverse via Gauss-Jordan, used only to express the transformed target.
    double inv[4][4] = {};
    {
        double a[4][8] = {};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j)
                a[i][j] = M[i][j];
            a[i][4 + i] = 1.0;
        }
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                    piv = r;
            for (int j = 0; j < 8; ++j)
                std::swap(a[col][j], a[piv][j]);
            const double d = a[col][col];
            for (int j = 0; j < 8; ++j)
                a[col][j] /= d;
            for (int r = 0; r < 4; ++r) {
                if (r == col)
                    continue;
                const double f = a[r][col];
                for (int j = 0; j < 8; ++j)
                    a[r][j] -= f * a[col][j];
            }
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                inv[i][j] = a[i][4 + j];
    }
    auto forward = [&](const Point<4>& x) {
        Point<4> y{};
        for (int i = 0; i < 4; ++i) {
            y[i] = shift[i];
            for (int j = 0; j < 4; ++j)
                y[i] += M[i][j] * x[j];
        }
        return y;
    };
    auto transformed = [&](const Point<4>& y) {
        Point<4> x{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                x[i] += inv[i][j] * (y[j] - shift[j]);
        return standard_gaussian(x);
    };

    // Round-off between the two runs grows roughly tenfold every 20 iterations
    // (the walker dynamics are chaotic), so equality is checked over a short horizon.
    SamplerConfig c{.iterations = 100, .burn_in = 0, .thin = 1, .seed = 31};
    const auto base = init_ensemble<4>(kUnitBox, c, standard_gaussian);
    std::vector<Point<4>> mapped;
    for (const auto& p : base.positions)
        mapped.push_back(forward(p));
    auto s1 = init_ensemble_at<4>(base.positions, c, standard_gaussian);
    auto s2 = init_ensemble_at<4>(mapped, c, transformed);
    const auto a = run_sampler<4>(s1, c, standard_gaussian);
    const auto b = run_sampler<4>(s2, c, transformed);
    ASSERT_EQ(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto ta = forward(a.samples[k]);
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(ta[i] - b.samples[k][i]));
    }
    EXPECT_LE(worst, 1e-9);
}

TEST(PosteriorRun, AcceptanceRateForDefaultConfigIsReasonable) {
    std::mt19937_64 rng(8);
    const auto truth = testing::draw_truth(rng);
    const auto y = testing::noisy(truth, 5.0, rng);
    const auto s = run(y, PriorBox::from_data(y), NoiseModel{}, SamplerConfig{.seed = 2});
    EXPECT_EQ(s.size(), 32u * 1500u);
    EXPECT_GT(s.acceptance_rate, 0.1);
    EXPECT_LT(s.acceptance_rate, 0.9);
}

TEST(PosteriorRun, NoiselessTruthLiesInsideCentral99PercentBox) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 3; ++k) {
        const auto truth = testing::draw_truth(rng);
        const auto y = testing::noiseless(truth);
        const auto s = run(y, PriorBox::from_data(y), NoiseModel{}, SamplerConfig{.seed = 50u + k});
        const auto tv = truth.to_array();
        for (std::size_t i = 0; i < 4; ++i) {
            auto col = s.column(i);
            double t = tv[i];
            if (i == kDelta) {
                const double mu = circular_mean(col);
                col = fold_phase(col, mu);
                t = mu + wrap_phase(t - mu);
            }
            const auto box = credible_interval(col, 0.99);
            EXPECT_TRUE(box.contains(t)) << "param " << i << " truth " << t << " box [" << box.lo << ", " << box.hi << "]";
        }
    }
}

} // namespace
} // namespace ogtt
