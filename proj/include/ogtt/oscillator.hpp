#ifndef OGTT_OSCILLATOR_HPP
#define OGTT_OSCILLATOR_HPP

// Damped-oscillator model of the post-load glucose deviation g(t) = G(t) - G0.
//
// The linearised two-compartment system
//     g' = -m1 g - m2 h
//     h' = -m3 h + m4 g
// reduces (once the glucose load has been absorbed) to
//     g'' + 2 alpha g' + omega0^2 g = 0,   2 alpha = m1 + m3,  omega0^2 = m1 m3 + m2 m4,
// whose underdamped solution is g(t) = A exp(-alpha t) cos(omega t - delta) with
// omega = sqrt(omega0^2 - alpha^2).

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "ogtt/error.hpp"

namespace ogtt {

/// OGTT sampling times (minutes) after the fasting sample at t = 0.
inline constexpr std::array<double, 4> kSampleTimes{30.0, 60.0, 90.0, 120.0};

/// Index of each component in the packed parameter vector (A, alpha, omega, delta).
enum ParamIndex : std::size_t { kAmplitude = 0, kAlpha = 1, kOmega = 2, kDelta = 3 };
inline constexpr std::size_t kParamCount = 4;
inline constexpr std::array<const char*, kParamCount> kParamNames{"A", "alpha", "omega", "delta"};

using ParamVector = std::array<double, kParamCount>;

struct OscillatorParams {
    double A = 0.0;      // mg/dl
    double alpha = 0.0;  // 1/min
    double omega = 0.0;  // rad/min, damped frequency
    double delta = 0.0;  // rad

    /// Builds the parameters from the natural frequency omega0.
    /// Throws NotUnderdamped unless alpha^2 < omega0^2.
    static OscillatorParams from_natural(double A, double alpha, double omega0, double delta) {
        if (!(alpha * alpha < omega0 * omega0))
            throw NotUnderdamped("alpha^2 must be strictly below omega0^2");
        return {A, alpha, std::sqrt(omega0 * omega0 - alpha * alpha), delta};
    }

    double omega0() const { return std::sqrt(omega * omega + alpha * alpha); }

    ParamVector to_array() const { return {A, alpha, omega, delta}; }
    static OscillatorParams from_array(const ParamVector& u) { return {u[0], u[1], u[2], u[3]}; }

    friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;
};

/// g(t) = A exp(-alpha t) cos(omega t - delta).
inline double evaluate(const OscillatorParams& p, double t) {
    return p.A * std::exp(-p.alpha * t) * std::cos(p.omega * t - p.delta);
}

/// The observation operator: evaluate at each requested time.
inline std::vector<double> predict(const OscillatorParams& p, std::span<const double> times) {
    if (times.empty())
        throw std::invalid_argument("predict: empty time grid");
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        if (!(t >= 0.0))
            throw std::invalid_argument("predict: negative time");
        out.push_back(evaluate(p, t));
    }
    return out;
}

/// Prediction on the fixed OGTT grid (30, 60, 90, 120 min).
inline std::array<double, 4> predict_ogtt(const OscillatorParams& p) {
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < kSampleTimes.size(); ++i)
        out[i] = evaluate(p, kSampleTimes[i]);
    return out;
}

/// Rate constants of the linearised glucose/hormone system plus the fasting levels.
/// Hormone units are left abstract; H0 is carried but plays no part in the reduction.
struct CompartmentParams {
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    double G0 = 0.0;
    double H0 = 0.0;
};

struct DampingPair {
    double alpha = 0.0;
    double omega0 = 0.0;
    double omega0_sq = 0.0;  // kept so the characteristic polynomial is reproduced exactly
};

/// Coefficients of s^2 + trace s + determinant.
struct CharacteristicPolynomial {
    double trace = 0.0;        // 2 alpha
    double determinant = 0.0;  // omega0^2
};

inline DampingPair from_compartments(const CompartmentParams& c) {
    if (c.m1 < 0.0 || c.m2 < 0.0 || c.m3 < 0.0 || c.m4 < 0.0)
        throw std::invalid_argument("from_compartments: rate constants must be nonnegative");
    DampingPair d;
    d.alpha = (c.m1 + c.m3) / 2.0;
    d.omega0_sq = c.m1 * c.m3 + c.m2 * c.m4;
    d.omega0 = std::sqrt(d.omega0_sq);
    if (!(d.alpha * d.alpha < d.omega0_sq))
        throw NotUnderdamped("compartment rates give alpha^2 >= omega0^2");
    return d;
}

inline CharacteristicPolynomial characteristic_polynomial(const DampingPair& d) {
    return {2.0 * d.alpha, d.omega0_sq};
}

struct TrajectorySample {
    double t = 0.0;
    double g = 0.0;
    double gdot = 0.0;
};

/// Classical fixed-step RK4 on (g, g') for g'' + 2 alpha g' + omega0^2 g = 0.
/// Returns one sample per step, t_k = k * dt, including t = 0.
inline std::vector<TrajectorySample> integrate_oscillator(const DampingPair& d, double g0, double gdot0,
                                                          double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("integrate_oscillator: dt and t_end must be positive");
    if (!(d.alpha * d.alpha < d.omega0_sq))
        throw NotUnderdamped("integrate_oscillator: not underdamped");

    const double two_alpha = 2.0 * d.alpha;
    const double w2 = d.omega0_sq;
    auto accel = [&](double g, double v) { return -two_alpha * v - w2 * g; };

    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    std::vector<TrajectorySample> out;
    out.reserve(steps + 1);
    double g = g0;
    double v = gdot0;
    out.push_back({0.0, g, v});
    for (std::size_t k = 1; k <= steps; ++k) {
        const double k1g = v;
        const double k1v = accel(g, v);
        const double k2g = v + 0.5 * dt * k1v;
        const double k2v = accel(g + 0.5 * dt * k1g, v + 0.5 * dt * k1v);
        const double k3g = v + 0.5 * dt * k2v;
        const double k3v = accel(g + 0.5 * dt * k2g, v + 0.5 * dt * k2v);
        const double k4g = v + dt * k3v;
        const double k4v = accel(g + dt * k3g, v + dt * k3v);
        g += dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.push_back({static_cast<double>(k) * dt, g, v});
    }
    return out;
}

inline std::vector<TrajectorySample> integrate_ode(const CompartmentParams& c, double g0, double gdot0,
                                                   double t_end, double dt) {
    return integrate_oscillator(from_compartments(c), g0, gdot0, t_end, dt);
}

/// Compartment rates realising (alpha, omega0): m1 = m3 = alpha, m2 = m4 = sqrt(omega0^2 - alpha^2).
inline CompartmentParams compartments_for(const OscillatorParams& p) {
    const double coupling = p.omega;  // m2 m4 = omega0^2 - alpha^2 = omega^2
    return {p.alpha, coupling, p.alpha, coupling, 0.0, 0.0};
}

/// Initial conditions that make the ODE trajectory coincide with the closed form.
inline std::array<double, 2> initial_state(const OscillatorParams& p) {
    const double c = std::cos(p.delta);
    const double s = std::sin(p.delta);
    return {p.A * c, -p.A * (p.alpha * c - p.omega * s)};
}

} // namespace ogtt

#endif // OGTT_OSCILLATOR_HPP
