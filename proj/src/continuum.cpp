#include "pdxprop/continuum.hpp"

#include "pdxprop/faddeeva.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pdxprop::continuum {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;



bool wrong_side(double x, Side side) {
    return side == Side::Positive ? x < 0.0 : x > 0.0;
}

// exp(z) - 1 without cancellation for small |z|.
cplx expm1_complex(cplx z) {
    if (z.imag() == 0.0) return std::expm1(z.real());
    if (std::abs(z) < 1e-4) {
        return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0))));
    }
    return std::exp(z) - 1.0;
}

}  // namespace

void Query::validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("Query: T must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("Query: mass must be positive");
}

cplx theta_for(TimeKind kind, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("theta_for: T must be positive");
    return kind == TimeKind::Euclidean ? cplx(T, 0.0) : cplx(0.0, T);
}

cplx free_theta(double dx, cplx theta, double mass) {
    const cplx inv = mass / (kTwoPi * theta);
    return std::sqrt(inv) * std::exp(-mass * dx * dx / (2.0 * theta));
}

cplx restricted_theta(double x0, double x1, cplx theta, double mass, Side side) {
    if (wrong_side(x0, side) || wrong_side(x1, side)) return 0.0;
    return free_theta(x1 - x0, theta, mass) - free_theta(-x1 - x0, theta, mass);
}

cplx boundary_derivative_theta(double x_other, cplx theta, double mass) {
    return 2.0 * mass * x_other / theta * free_theta(x_other, theta, mass);
}

cplx step_edge_theta(cplx theta, double V, double mass) {
    const cplx sqrt_theta = std::sqrt(theta);
    if (V == 0.0) return std::sqrt(mass / kTwoPi) / sqrt_theta;  // free limit
    // -expm1(-V theta) avoids the 0/0 for small |V theta|.
    const cplx numer = -expm1_complex(-V * theta);
    return std::sqrt(mass / kTwoPi) * numer / (V * theta * sqrt_theta);
}

cplx delta_edge_theta(cplx theta, double a, double mass) {
    const cplx free_value = std::sqrt(mass / (kTwoPi * theta));
    if (a == 0.0) return free_value;
    return free_value - 0.5 * a * mass * erfcx(a * std::sqrt(0.5 * mass * theta));
}

cplx delta_full_theta(double x0, double x1, cplx theta, double a, double mass) {
    const cplx direct = free_theta(x1 - x0, theta, mass);
    if (a == 0.0) return direct;
    const double s = std::abs(x0) + std::abs(x1);
    const cplx arg =
        s * std::sqrt(0.5 * mass / theta) + a * std::sqrt(0.5 * mass * theta);
    const cplx corr = 0.5 * a * std::exp(-mass * s * s / (2.0 * theta)) * erfcx(arg);
    return direct - corr;
}

namespace {

// integral_0^inf e^{-a m u} g_f(s + u, theta | 0, 0) du along the contour
// u = e^{i psi} t with psi = arg(theta)/2, on which the Gaussian decays for
// any |arg theta| <= pi/2.
cplx delta_tail_integral(double s, cplx theta, double a, double mass,
                         const quad::QuadratureSpec& spec) {
    const double psi = 0.5 * std::arg(theta);
    const cplx rot = cplx(std::cos(psi), std::sin(psi));
    const double abs_theta = std::abs(theta);
    // Cap where the decaying part of the exponent falls below e^{-60}.
    const double disc = abs_theta * abs_theta * a * a + 120.0 * abs_theta / mass;
    const double t_max = abs_theta * std::abs(a) + std::sqrt(disc) + 2.0 * s + 1.0;
    const cplx pref = std::sqrt(mass / (kTwoPi * theta));
    const auto integrand = [&](double t) -> cplx {
        const cplx u = rot * t;
        return rot * std::exp(-a * mass * u - mass * (s + u) * (s + u) / (2.0 * theta));
    };
    return pref * quad::integrate_complex_or_throw(integrand, 0.0, t_max, spec).value;
}

}  // namespace

cplx delta_edge_theta_by_quadrature(cplx theta, double a, double mass,
                                    const quad::QuadratureSpec& spec) {
    return std::sqrt(mass / (kTwoPi * theta)) - a * delta_tail_integral(0.0, theta, a, mass, spec);
}

cplx delta_full_theta_by_quadrature(double x0, double x1, cplx theta, double a, double mass,
                                    const quad::QuadratureSpec& spec) {
    const double s = std::abs(x0) + std::abs(x1);
    return free_theta(x1 - x0, theta, mass) - a * delta_tail_integral(s, theta, a, mass, spec);
}

PropagatorValue free_propagator(const Query& q, TimeKind kind) {
    q.validate();
    return {free_theta(q.x1 - q.x0, theta_for(kind, q.T), q.mass), kind};
}

PropagatorValue restricted_propagator(const Query& q, TimeKind kind, Side side) {
    q.validate();
    return {restricted_theta(q.x0, q.x1, theta_for(kind, q.T), q.mass, side), kind};
}

PropagatorValue boundary_derivative(const Query& q, TimeKind kind, Side side) {
    q.validate();
    if (q.x1 != 0.0) {
        throw std::invalid_argument("boundary_derivative: x1 must sit at the boundary x = 0");
    }
    if (q.x0 == 0.0) {
        throw std::domain_error("boundary_derivative: x0 must be strictly off the boundary");
    }
    if (wrong_side(q.x0, side)) return {0.0, kind};  // derivative of the zero function
    return {boundary_derivative_theta(q.x0, theta_for(kind, q.T), q.mass), kind};
}

PropagatorValue step_edge_propagator(double T, double V, double mass, TimeKind kind) {
    if (V < 0.0) throw std::invalid_argument("step_edge_propagator: V must be nonnegative");
    return {step_edge_theta(theta_for(kind, T), V, mass), kind};
}

PropagatorValue delta_edge_propagator(double T, double a, double mass, TimeKind kind) {
    return {delta_edge_theta(theta_for(kind, T), a, mass), kind};
}

PropagatorValue delta_full_propagator(const Query& q, double a, TimeKind kind) {
    q.validate();
    return {delta_full_theta(q.x0, q.x1, theta_for(kind, q.T), a, q.mass), kind};
}

ExtrapolationResult continuum_extrapolate(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 2) {
        throw std::domain_error("continuum_extrapolate: need at least 2 samples");
    }
    std::vector<double> h(samples.size());
    std::vector<double> t(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0)) {
            throw std::domain_error("continuum_extrapolate: n must be positive");
        }
        if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
            throw std::domain_error("continuum_extrapolate: n must be strictly increasing");
        }
        h[i] = 1.0 / samples[i].first;
        t[i] = samples[i].second;
    }
    // Neville tableau evaluated at h = 0; columns eliminate successive
    // powers of h.
    double last_correction = 0.0;
    for (std::size_t j = 1; j < samples.size(); ++j) {
        for (std::size_t i = samples.size() - 1; i >= j; --i) {
            const double ratio = h[i - j] / h[i];
            const double next = t[i] + (t[i] - t[i - 1]) / (ratio - 1.0);
            if (i == samples.size() - 1) last_correction = next - t[i];
            t[i] = next;
        }
    }
    return {t.back(), std::abs(last_correction)};
}

}  // namespace pdxprop::continuum
