#pragma once

#include "pdxprop/quadrature.hpp"

#include <complex>
#include <span>
#include <utility>

namespace pdxprop::continuum {

enum class TimeKind { Euclidean, Real };
enum class Side { Positive, Negative };

// A complex amplitude tagged with the time convention it was computed in.
// Euclidean amplitudes for the models here are real and nonnegative.
struct PropagatorValue {
    std::complex<double> amplitude;
    TimeKind kind;
};

struct Query {
    double x0 = 0.0;
    double x1 = 0.0;
    double T = 1.0;     // > 0
    double mass = 1.0;  // > 0

    void validate() const;
};

// ---------------------------------------------------------------------------
// Complex-time core. Every propagator is a function of a complex time theta
// with Re(theta) >= 0; Euclidean time is theta = T, real time theta = iT.
// Branch convention: powers of theta are composed multiplicatively from the
// principal sqrt(1/theta) and sqrt(theta), which stays on the continuation
// from positive real theta all the way to the imaginary axis. In particular
// (1/theta)^{3/2} must be built as sqrt(1/theta)/theta, never as the
// principal sqrt of 1/theta^3.
// ---------------------------------------------------------------------------
using cplx = std::complex<double>;

cplx theta_for(TimeKind kind, double T);

// sqrt(m/(2 pi theta)) e^{-m dx^2 / (2 theta)}
cplx free_theta(double dx, cplx theta, double mass);
// theta(+/-x1) theta(+/-x0) [ g_f(x1|x0) - g_f(-x1|x0) ]
cplx restricted_theta(double x0, double x1, cplx theta, double mass, Side side);
// d/dx g_r(x,theta|x_other,0) at x = 0: 2 m x_other / theta * g_f(0|x_other)
cplx boundary_derivative_theta(double x_other, cplx theta, double mass);
// sqrt(m/(2 pi)) (1 - e^{-V theta}) / (V theta^{3/2}), V = 0 by the limit
cplx step_edge_theta(cplx theta, double V, double mass);
// sqrt(m/(2 pi theta)) - (a m / 2) erfcx(a sqrt(m theta / 2))
cplx delta_edge_theta(cplx theta, double a, double mass);
// g_f(x1|x0) - (a/2) e^{-m s^2/(2 theta)} erfcx(s sqrt(m/(2 theta)) + a sqrt(m theta/2)),
// s = |x0| + |x1|
cplx delta_full_theta(double x0, double x1, cplx theta, double a, double mass);

// Independent route for the delta closed forms: adaptive quadrature of the
// u-integral along the contour u = e^{i arg(theta)/2} s, on which the
// Gaussian factor decays for any |arg theta| <= pi/2. Used to cross-check
// the erfcx evaluation, including on the real-time axis.
cplx delta_edge_theta_by_quadrature(cplx theta, double a, double mass,
                                    const quad::QuadratureSpec& spec);
cplx delta_full_theta_by_quadrature(double x0, double x1, cplx theta, double a, double mass,
                                    const quad::QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Named propagators.
// ---------------------------------------------------------------------------
PropagatorValue free_propagator(const Query& q, TimeKind kind);
PropagatorValue restricted_propagator(const Query& q, TimeKind kind, Side side);
// dg_r/dx at x = 0 for a query whose x1 sits exactly at the boundary;
// throws std::domain_error when x0 is also at 0.
PropagatorValue boundary_derivative(const Query& q, TimeKind kind, Side side);
PropagatorValue step_edge_propagator(double T, double V, double mass, TimeKind kind);
PropagatorValue delta_edge_propagator(double T, double a, double mass, TimeKind kind);
PropagatorValue delta_full_propagator(const Query& q, double a, TimeKind kind);

// ---------------------------------------------------------------------------
// Continuum-limit extrapolation.
// ---------------------------------------------------------------------------
struct ExtrapolationResult {
    double estimate = 0.0;
    double error_estimate = 0.0;
};

// Richardson extrapolation in 1/n of samples (n_i, y_i) with n strictly
// increasing; the error estimate is the magnitude of the highest-order
// correction. Requires at least 2 samples.
ExtrapolationResult continuum_extrapolate(std::span<const std::pair<double, double>> samples);

}  // namespace pdxprop::continuum
