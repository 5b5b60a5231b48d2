#pragma once

#include "pdxprop/continuum.hpp"
#include "pdxprop/quadrature.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pdxprop::pdx {

using continuum::PropagatorValue;
using continuum::Query;
using continuum::TimeKind;
using quad::QuadratureSpec;

// Full model propagator between a point x and the crossing surface over the
// given duration. Both orientations coincide for the symmetric models fed
// through here (free and delta).
using EdgeToPoint = std::function<double(double x, double duration)>;

// Surface-to-surface model propagator g(0, t2 | 0, t1) as a function of
// t2 - t1.
using EdgeOnSurface = std::function<double(double duration)>;

// Multiplicative weight of a restricted leg of the given duration; identity
// when empty (free leg). A constant potential V on the leg's side
// contributes e^{-V * duration}.
using LegWeight = std::function<double(double duration)>;

// Euclidean first-crossing density of the surface x = 0 from x_from:
// |x_from|/t * g_f(0,t|x_from,0), the inverse-Gaussian first-passage
// density. Equals (1/2m)|dg_r/dx| at the boundary.
double first_crossing_density(double t, double x_from, double mass);

// Single-integral decompositions over the first (resp. last) crossing
// time. Preconditions: opposite-side endpoints (x0*x1 < 0) and Euclidean
// kind; real-time values are obtained from the closed forms in
// `continuum`, not from oscillatory quadrature.
PropagatorValue pdx_first_crossing(const Query& q, const EdgeToPoint& edge,
                                   const QuadratureSpec& spec, TimeKind kind,
                                   const LegWeight& start_leg_weight = {});
PropagatorValue pdx_last_crossing(const Query& q, const EdgeToPoint& edge,
                                  const QuadratureSpec& spec, TimeKind kind,
                                  const LegWeight& end_leg_weight = {});

// Double-integral decomposition over first and last crossing times with a
// surface-to-surface edge propagator between them.
PropagatorValue pdx_first_last(const Query& q, const EdgeOnSurface& edge,
                               const QuadratureSpec& spec, TimeKind kind,
                               const LegWeight& start_leg_weight = {},
                               const LegWeight& end_leg_weight = {});

// Same-side decomposition: restricted propagator plus the crossing
// correction integral. Requires sign(x0) = sign(x1), both nonzero.
PropagatorValue pdx_same_side(const Query& q, const EdgeToPoint& edge,
                              const QuadratureSpec& spec, TimeKind kind);

// ---------------------------------------------------------------------------
// Identity verification.
// ---------------------------------------------------------------------------
struct IdentityEntry {
    Query query;
    double direct = 0.0;
    double first_crossing = 0.0;
    double last_crossing = 0.0;
    double rel_first = 0.0;
    double rel_last = 0.0;
    int panels = 0;
};

struct IdentityReport {
    std::vector<IdentityEntry> entries;
    double max_relative_deviation = 0.0;

    std::string to_json() const;
};

// Checks the free propagator against its first- and last-crossing
// decompositions on opposite-side queries.
IdentityReport verify_free_identity(std::span<const Query> queries, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Full-propagator assembly from edge propagators and restricted legs.
// ---------------------------------------------------------------------------
// Delta potential: all four sign cases of (x0, x1); coincident zeros reduce
// to the edge propagator.
PropagatorValue assemble_delta_full(const Query& q, double a, const QuadratureSpec& spec,
                                    TimeKind kind);
// Step potential: opposite-side endpoints, with the negative-side leg
// weighted by e^{-V * duration}.
PropagatorValue assemble_step_full(const Query& q, double V, const QuadratureSpec& spec,
                                   TimeKind kind);

}  // namespace pdxprop::pdx
