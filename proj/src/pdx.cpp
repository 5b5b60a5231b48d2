#include "pdxprop/pdx.hpp"

#include "json.hpp"

#include <cmath>
#include <stdexcept>

namespace pdxprop::pdx {

namespace {

using continuum::cplx;
using continuum::free_theta;

void require_euclidean(TimeKind kind, const char* op) {
    if (kind != TimeKind::Euclidean) {
        throw std::invalid_argument(std::string(op) +
                                    ": real-time decompositions are not evaluated by "
                                    "quadrature; use the closed forms in continuum");
    }
}

void require_opposite_sides(const Query& q, const char* op) {
    if (!(q.x0 * q.x1 < 0.0)) {
        throw std::domain_error(std::string(op) +
                                ": endpoints must lie on opposite sides of x = 0 "
                                "(same-side queries go through pdx_same_side)");
    }
}

double leg_weight(const LegWeight& w, double duration) { return w ? w(duration) : 1.0; }

double free_euclidean(double dx, double t, double mass) {
    return free_theta(dx, cplx(t, 0.0), mass).real();
}

// Integrand of the crossing correction shared by the single-integral
// decompositions: edge propagation from the surface times the
// first-passage density of the restricted leg.
double crossing_integral(const Query& q, const EdgeToPoint& edge, const QuadratureSpec& spec,
                         double to_point, double from_point, const LegWeight& leg, int* panels) {
    const auto integrand = [&](double t1) {
        if (t1 >= q.T) return 0.0;  // zero-duration edge rounded onto the endpoint
        return edge(to_point, q.T - t1) * first_crossing_density(t1, from_point, q.mass) *
               leg_weight(leg, t1);
    };
    const auto result = quad::integrate_or_throw(integrand, 0.0, q.T, spec);
    if (panels) *panels += result.panels;
    return result.value;
}

}  // namespace

double first_crossing_density(double t, double x_from, double mass) {
    if (!(t > 0.0)) return 0.0;
    return std::abs(x_from) / t * free_euclidean(x_from, t, mass);
}

PropagatorValue pdx_first_crossing(const Query& q, const EdgeToPoint& edge,
                                   const QuadratureSpec& spec, TimeKind kind,
                                   const LegWeight& start_leg_weight) {
    q.validate();
    require_euclidean(kind, "pdx_first_crossing");
    require_opposite_sides(q, "pdx_first_crossing");
    return {crossing_integral(q, edge, spec, q.x1, q.x0, start_leg_weight, nullptr), kind};
}

PropagatorValue pdx_last_crossing(const Query& q, const EdgeToPoint& edge,
                                  const QuadratureSpec& spec, TimeKind kind,
                                  const LegWeight& end_leg_weight) {
    q.validate();
    require_euclidean(kind, "pdx_last_crossing");
    require_opposite_sides(q, "pdx_last_crossing");
    // Mirror image: integrate over the last crossing time t2; the restricted
    // leg now ends the path, with duration T - t2.
    const auto integrand = [&](double t2) {
        if (t2 <= 0.0) return 0.0;
        return first_crossing_density(q.T - t2, q.x1, q.mass) *
               leg_weight(end_leg_weight, q.T - t2) * edge(q.x0, t2);
    };
    return {quad::integrate_or_throw(integrand, 0.0, q.T, spec).value, kind};
}

namespace {

// Shared first-and-last-crossing double integral
//   int_0^T dt2 rho(T-t2; x1) w1(T-t2) int_0^{t2} dt1 edge(t2-t1) rho(t1; x0) w0(t1)
// with the inner tolerance budget one decade tighter.
double first_last_integral(const Query& q, const EdgeOnSurface& edge, const QuadratureSpec& spec,
                           const LegWeight& w0, const LegWeight& w1) {
    QuadratureSpec inner_spec = spec;
    inner_spec.abs_tol = spec.abs_tol / 10.0;
    inner_spec.rel_tol = spec.rel_tol / 10.0;
    const auto inner = [&](double t2) {
        if (t2 <= 0.0) return 0.0;
        const auto integrand = [&](double t1) {
            if (t1 >= t2) return 0.0;  // integrable edge singularity at t1 = t2
            return edge(t2 - t1) * first_crossing_density(t1, q.x0, q.mass) *
                   leg_weight(w0, t1);
        };
        return quad::integrate_or_throw(integrand, 0.0, t2, inner_spec).value;
    };
    const auto outer = [&](double t2) {
        return first_crossing_density(q.T - t2, q.x1, q.mass) * leg_weight(w1, q.T - t2) *
               inner(t2);
    };
    return quad::integrate_or_throw(outer, 0.0, q.T, spec).value;
}

}  // namespace

PropagatorValue pdx_first_last(const Query& q, const EdgeOnSurface& edge,
                               const QuadratureSpec& spec, TimeKind kind,
                               const LegWeight& start_leg_weight,
                               const LegWeight& end_leg_weight) {
    q.validate();
    require_euclidean(kind, "pdx_first_last");
    require_opposite_sides(q, "pdx_first_last");
    return {first_last_integral(q, edge, spec, start_leg_weight, end_leg_weight), kind};
}

PropagatorValue pdx_same_side(const Query& q, const EdgeToPoint& edge,
                              const QuadratureSpec& spec, TimeKind kind) {
    q.validate();
    require_euclidean(kind, "pdx_same_side");
    if (!(q.x0 * q.x1 > 0.0)) {
        throw std::domain_error(
            "pdx_same_side: endpoints must lie strictly on the same side of x = 0");
    }
    const auto side = q.x0 > 0.0 ? continuum::Side::Positive : continuum::Side::Negative;
    const double restricted =
        continuum::restricted_theta(q.x0, q.x1, cplx(q.T, 0.0), q.mass, side).real();
    return {restricted + crossing_integral(q, edge, spec, q.x1, q.x0, {}, nullptr), kind};
}

IdentityReport verify_free_identity(std::span<const Query> queries, const QuadratureSpec& spec) {
    IdentityReport report;
    for (const Query& q : queries) {
        q.validate();
        if (!(q.x0 * q.x1 < 0.0)) {
            throw std::domain_error(
                "verify_free_identity: same-side query; the decomposition with a "
                "non-crossing term is pdx_same_side");
        }
        IdentityEntry entry;
        entry.query = q;
        entry.direct = free_euclidean(q.x1 - q.x0, q.T, q.mass);
        const EdgeToPoint free_edge = [&](double x, double duration) {
            return free_euclidean(x, duration, q.mass);
        };
        const auto integrand_first = [&](double t1) {
            if (t1 >= q.T) return 0.0;
            return free_edge(q.x1, q.T - t1) * first_crossing_density(t1, q.x0, q.mass);
        };
        const auto first = quad::integrate_or_throw(integrand_first, 0.0, q.T, spec);
        const auto integrand_last = [&](double t2) {
            if (t2 <= 0.0) return 0.0;
            return first_crossing_density(q.T - t2, q.x1, q.mass) * free_edge(q.x0, t2);
        };
        const auto last = quad::integrate_or_throw(integrand_last, 0.0, q.T, spec);
        entry.first_crossing = first.value;
        entry.last_crossing = last.value;
        entry.panels = first.panels + last.panels;
        entry.rel_first = std::abs(entry.first_crossing - entry.direct) / std::abs(entry.direct);
        entry.rel_last = std::abs(entry.last_crossing - entry.direct) / std::abs(entry.direct);
        report.max_relative_deviation =
            std::max({report.max_relative_deviation, entry.rel_first, entry.rel_last});
        report.entries.push_back(entry);
    }
    return report;
}

std::string IdentityReport::to_json() const {
    nlohmann::json j;
    j["max_relative_deviation"] = max_relative_deviation;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries) {
        j["entries"].push_back({
            {"query",
             {{"x0", e.query.x0}, {"x1", e.query.x1}, {"T", e.query.T}, {"mass", e.query.mass}}},
            {"direct", e.direct},
            {"first_crossing", e.first_crossing},
            {"last_crossing", e.last_crossing},
            {"rel_first", e.rel_first},
            {"rel_last", e.rel_last},
            {"panels", e.panels},
        });
    }
    return j.dump(2);
}

PropagatorValue assemble_delta_full(const Query& q, double a, const QuadratureSpec& spec,
                                    TimeKind kind) {
    q.validate();
    require_euclidean(kind, "assemble_delta_full");
    const EdgeOnSurface edge = [&](double duration) {
        return continuum::delta_edge_theta(cplx(duration, 0.0), a, q.mass).real();
    };
    if (q.x0 == 0.0 && q.x1 == 0.0) return {edge(q.T), kind};
    if (q.x0 == 0.0 || q.x1 == 0.0) {
        // One endpoint on the surface: a single restricted leg attaches to
        // the edge propagator.
        const double x = q.x0 == 0.0 ? q.x1 : q.x0;
        const auto integrand = [&](double t) {
            if (t >= q.T) return 0.0;
            return edge(q.T - t) * first_crossing_density(t, x, q.mass);
        };
        return {quad::integrate_or_throw(integrand, 0.0, q.T, spec).value, kind};
    }
    const double crossing_part = first_last_integral(q, edge, spec, {}, {});
    if (q.x0 * q.x1 < 0.0) return {crossing_part, kind};
    const auto side = q.x0 > 0.0 ? continuum::Side::Positive : continuum::Side::Negative;
    const double restricted =
        continuum::restricted_theta(q.x0, q.x1, cplx(q.T, 0.0), q.mass, side).real();
    return {restricted + crossing_part, kind};
}

PropagatorValue assemble_step_full(const Query& q, double V, const QuadratureSpec& spec,
                                   TimeKind kind) {
    q.validate();
    require_euclidean(kind, "assemble_step_full");
    require_opposite_sides(q, "assemble_step_full");
    if (V < 0.0) throw std::invalid_argument("assemble_step_full: V must be nonnegative");
    const EdgeOnSurface edge = [&](double duration) {
        return continuum::step_edge_theta(cplx(duration, 0.0), V, q.mass).real();
    };
    const LegWeight below = [V](double duration) { return std::exp(-V * duration); };
    const LegWeight free_leg = {};
    const bool start_below = q.x0 < 0.0;
    return {first_last_integral(q, edge, spec, start_below ? below : free_leg,
                                start_below ? free_leg : below),
            kind};
}

}  // namespace pdxprop::pdx
