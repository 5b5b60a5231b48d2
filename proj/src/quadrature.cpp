#include "pdxprop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace pdxprop::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,  //
    0.949107912342758524526189684047851,  //
    0.864864423359769072789712788640926,  //
    0.741531185599394439863864773280788,  //
    0.586087235467691130294144838258730,  //
    0.405845151377397166906606412076961,  //
    0.207784955007898467600689403773245,  //
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,  //
    0.063092092629978553290700663189204,  //
    0.104790010322250183839876322541518,  //
    0.140653259715525918745189590510238,  //
    0.169004726639267902826583426598550,  //
    0.190350578064785409913256402421014,  //
    0.204432940075298892414161999234649,  //
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,  //
    0.279705391489276667901467771423780,  //
    0.381830050505118944950369775488975,  //
    0.417959183673469387755102040816327,
};

template <typename T>
struct Panel {
    double a, b;
    T value;
    double error;
    long seq;  // insertion order; deterministic tie-breaking
};

template <typename T>
struct WorstFirst {
    bool operator()(const Panel<T>& lhs, const Panel<T>& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.seq > rhs.seq;
    }
};

template <typename T>
Panel<T> evaluate_panel(const std::function<T(double)>& f, double a, double b, long seq) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T kronrod{};
    T gauss{};
    for (int j = 0; j < 8; ++j) {
        if (kXgk[j] == 0.0) {
            const T fc = f(mid);
            kronrod += kWgk[j] * fc;
            gauss += kWg[3] * fc;
            continue;
        }
        const T fl = f(mid - half * kXgk[j]);
        const T fr = f(mid + half * kXgk[j]);
        kronrod += kWgk[j] * (fl + fr);
        if (j % 2 == 1) gauss += kWg[j / 2] * (fl + fr);
    }
    kronrod *= half;
    gauss *= half;
    return Panel<T>{a, b, kronrod, std::abs(kronrod - gauss), seq};
}

template <typename T>
QuadResult<T> adapt(const std::function<T(double)>& f, double a, double b,
                    const QuadratureSpec& spec) {
    QuadResult<T> result;
    if (a == b) {
        result.converged = true;
        return result;
    }
    long seq = 0;
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, WorstFirst<T>> panels;
    panels.push(evaluate_panel(f, a, b, seq++));
    T total = panels.top().value;
    double total_err = panels.top().error;
    int splits = 0;
    const auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && splits < spec.max_subdivisions) {
        Panel<T> worst = panels.top();
        panels.pop();
        total -= worst.value;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& child :
             {evaluate_panel(f, worst.a, mid, seq++), evaluate_panel(f, mid, worst.b, seq++)}) {
            total += child.value;
            total_err += child.error;
            panels.push(child);
        }
        ++splits;
    }
    result.value = total;
    result.error_estimate = std::max(total_err, 0.0);
    result.panels = static_cast<int>(panels.size());
    result.converged = result.error_estimate <= tolerance();
    return result;
}

// t = a + s^2 on the left half, t = b - s^2 on the right half.
template <typename T>
QuadResult<T> adapt_substituted(const std::function<T(double)>& f, double a, double b,
                                const QuadratureSpec& spec) {
    if (a == b) return adapt(f, a, b, spec);
    const double smax = std::sqrt(0.5 * std::abs(b - a));
    const double sign = (b > a) ? 1.0 : -1.0;
    QuadratureSpec half_spec = spec;
    half_spec.abs_tol = 0.5 * spec.abs_tol;
    half_spec.max_subdivisions = spec.max_subdivisions / 2;
    const std::function<T(double)> left = [&](double s) {
        return f(a + sign * s * s) * (2.0 * s * sign);
    };
    const std::function<T(double)> right = [&](double s) {
        return f(b - sign * s * s) * (2.0 * s * sign);
    };
    const QuadResult<T> lhs = adapt(left, 0.0, smax, half_spec);
    const QuadResult<T> rhs = adapt(right, 0.0, smax, half_spec);
    QuadResult<T> result;
    result.value = lhs.value + rhs.value;
    result.error_estimate = lhs.error_estimate + rhs.error_estimate;
    result.panels = lhs.panels + rhs.panels;
    result.converged = lhs.converged && rhs.converged;
    return result;
}

template <typename T>
QuadResult<T> dispatch(const std::function<T(double)>& f, double a, double b,
                       const QuadratureSpec& spec) {
    return spec.endpoint_substitution ? adapt_substituted(f, a, b, spec) : adapt(f, a, b, spec);
}

template <typename T>
QuadResult<T> dispatch_or_throw(const std::function<T(double)>& f, double a, double b,
                                const QuadratureSpec& spec) {
    QuadResult<T> r = dispatch(f, a, b, spec);
    if (!r.converged) {
        throw QuadratureError("quadrature did not converge: achieved estimate " +
                                  std::to_string(r.error_estimate) + " with " +
                                  std::to_string(r.panels) + " panels",
                              r.error_estimate, r.panels);
    }
    return r;
}

}  // namespace

QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadratureSpec& spec) {
    return dispatch(f, a, b, spec);
}

QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec) {
    return dispatch(f, a, b, spec);
}

QuadResult<double> integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureSpec& spec) {
    return dispatch_or_throw(f, a, b, spec);
}

QuadResult<std::complex<double>> integrate_complex_or_throw(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec) {
    return dispatch_or_throw(f, a, b, spec);
}

}  // namespace pdxprop::quad
