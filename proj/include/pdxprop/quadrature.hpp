#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace pdxprop::quad {

// Fixed-order Gauss-Kronrod 7-15 panels, refined worst-panel-first until
// the summed error estimate meets max(abs_tol, rel_tol*|result|) or the
// subdivision budget is exhausted. endpoint_substitution maps both halves
// of the interval through t = a + s^2 / t = b - s^2, which flattens
// inverse-square-root endpoint singularities.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 400;
    bool endpoint_substitution = true;
};

template <typename T>
struct QuadResult {
    T value{};
    double error_estimate = 0.0;
    int panels = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved_estimate, int panels)
        : std::runtime_error(what), achieved_estimate(achieved_estimate), panels(panels) {}
    double achieved_estimate;
    int panels;
};

QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             const QuadratureSpec& spec);
QuadResult<std::complex<double>> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec);

// As integrate(), but throws QuadratureError when the tolerance was not met.
QuadResult<double> integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureSpec& spec);
QuadResult<std::complex<double>> integrate_complex_or_throw(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec);

}  // namespace pdxprop::quad
