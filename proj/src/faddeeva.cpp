#include "pdxprop/faddeeva.hpp"

#include <array>
#include <cmath>

namespace pdxprop {

namespace {

using cplx = std::complex<double>;

constexpr int kWeidemanN = 48;
constexpr double kInvSqrtPi = 0.564189583547756286948;  // 1/sqrt(pi)

// Weideman (1994) expansion coefficients for w(z), computed once by a
// direct cosine transform of f(theta) = e^{-t^2}(L^2 + t^2), t = L tan(theta/2).
struct WeidemanTable {
    double L;
    std::array<double, kWeidemanN> a;

    WeidemanTable() {
        const int N = kWeidemanN;
        const int M = 2 * N;
        L = std::sqrt(N / std::sqrt(2.0));
        for (int j = 1; j <= N; ++j) {
            double sum = 0.0;
            for (int k = -M + 1; k <= M - 1; ++k) {
                const double theta = k * M_PI / M;
                const double t = L * std::tan(0.5 * theta);
                const double f = std::exp(-t * t) * (L * L + t * t);
                sum += f * std::cos(j * theta);
            }
            a[static_cast<std::size_t>(j - 1)] = sum / (2.0 * M);
        }
    }
};

const WeidemanTable& weideman() {
    static const WeidemanTable table;
    return table;
}

// Rational expansion, valid for Im z >= 0.
cplx faddeeva_weideman(cplx z) {
    const auto& t = weideman();
    const cplx iz(-z.imag(), z.real());
    const cplx denom = t.L - iz;
    const cplx Z = (t.L + iz) / denom;
    cplx p = 0.0;
    for (int j = kWeidemanN - 1; j >= 0; --j) {
        p = p * Z + t.a[static_cast<std::size_t>(j)];
    }
    return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

// Laplace continued fraction, accurate for large |z| with Im z >= 0:
//   w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))).
cplx faddeeva_contfrac(cplx z) {
    constexpr int kDepth = 48;
    cplx f = z;
    for (int k = kDepth; k >= 1; --k) {
        f = z - (0.5 * k) / f;
    }
    return cplx(0.0, kInvSqrtPi) / f;
}

cplx faddeeva_upper(cplx z) {
    return std::norm(z) >= 64.0 ? faddeeva_contfrac(z) : faddeeva_weideman(z);
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) { return faddeeva_upper(z); }

std::complex<double> erfcx(std::complex<double> z) {
    if (z.real() >= 0.0) {
        // erfcx(z) = w(iz); Re z >= 0 puts iz in the upper half-plane.
        return faddeeva_upper(cplx(-z.imag(), z.real()));
    }
    return 2.0 * std::exp(z * z) - erfcx(-z);
}

double erfcx(double x) {
    if (x >= 0.0) return faddeeva_upper(cplx(0.0, x)).real();
    return 2.0 * std::exp(x * x) - erfcx(-x);
}

}  // namespace pdxprop
