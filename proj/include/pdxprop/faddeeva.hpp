#pragma once

#include <complex>

namespace pdxprop {

// Scaled complementary error function erfcx(z) = e^{z^2} erfc(z).
//
// Right half-plane values come from the Faddeeva function w(iz), evaluated
// by a Weideman rational expansion for moderate |z| and the Laplace
// continued fraction for large |z|; the left half-plane uses the
// reflection erfcx(-z) = 2 e^{z^2} - erfcx(z). Accuracy ~1e-13 relative
// over the arguments used here (|z| up to ~1e3, any phase).
std::complex<double> erfcx(std::complex<double> z);
double erfcx(double x);

// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im z >= 0.
std::complex<double> faddeeva_w(std::complex<double> z);

}  // namespace pdxprop
