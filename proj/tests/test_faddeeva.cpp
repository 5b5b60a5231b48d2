#include "pdxprop/faddeeva.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>

using pdxprop::erfcx;
using cplx = std::complex<double>;

namespace {

void check_value(cplx z, cplx reference, double tol = 1e-13) {
    const cplx got = erfcx(z);
    CHECK(std::abs(got - reference) <= tol * std::abs(reference));
}

}  // namespace

TEST_CASE("erfcx reference values on the real axis") {
    // 30-digit references
    check_value({0.1, 0.0}, {0.89645697996912664, 0.0});
    check_value({0.5, 0.0}, {0.61569034419292587, 0.0});
    check_value({1.0, 0.0}, {0.427583576155807, 0.0});
    check_value({2.5, 0.0}, {0.21080636406114358, 0.0});
    check_value({5.0, 0.0}, {0.11070463773306863, 0.0});
    check_value({12.0, 0.0}, {0.046854221014893763, 0.0});
    check_value({30.0, 0.0}, {0.018795888861416751, 0.0});
    check_value({-1.0, 0.0}, {5.0089800807622835, 0.0});
    check_value({-3.0, 0.0}, {16205.988853999587, 0.0});
    CHECK(erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(erfcx(1.0) == doctest::Approx(0.427583576155807).epsilon(1e-13));
}

TEST_CASE("erfcx reference values off the axis") {
    check_value({0.3, 2.1}, {0.065521387507429755, -0.29457405426561676});
    check_value({2.0, -3.0}, {0.092710766426443334, 0.12831696222826158});
    check_value({4.5, 4.5}, {0.063431388245511477, -0.061887048497703051});
    check_value({0.70710678118654752, 0.70710678118654752},
                {0.41558809590784866, -0.23031978755491064});
    check_value({8.0, -8.0}, {0.035397945774381065, 0.035122525571907418});
    check_value({0.01, 0.01}, {0.98871769295495463, -0.011085296057477264});
    check_value({-1.0, 2.0}, {-0.20532558064658751, -0.14685548503016739});
}

TEST_CASE("erfcx conjugate symmetry") {
    for (const cplx z : {cplx{0.4, 1.3}, cplx{3.0, 0.2}, cplx{7.0, 5.0}, cplx{-0.6, 1.1}}) {
        const cplx a = erfcx(std::conj(z));
        const cplx b = std::conj(erfcx(z));
        CHECK(std::abs(a - b) <= 1e-14 * std::abs(b));
    }
}

TEST_CASE("erfcx large-argument asymptote") {
    // erfcx(x) = (1 - 1/(2x^2) + O(x^-4)) / (x sqrt(pi))
    for (double x : {50.0, 500.0, 5e4}) {
        const double approx = 1.0 / (x * std::sqrt(M_PI));
        CHECK(erfcx(x) == doctest::Approx(approx).epsilon(1.0 / (x * x)));
    }
}
