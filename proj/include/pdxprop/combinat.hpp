#pragma once

#include "pdxprop/big_count.hpp"

namespace pdxprop::combinat {

// n!, exact, served from a synchronized growable cache.
BigCount factorial(unsigned n);

// (2n choose n), exact.
BigCount central_binomial(unsigned n);

// C_n = (2n choose n)/(n+1), exact. Counts 2n-step loops that never
// enter x < 0.
BigCount catalan(unsigned n);

// Catalan's triangle c(n,k) = (n+k)! (n-k+1) / (k! (n+1)!), exact.
// Requires k <= n.
BigCount catalan_triangle(unsigned n, unsigned k);

// J(n,l) = c(n+l, n-l) = (2n)! (2l+1) / ((n-l)! (n+l+1)!), exact: the
// number of 2n-step loops crossing the cell below the origin 2l times.
// Requires l <= n.
BigCount crossing_partition_count(unsigned n, unsigned l);

// log of the asymptotic form C_n ~ 4^n / (sqrt(pi) n^{3/2}). Requires n >= 1.
LogCount catalan_asymptotic(unsigned n);

// log of the asymptotic form J(n,l) ~ (2n choose n) (2l/n) e^{-l^2/n}.
// Requires 1 <= n and l <= n. The form vanishes at l = 0, so that case
// returns the zero count; exact J(n,0) = C_n is available separately.
LogCount crossing_count_asymptotic(unsigned n, unsigned l);

// lgamma-based log counts for regimes beyond exact evaluation.
double log_factorial(unsigned long n);
double log_central_binomial(unsigned long n);
double log_crossing_partition(unsigned long n, unsigned long l);

// log( (2n choose n) * 4^{-n} ), the free-loop probability. Exact integers
// for small n, Stirling series beyond; absolute error < 1e-14 in the log.
double log_central_binomial_ratio(unsigned long n);

}  // namespace pdxprop::combinat
