#include "pdxprop/combinat.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace pdxprop::combinat {

namespace {

std::mutex g_factorial_mutex;
std::vector<BigCount> g_factorials{BigCount(1)};  // g_factorials[k] = k!

}  // namespace

BigCount factorial(unsigned n) {
    std::lock_guard lock(g_factorial_mutex);
    while (g_factorials.size() <= n) {
        g_factorials.push_back(g_factorials.back() * BigCount(g_factorials.size()));
    }
    return g_factorials[n];
}

BigCount central_binomial(unsigned n) {
    return factorial(2 * n) / (factorial(n) * factorial(n));
}

BigCount catalan(unsigned n) { return central_binomial(n) / BigCount(n + 1); }

BigCount catalan_triangle(unsigned n, unsigned k) {
    if (k > n) throw std::domain_error("catalan_triangle: requires k <= n");
    return factorial(n + k) * BigCount(n - k + 1) / (factorial(k) * factorial(n + 1));
}

BigCount crossing_partition_count(unsigned n, unsigned l) {
    if (l > n) throw std::domain_error("crossing_partition_count: requires l <= n");
    return factorial(2 * n) * BigCount(2 * l + 1) / (factorial(n - l) * factorial(n + l + 1));
}

LogCount catalan_asymptotic(unsigned n) {
    if (n == 0) throw std::domain_error("catalan_asymptotic: requires n >= 1");
    const double x = static_cast<double>(n);
    return LogCount::from_log(x * std::log(4.0) - 0.5 * std::log(M_PI) - 1.5 * std::log(x));
}

LogCount crossing_count_asymptotic(unsigned n, unsigned l) {
    if (n == 0) throw std::domain_error("crossing_count_asymptotic: requires n >= 1");
    if (l > n) throw std::domain_error("crossing_count_asymptotic: requires l <= n");
    if (l == 0) return LogCount::zero_count();  // the (2l/n) factor vanishes
    const double x = static_cast<double>(n);
    const double y = static_cast<double>(l);
    return LogCount::from_log(log_central_binomial(n) + std::log(2.0 * y / x) - y * y / x);
}

double log_factorial(unsigned long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_central_binomial(unsigned long n) {
    return log_factorial(2 * n) - 2.0 * log_factorial(n);
}

double log_crossing_partition(unsigned long n, unsigned long l) {
    if (l > n) throw std::domain_error("log_crossing_partition: requires l <= n");
    return log_factorial(2 * n) + std::log(2.0 * static_cast<double>(l) + 1.0) -
           log_factorial(n - l) - log_factorial(n + l + 1);
}

double log_central_binomial_ratio(unsigned long n) {
    if (n == 0) return 0.0;
    if (n <= 300) {
        return to_log(central_binomial(static_cast<unsigned>(n))).log_value -
               2.0 * static_cast<double>(n) * M_LN2;
    }
    // Stirling: log(binom(2n,n) 4^{-n}) = -log(pi n)/2 - 1/(8n) + 1/(192 n^3) + O(n^-5).
    const double x = static_cast<double>(n);
    return -0.5 * std::log(M_PI * x) - 1.0 / (8.0 * x) + 1.0 / (192.0 * x * x * x);
}

}  // namespace pdxprop::combinat
