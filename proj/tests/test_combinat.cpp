#include "pdxprop/combinat.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <future>
#include <vector>

using namespace pdxprop;
using namespace pdxprop::combinat;

namespace {

// Test-local loop oracle, independent of the lattice module: walks every
// bitmask of 2n steps and keeps the balanced ones.
struct BruteLoops {
    unsigned n;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        const unsigned len = 2 * n;
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
            if (std::popcount(mask) != static_cast<int>(n)) continue;
            std::vector<int> steps(len);
            for (unsigned i = 0; i < len; ++i) steps[i] = (mask >> i) & 1 ? 1 : -1;
            fn(steps);
        }
    }

    unsigned long count() const {
        unsigned long c = 0;
        for_each([&](const std::vector<int>&) { ++c; });
        return c;
    }

    unsigned long count_noncrossing() const {
        unsigned long c = 0;
        for_each([&](const std::vector<int>& steps) {
            int x = 0;
            bool below = false;
            for (int s : steps) {
                x += s;
                below = below || x < 0;
            }
            if (!below) ++c;
        });
        return c;
    }

    // crossings of the cell between 0 and -1, halved
    std::vector<unsigned long> crossing_histogram() const {
        std::vector<unsigned long> hist(n + 1, 0);
        for_each([&](const std::vector<int>& steps) {
            int x = 0;
            unsigned c = 0;
            for (int s : steps) {
                const int x2 = x + s;
                if ((x == 0 && x2 == -1) || (x == -1 && x2 == 0)) ++c;
                x = x2;
            }
            ++hist[c / 2];
        });
        return hist;
    }
};

}  // namespace

TEST_CASE("central binomial against enumeration") {
    CHECK(central_binomial(0) == 1);
    CHECK(central_binomial(1) == BruteLoops{1}.count());  // 2
    CHECK(central_binomial(2) == BruteLoops{2}.count());  // 6
    CHECK(central_binomial(1) == 2);
    CHECK(central_binomial(2) == 6);
}

TEST_CASE("catalan values") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(4) == BruteLoops{4}.count_noncrossing());  // 14
    CHECK(catalan(4) == 14);
    CHECK(catalan(10) == 16796);
}

TEST_CASE("catalan triangle") {
    for (unsigned n = 0; n <= 8; ++n) CHECK(catalan_triangle(n, 0) == 1);
    CHECK(catalan_triangle(3, 2) == 5);
    CHECK(catalan_triangle(2, 2) == catalan(2));
    CHECK_THROWS_AS(catalan_triangle(3, 4), std::domain_error);
}

TEST_CASE("crossing partition counts against enumeration") {
    for (unsigned n = 1; n <= 5; ++n) {
        const auto hist = BruteLoops{n}.crossing_histogram();
        for (unsigned l = 0; l <= n; ++l) {
            CHECK(crossing_partition_count(n, l) == hist[l]);
        }
    }
    CHECK(crossing_partition_count(1, 0) == 1);
    CHECK(crossing_partition_count(1, 1) == 1);
    CHECK(crossing_partition_count(2, 1) == 3);
    for (unsigned n = 0; n <= 20; ++n) CHECK(crossing_partition_count(n, 0) == catalan(n));
    CHECK_THROWS_AS(crossing_partition_count(4, 5), std::domain_error);
}

TEST_CASE("exact identities up to n = 500") {
    for (unsigned n = 0; n <= 500; ++n) {
        CHECK(BigCount(n + 1) * catalan(n) == central_binomial(n));
        CHECK(catalan_triangle(n, n) == catalan(n));
    }
    for (unsigned n : {0u, 1u, 2u, 3u, 5u, 10u, 50u, 137u, 300u, 500u}) {
        BigCount sum = 0;
        for (unsigned l = 0; l <= n; ++l) {
            const BigCount j = crossing_partition_count(n, l);
            CHECK(j == catalan_triangle(n + l, n - l));
            sum += j;
        }
        CHECK(sum == central_binomial(n));
    }
}

TEST_CASE("log shadow agrees with exact counts") {
    CHECK(to_log(BigCount(0)).zero);
    CHECK(to_log(BigCount(1)).log_value == 0.0);
    CHECK(to_log(BigCount(1) << 100).log_value == doctest::Approx(100.0 * M_LN2).epsilon(1e-15));
    // reference logs from 30-digit arithmetic
    CHECK(to_log(catalan(100)).log_value == doctest::Approx(131.13811556443723).epsilon(1e-14));
    CHECK(to_log(catalan(300)).log_value == doctest::Approx(406.75652522449174).epsilon(1e-14));
    CHECK(to_log(central_binomial(300)).log_value ==
          doctest::Approx(412.46363548924062).epsilon(1e-14));
    for (unsigned n : {10u, 50u, 100u, 200u, 300u}) {
        const double lg = log_central_binomial(n);
        CHECK(std::abs(std::expm1(to_log(central_binomial(n)).log_value - lg)) < 1e-12);
        for (unsigned l : {0u, 1u, n / 2, n}) {
            const double lj = log_crossing_partition(n, l);
            CHECK(std::abs(std::expm1(to_log(crossing_partition_count(n, l)).log_value - lj)) <
                  1e-12);
        }
    }
}

TEST_CASE("counting operations are safe to call concurrently") {
    std::vector<std::future<BigCount>> futures;
    for (int t = 0; t < 8; ++t) {
        futures.push_back(std::async(std::launch::async, [t] {
            BigCount acc = 0;
            for (unsigned n = 0; n <= 200; ++n) {
                acc += crossing_partition_count(n + static_cast<unsigned>(t), n / 2);
            }
            return acc;
        }));
    }
    std::vector<BigCount> results;
    for (auto& f : futures) results.push_back(f.get());
    for (int t = 0; t < 8; ++t) {
        BigCount expected = 0;
        for (unsigned n = 0; n <= 200; ++n) {
            expected += crossing_partition_count(n + static_cast<unsigned>(t), n / 2);
        }
        CHECK(results[static_cast<std::size_t>(t)] == expected);
    }
}

TEST_CASE("catalan asymptotic error bound 2/n") {
    double prev = 1.0;
    for (unsigned n : {100u, 200u, 400u, 800u}) {
        const double rel =
            std::abs(std::expm1(catalan_asymptotic(n).log_value - to_log(catalan(n)).log_value));
        CHECK(rel < 2.0 / n);
        CHECK(rel < prev);  // error decreases with n
        prev = rel;
    }
    const double rel1000 =
        std::abs(std::expm1(catalan_asymptotic(1000).log_value - to_log(catalan(1000)).log_value));
    CHECK(rel1000 < 2.0 / 1000);
    CHECK_THROWS_AS(catalan_asymptotic(0), std::domain_error);
}

TEST_CASE("crossing count asymptotic") {
    CHECK(crossing_count_asymptotic(100, 0).zero);
    CHECK_THROWS_AS(crossing_count_asymptotic(0, 0), std::domain_error);
    CHECK_THROWS_AS(crossing_count_asymptotic(10, 11), std::domain_error);

    // argmax within +-2 of the exact argmax at n = 400
    const unsigned n = 400;
    unsigned exact_argmax = 0;
    BigCount exact_max = 0;
    for (unsigned l = 0; l <= n; ++l) {
        const BigCount j = crossing_partition_count(n, l);
        if (j > exact_max) {
            exact_max = j;
            exact_argmax = l;
        }
    }
    unsigned asym_argmax = 1;
    double asym_max = -1e300;
    for (unsigned l = 1; l <= n; ++l) {
        const double lj = crossing_count_asymptotic(n, l).log_value;
        if (lj > asym_max) {
            asym_max = lj;
            asym_argmax = l;
        }
    }
    CHECK(std::abs(static_cast<int>(asym_argmax) - static_cast<int>(exact_argmax)) <= 2);

    // sum over l approximates (2n choose n) within 5%
    const double log_binom = to_log(central_binomial(n)).log_value;
    double ratio_sum = 0.0;
    for (unsigned l = 1; l <= n; ++l) {
        ratio_sum += std::exp(crossing_count_asymptotic(n, l).log_value - log_binom);
    }
    CHECK(std::abs(ratio_sum - 1.0) < 0.05);

    // pointwise error at n = 100, l = 10 below 10%
    const double rel = std::abs(std::expm1(crossing_count_asymptotic(100, 10).log_value -
                                           to_log(crossing_partition_count(100, 10)).log_value));
    CHECK(rel < 0.10);
}
