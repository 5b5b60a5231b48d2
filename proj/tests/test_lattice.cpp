#include "pdxprop/lattice.hpp"

#include "pdxprop/combinat.hpp"
#include "pdxprop/continuum.hpp"

#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace pdxprop;
using namespace pdxprop::lattice;

namespace {

std::vector<std::string> collect_loops(unsigned n) {
    std::vector<std::string> out;
    enumerate_loops(n, [&](std::span<const std::int8_t> steps) {
        out.push_back(LatticePath(std::vector<std::int8_t>(steps.begin(), steps.end())).to_string());
    });
    return out;
}

}  // namespace

TEST_CASE("spec construction and invariants") {
    const auto s = LatticeSpec::from_time(10, 2.0, 1.0);
    CHECK(s.epsilon == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(s.epsilon == doctest::Approx(s.mass * s.eta * s.eta).epsilon(1e-15));
    CHECK(s.total_time == doctest::Approx(2.0 * s.epsilon * 10).epsilon(1e-15));
    const auto s2 = LatticeSpec::from_spacing(4, 1.0, 0.5);
    CHECK(s2.epsilon == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s2.total_time == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(LatticeSpec::from_time(0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec::from_time(4, -1.0, 1.0), std::invalid_argument);
    LatticeSpec bad = s;
    bad.eta *= 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("path construction and round trip") {
    CHECK(LatticePath::from_string("UD").to_string() == "UD");
    CHECK_THROWS_AS(LatticePath::from_string("UU"), std::invalid_argument);
    CHECK_THROWS_AS(LatticePath::from_string("UX"), std::invalid_argument);
    CHECK(LatticePath::from_string("").step_count() == 0);
}

TEST_CASE("enumeration") {
    CHECK(collect_loops(0) == std::vector<std::string>{""});
    CHECK(collect_loops(1) == std::vector<std::string>{"DU", "UD"});
    CHECK(collect_loops(2).size() == 6);
    for (unsigned n = 0; n <= 12; ++n) {
        unsigned long count = 0;
        enumerate_loops(n, [&](std::span<const std::int8_t>) { ++count; });
        CHECK(BigCount(count) == combinat::central_binomial(n));
    }
    CHECK_THROWS_AS(enumerate_loops(13, [](std::span<const std::int8_t>) {}),
                    std::domain_error);
    CHECK_NOTHROW(enumerate_loops(3, [](std::span<const std::int8_t>) {}, 3));
}

TEST_CASE("below-time and crossing counts") {
    CHECK(time_below_steps(LatticePath::from_string("UD")) == 0);
    CHECK(time_below_steps(LatticePath::from_string("DU")) == 2);
    CHECK(boundary_crossings(LatticePath::from_string("UD")) == 0);
    CHECK(boundary_crossings(LatticePath::from_string("DU")) == 2);

    std::map<unsigned, unsigned long long> below, crossings;
    enumerate_loops(2, [&](std::span<const std::int8_t> steps) {
        ++below[time_below_steps(steps)];
        ++crossings[boundary_crossings(steps)];
    });
    CHECK(below == std::map<unsigned, unsigned long long>{{0, 2}, {2, 2}, {4, 2}});
    CHECK(crossings == std::map<unsigned, unsigned long long>{{0, 2}, {2, 3}, {4, 1}});
}

TEST_CASE("histogram uniformity and crossing partition, n <= 6") {
    for (unsigned n = 1; n <= 6; ++n) {
        std::map<unsigned, unsigned long long> below, crossings;
        enumerate_loops(n, [&](std::span<const std::int8_t> steps) {
            ++below[time_below_steps(steps)];
            ++crossings[boundary_crossings(steps)];
        });
        const BigCount cn = combinat::catalan(n);
        CHECK(below.size() == n + 1);
        for (unsigned k = 0; k <= n; ++k) CHECK(BigCount(below[2 * k]) == cn);
        for (unsigned l = 0; l <= n; ++l) {
            CHECK(BigCount(crossings[2 * l]) == combinat::crossing_partition_count(n, l));
        }
    }
}

TEST_CASE("path weights") {
    const auto spec = LatticeSpec::from_time(1, 1.0, 1.0);  // eps = 0.5
    const auto du = LatticePath::from_string("DU");
    CHECK(path_weight(du, Free{}, spec) == 1.0);
    CHECK(path_weight(du, Step{1.5}, spec) ==
          doctest::Approx(std::exp(-2.0 * spec.epsilon * 1.5)).epsilon(1e-15));
    CHECK(path_weight(du, Delta{0.7}, spec) ==
          doctest::Approx(std::exp(-2.0 * 0.7 * spec.mass * spec.eta)).epsilon(1e-15));
    CHECK_THROWS_AS(path_weight(LatticePath::from_string("UDDU"), Free{}, spec),
                    std::invalid_argument);
}

TEST_CASE("brute-force densities at n = 1") {
    const auto spec = LatticeSpec::from_time(1, 1.0, 1.0);
    CHECK(lattice_density_bruteforce(1, Free{}, spec) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lattice_density_bruteforce(1, Step{1.0}, spec) ==
          doctest::Approx((1.0 + std::exp(-2.0 * spec.epsilon)) / 4.0).epsilon(1e-15));
    CHECK(lattice_density_bruteforce(1, Delta{1.0}, spec) ==
          doctest::Approx((1.0 + std::exp(-2.0 * spec.mass * spec.eta)) / 4.0).epsilon(1e-15));
}

TEST_CASE("closed density equals brute force") {
    for (unsigned n : {1u, 2u, 5u, 8u}) {
        const auto spec = LatticeSpec::from_time(n, 1.0, 1.0);
        for (double p : {0.0, 0.5, 1.0, 2.0}) {
            const WeightModel step = Step{p};
            const WeightModel delta = Delta{p};
            CHECK(lattice_density_closed(n, step, spec) ==
                  doctest::Approx(lattice_density_bruteforce(n, step, spec)).epsilon(1e-12));
            CHECK(lattice_density_closed(n, delta, spec) ==
                  doctest::Approx(lattice_density_bruteforce(n, delta, spec)).epsilon(1e-12));
        }
        CHECK(lattice_density_closed(n, Free{}, spec) ==
              doctest::Approx(lattice_density_bruteforce(n, Free{}, spec)).epsilon(1e-13));
    }
}

TEST_CASE("step at V = 0 equals free at any n") {
    for (unsigned long n : {1ul, 7ul, 100ul, 100000ul}) {
        const auto spec = LatticeSpec::from_time(n, 1.0, 1.0);
        CHECK(lattice_density_closed(n, Step{0.0}, spec) ==
              lattice_density_closed(n, Free{}, spec));
        CHECK(lattice_density_closed(n, Delta{0.0}, spec) ==
              lattice_density_closed(n, Free{}, spec));
    }
}

TEST_CASE("negative delta coupling stays finite") {
    const auto spec = LatticeSpec::from_time(50, 1.0, 1.0);
    const double v = lattice_density_closed(50, Delta{-1.5}, spec);
    CHECK(std::isfinite(v));
    CHECK(v > lattice_density_closed(50, Free{}, spec));  // attraction enhances return
}

TEST_CASE("section-swap map on hand-checked paths") {
    CHECK(chung_feller_map(LatticePath::from_string("UUDD")).to_string() == "UUDD");
    const auto mapped = chung_feller_map(LatticePath::from_string("DUUD"));
    CHECK(mapped.to_string() == "UDUD");
    CHECK(time_below_steps(mapped) == 0);
}

TEST_CASE("section-swap map is a class bijection") {
    for (unsigned n = 1; n <= 6; ++n) {
        // group paths by below-time class
        std::map<unsigned, std::vector<LatticePath>> classes;
        enumerate_loops(n, [&](std::span<const std::int8_t> steps) {
            LatticePath p(std::vector<std::int8_t>(steps.begin(), steps.end()));
            classes[time_below_steps(p)].push_back(std::move(p));
        });
        for (unsigned k = 1; k <= n; ++k) {
            std::set<std::string> images;
            for (const auto& p : classes[2 * k]) {
                const auto q = chung_feller_map(p);
                CHECK(time_below_steps(q) == 2 * (k - 1));
                images.insert(q.to_string());
            }
            CHECK(images.size() == classes[2 * k].size());  // injective
            CHECK(images.size() == classes[2 * (k - 1)].size());
        }
        // k applications reach a non-crossing fixed point
        for (const auto& p : classes[2 * n]) {
            LatticePath cur = p;
            for (unsigned i = 0; i < n; ++i) cur = chung_feller_map(cur);
            CHECK(time_below_steps(cur) == 0);
            CHECK(chung_feller_map(cur) == cur);
        }
    }
}

TEST_CASE("transfer matrix against enumeration and closed forms") {
    for (unsigned n : {1u, 4u, 8u}) {
        const auto spec = LatticeSpec::from_time(n, 1.0, 1.0);
        for (const WeightModel& m :
             {WeightModel(Free{}), WeightModel(Step{1.0}), WeightModel(Delta{0.5})}) {
            CHECK(transfer_matrix_density(n, 0, 0, m, spec, n + 2) ==
                  doctest::Approx(lattice_density_bruteforce(n, m, spec)).epsilon(1e-12));
        }
    }
    const auto s1 = LatticeSpec::from_time(1, 1.0, 1.0);
    CHECK(transfer_matrix_density(1, 0, 2, Free{}, s1, 3) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(transfer_matrix_density(1, 0, 1, Free{}, s1, 3) == 0.0);  // parity
    CHECK_THROWS_AS(transfer_matrix_density(4, 0, 0, Free{}, LatticeSpec::from_time(4, 1.0, 1.0), 3),
                    std::domain_error);
}

TEST_CASE("transfer matrix symmetries") {
    const unsigned n = 6;
    const auto spec = LatticeSpec::from_time(n, 1.0, 1.0);
    for (const auto& [x0, x1] : std::vector<std::pair<long, long>>{{0, 2}, {-1, 3}, {2, -2}}) {
        const long cut = static_cast<long>(n) + 4;
        CHECK(transfer_matrix_density(n, x0, x1, Free{}, spec, cut) ==
              doctest::Approx(transfer_matrix_density(n, x1, x0, Free{}, spec, cut))
                  .epsilon(1e-13));
        CHECK(transfer_matrix_density(n, x0, x1, Delta{0.8}, spec, cut) ==
              doctest::Approx(transfer_matrix_density(n, x1, x0, Delta{0.8}, spec, cut))
                  .epsilon(1e-13));
        CHECK(transfer_matrix_density(n, x0, x1, Free{}, spec, cut) ==
              doctest::Approx(transfer_matrix_density(n, -x0, -x1, Free{}, spec, cut))
                  .epsilon(1e-13));
    }
}

TEST_CASE("transfer matrix approaches the free propagator") {
    // n = k^2/2 puts the endpoints x = +-1 exactly on lattice sites.
    const int k = 20;
    const unsigned long n = k * k / 2;
    const auto spec = LatticeSpec::from_time(n, 1.0, 1.0);
    const double u = transfer_matrix_density(n, k, -k, Free{}, spec,
                                             static_cast<long>(n) + k);
    const double target =
        continuum::free_theta(-2.0, continuum::cplx(1.0, 0.0), 1.0).real();
    CHECK(u / (2.0 * spec.eta) == doctest::Approx(target).epsilon(5e-3));
}

TEST_CASE("closed densities converge at the model's own rate") {
    // u/(2 eta) approaches the continuum edge value like n^{-1} for free and
    // step, but only like n^{-1/2} for delta: the width-eta square well is an
    // O(eta) regularization of the point potential.
    const double m = 1.0, T = 1.0;
    const auto slope_for = [&](const WeightModel& model, double target) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int k = 0;
        for (unsigned long n : {4000ul, 16000ul, 64000ul}) {
            const auto spec = LatticeSpec::from_time(n, m, T);
            const double y = lattice_density_closed(n, model, spec) / (2.0 * spec.eta);
            const double lx = std::log(static_cast<double>(n));
            const double ly = std::log(std::abs(y - target) / target);
            sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
            ++k;
        }
        return (k * sxy - sx * sy) / (k * sxx - sx * sx);
    };
    using pdxprop::continuum::cplx;
    CHECK(slope_for(Free{}, pdxprop::continuum::free_theta(0.0, cplx(T, 0.0), m).real()) ==
          doctest::Approx(-1.0).epsilon(0.05));
    CHECK(slope_for(Step{1.0},
                    pdxprop::continuum::step_edge_theta(cplx(T, 0.0), 1.0, m).real()) ==
          doctest::Approx(-1.0).epsilon(0.05));
    CHECK(slope_for(Delta{1.0},
                    pdxprop::continuum::delta_edge_theta(cplx(T, 0.0), 1.0, m).real()) ==
          doctest::Approx(-0.5).epsilon(0.05));
}

TEST_CASE("histogram csv") {
    CHECK(histogram_csv({{0, 2}, {2, 3}, {4, 1}}) == "class,count\n0,2\n2,3\n4,1\n");
    CHECK(histogram_csv({}) == "class,count\n");
}
