#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pdxprop::lattice {

// Discretization of 2n-step random-walk time with spacings eta (space) and
// epsilon (time), locked together by epsilon = mass * eta^2 and
// total_time = 2 * epsilon * n.
struct LatticeSpec {
    unsigned long n = 1;
    double mass = 1.0;
    double eta = 1.0;
    double epsilon = 1.0;
    double total_time = 2.0;

    // Fix (n, mass, T) and derive the spacings.
    static LatticeSpec from_time(unsigned long n, double mass, double total_time);
    // Fix (n, mass, eta) and derive epsilon and T.
    static LatticeSpec from_spacing(unsigned long n, double mass, double eta);

    // Throws std::invalid_argument if the locked relations are violated
    // beyond a few ulp, or any quantity is non-positive.
    void validate() const;
};

// A loop of 2n unit steps on the integer line, starting and ending at 0.
class LatticePath {
  public:
    explicit LatticePath(std::vector<std::int8_t> steps);
    static LatticePath from_string(std::string_view updown);  // e.g. "UDDU"

    std::span<const std::int8_t> steps() const { return steps_; }
    std::size_t step_count() const { return steps_.size(); }
    std::string to_string() const;

    bool operator==(const LatticePath&) const = default;

  private:
    std::vector<std::int8_t> steps_;  // each +1 or -1, balanced loop
};

struct Free {};
struct Step {
    double V = 0.0;  // height of the potential on x < 0, V >= 0
};
struct Delta {
    double a = 0.0;  // delta coupling; negative values allowed
};
using WeightModel = std::variant<Free, Step, Delta>;

inline constexpr unsigned kDefaultEnumerationBound = 12;

// Number of steps whose midpoint lies below the axis, i.e. steps with
// min(x_before, x_after) < 0. Even for every loop.
unsigned time_below_steps(std::span<const std::int8_t> steps);
unsigned time_below_steps(const LatticePath& path);

// Number of steps traversing the cell between sites 0 and -1, either
// direction. Even for every loop.
unsigned boundary_crossings(std::span<const std::int8_t> steps);
unsigned boundary_crossings(const LatticePath& path);

// Per-path weight: Free -> 1, Step(V) -> exp(-V eps * time_below_steps),
// Delta(a) -> exp(-a m eta * boundary_crossings).
double path_weight(std::span<const std::int8_t> steps, const WeightModel& model,
                   const LatticeSpec& spec);
double path_weight(const LatticePath& path, const WeightModel& model, const LatticeSpec& spec);

// Visits every 2n-step loop exactly once, in lexicographic step order
// (D < U). Throws std::domain_error when n exceeds the bound.
void enumerate_loops(unsigned n, const std::function<void(std::span<const std::int8_t>)>& visit,
                     unsigned bound = kDefaultEnumerationBound);

// 2^{-2n} sum over all loops of path_weight: the conditional probability
// u(0,T|0,0) by exhaustive enumeration.
double lattice_density_bruteforce(unsigned n, const WeightModel& model, const LatticeSpec& spec,
                                  unsigned bound = kDefaultEnumerationBound);

// The same probability by closed form: the free binomial ratio, the
// Catalan geometric sum for Step, and the crossing-partition sum for
// Delta. Valid far beyond the enumeration bound (log-space internally).
double lattice_density_closed(unsigned long n, const WeightModel& model,
                              const LatticeSpec& spec);

// One application of the section-swap rule: a loop that enters x < 0 is
// mapped to a loop spending exactly 2 fewer steps below; non-crossing
// loops are fixed points. Restricted to a fixed below-time class the map
// is a bijection onto the class two steps lower.
LatticePath chung_feller_map(const LatticePath& path);

// "class,count" CSV rows in ascending class order, e.g. for below-time or
// crossing histograms.
std::string histogram_csv(const std::map<unsigned, unsigned long long>& histogram);

// Weighted-path sum from site x0 to site x1 in 2n steps, each step
// carrying probability 1/2 times the same per-step potential factor as
// path_weight. cutoff bounds |site| and must satisfy
// cutoff >= n + max(|x0|,|x1|) so that truncation is exact.
double transfer_matrix_density(unsigned long n, long x0_site, long x1_site,
                               const WeightModel& model, const LatticeSpec& spec, long cutoff);

}  // namespace pdxprop::lattice
