#include "pdxprop/lattice.hpp"

#include "pdxprop/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pdxprop::lattice {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("LatticeSpec: ") + name + " must be positive");
    }
}

// |x - y| within a few ulp of y.
bool nearly_equal(double x, double y) {
    return std::abs(x - y) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(y);
}

}  // namespace

LatticeSpec LatticeSpec::from_time(unsigned long n, double mass, double total_time) {
    if (n == 0) throw std::invalid_argument("LatticeSpec: n must be positive");
    check_positive(mass, "mass");
    check_positive(total_time, "total_time");
    LatticeSpec s;
    s.n = n;
    s.mass = mass;
    s.total_time = total_time;
    s.epsilon = total_time / (2.0 * static_cast<double>(n));
    s.eta = std::sqrt(s.epsilon / mass);
    s.validate();
    return s;
}

LatticeSpec LatticeSpec::from_spacing(unsigned long n, double mass, double eta) {
    if (n == 0) throw std::invalid_argument("LatticeSpec: n must be positive");
    check_positive(mass, "mass");
    check_positive(eta, "eta");
    LatticeSpec s;
    s.n = n;
    s.mass = mass;
    s.eta = eta;
    s.epsilon = mass * eta * eta;
    s.total_time = 2.0 * s.epsilon * static_cast<double>(n);
    s.validate();
    return s;
}

void LatticeSpec::validate() const {
    if (n == 0) throw std::invalid_argument("LatticeSpec: n must be positive");
    check_positive(mass, "mass");
    check_positive(eta, "eta");
    check_positive(epsilon, "epsilon");
    check_positive(total_time, "total_time");
    if (!nearly_equal(epsilon, mass * eta * eta)) {
        throw std::invalid_argument("LatticeSpec: epsilon != mass * eta^2");
    }
    if (!nearly_equal(total_time, 2.0 * epsilon * static_cast<double>(n))) {
        throw std::invalid_argument("LatticeSpec: total_time != 2 * epsilon * n");
    }
}

LatticePath::LatticePath(std::vector<std::int8_t> steps) : steps_(std::move(steps)) {
    long x = 0;
    long ups = 0;
    for (std::int8_t s : steps_) {
        if (s != 1 && s != -1) throw std::invalid_argument("LatticePath: steps must be +1/-1");
        x += s;
        ups += (s == 1);
    }
    if (x != 0 || 2 * ups != static_cast<long>(steps_.size())) {
        throw std::invalid_argument("LatticePath: not a loop (unbalanced steps)");
    }
}

LatticePath LatticePath::from_string(std::string_view updown) {
    std::vector<std::int8_t> steps;
    steps.reserve(updown.size());
    for (char c : updown) {
        if (c == 'U') {
            steps.push_back(1);
        } else if (c == 'D') {
            steps.push_back(-1);
        } else {
            throw std::invalid_argument("LatticePath: expected only 'U'/'D'");
        }
    }
    return LatticePath(std::move(steps));
}

std::string LatticePath::to_string() const {
    std::string s;
    s.reserve(steps_.size());
    for (std::int8_t st : steps_) s.push_back(st == 1 ? 'U' : 'D');
    return s;
}

unsigned time_below_steps(std::span<const std::int8_t> steps) {
    long x = 0;
    unsigned count = 0;
    for (std::int8_t s : steps) {
        const long x2 = x + s;
        if (std::min(x, x2) < 0) ++count;
        x = x2;
    }
    return count;
}

unsigned time_below_steps(const LatticePath& path) { return time_below_steps(path.steps()); }

unsigned boundary_crossings(std::span<const std::int8_t> steps) {
    long x = 0;
    unsigned count = 0;
    for (std::int8_t s : steps) {
        const long x2 = x + s;
        if ((x == 0 && x2 == -1) || (x == -1 && x2 == 0)) ++count;
        x = x2;
    }
    return count;
}

unsigned boundary_crossings(const LatticePath& path) { return boundary_crossings(path.steps()); }

double path_weight(std::span<const std::int8_t> steps, const WeightModel& model,
                   const LatticeSpec& spec) {
    if (steps.size() != 2 * spec.n) {
        throw std::invalid_argument("path_weight: path length inconsistent with spec");
    }
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Free>) {
                return 1.0;
            } else if constexpr (std::is_same_v<M, Step>) {
                return std::exp(-m.V * spec.epsilon *
                                static_cast<double>(time_below_steps(steps)));
            } else {
                return std::exp(-m.a * spec.mass * spec.eta *
                                static_cast<double>(boundary_crossings(steps)));
            }
        },
        model);
}

double path_weight(const LatticePath& path, const WeightModel& model, const LatticeSpec& spec) {
    return path_weight(path.steps(), model, spec);
}

namespace {

void enumerate_rec(std::vector<std::int8_t>& buf, unsigned pos, unsigned ups_left,
                   unsigned downs_left,
                   const std::function<void(std::span<const std::int8_t>)>& visit) {
    if (ups_left == 0 && downs_left == 0) {
        visit(buf);
        return;
    }
    if (downs_left > 0) {
        buf[pos] = -1;
        enumerate_rec(buf, pos + 1, ups_left, downs_left - 1, visit);
    }
    if (ups_left > 0) {
        buf[pos] = 1;
        enumerate_rec(buf, pos + 1, ups_left - 1, downs_left, visit);
    }
}

}  // namespace

void enumerate_loops(unsigned n, const std::function<void(std::span<const std::int8_t>)>& visit,
                     unsigned bound) {
    if (n > bound) {
        throw std::domain_error("enumerate_loops: n = " + std::to_string(n) +
                                " exceeds the enumeration bound " + std::to_string(bound) +
                                " (raise the bound explicitly to override)");
    }
    std::vector<std::int8_t> buf(2 * n);
    enumerate_rec(buf, 0, n, n, visit);
}

double lattice_density_bruteforce(unsigned n, const WeightModel& model, const LatticeSpec& spec,
                                  unsigned bound) {
    // Kahan accumulation; the n = 10 sum already has ~2e5 terms.
    double sum = 0.0;
    double carry = 0.0;
    enumerate_loops(
        n,
        [&](std::span<const std::int8_t> steps) {
            const double y = path_weight(steps, model, spec) - carry;
            const double t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        },
        bound);
    return sum * std::exp(-2.0 * static_cast<double>(n) * M_LN2);
}

namespace {

double closed_density_free(unsigned long n) {
    return std::exp(combinat::log_central_binomial_ratio(n));
}

double closed_density_step(unsigned long n, double V, const LatticeSpec& spec) {
    if (V < 0.0) throw std::invalid_argument("Step: V must be nonnegative");
    if (V == 0.0) return closed_density_free(n);
    const double log_catalan_ratio =
        combinat::log_central_binomial_ratio(n) - std::log(static_cast<double>(n) + 1.0);
    const double s = 2.0 * spec.epsilon * V;
    const double geometric =
        std::expm1(-s * (static_cast<double>(n) + 1.0)) / std::expm1(-s);
    return std::exp(log_catalan_ratio) * geometric;
}

double closed_density_delta(unsigned long n, double a, const LatticeSpec& spec) {
    if (a == 0.0) return closed_density_free(n);
    // term_l = binom(2n,n) 4^{-n} * r(n,l) * e^{-2 l m a eta}, accumulated
    // through the exact ratio recurrence
    //   r(n,0) = 1/(n+1),
    //   r(n,l+1)/r(n,l) = (2l+3)(n-l) / ((2l+1)(n+l+2)).
    const double w = std::exp(-2.0 * spec.mass * a * spec.eta);
    const double fn = static_cast<double>(n);
    double term = std::exp(combinat::log_central_binomial_ratio(n)) / (fn + 1.0);
    double sum = 0.0;
    double carry = 0.0;
    for (unsigned long l = 0;; ++l) {
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        if (l == n) break;
        const double fl = static_cast<double>(l);
        term *= (2.0 * fl + 3.0) * (fn - fl) / ((2.0 * fl + 1.0) * (fn + fl + 2.0)) * w;
    }
    return sum;
}

}  // namespace

double lattice_density_closed(unsigned long n, const WeightModel& model,
                              const LatticeSpec& spec) {
    if (n != spec.n) {
        throw std::invalid_argument("lattice_density_closed: n inconsistent with spec");
    }
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Free>) {
                return closed_density_free(n);
            } else if constexpr (std::is_same_v<M, Step>) {
                return closed_density_step(n, m.V, spec);
            } else {
                return closed_density_delta(n, m.a, spec);
            }
        },
        model);
}

LatticePath chung_feller_map(const LatticePath& path) {
    const auto steps = path.steps();
    long x = 0;
    std::size_t first_cross = steps.size();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const long x2 = x + steps[i];
        if (x == 0 && x2 == -1) {
            first_cross = i;
            break;
        }
        x = x2;
    }
    if (first_cross == steps.size()) return path;  // never enters x < 0

    // Follow until the walk returns to 0; that step is the pivot.
    x = -1;
    std::size_t pivot = first_cross;
    for (std::size_t i = first_cross + 1; i < steps.size(); ++i) {
        const long x2 = x + steps[i];
        if (x2 == 0) {
            pivot = i;
            break;
        }
        x = x2;
    }

    // Swap the sections before and after the pivot step, keeping the pivot
    // in place: [0,pivot) [pivot] (pivot,end)  ->  (pivot,end) [pivot] [0,pivot).
    std::vector<std::int8_t> out;
    out.reserve(steps.size());
    out.insert(out.end(), steps.begin() + pivot + 1, steps.end());
    out.push_back(steps[pivot]);
    out.insert(out.end(), steps.begin(), steps.begin() + pivot);
    return LatticePath(std::move(out));
}

std::string histogram_csv(const std::map<unsigned, unsigned long long>& histogram) {
    std::string out = "class,count\n";
    for (const auto& [cls, count] : histogram) {
        out += std::to_string(cls) + "," + std::to_string(count) + "\n";
    }
    return out;
}

double transfer_matrix_density(unsigned long n, long x0_site, long x1_site,
                               const WeightModel& model, const LatticeSpec& spec, long cutoff) {
    const long reach = static_cast<long>(n) + std::max(std::labs(x0_site), std::labs(x1_site));
    if (cutoff < reach) {
        throw std::domain_error("transfer_matrix_density: cutoff " + std::to_string(cutoff) +
                                " would truncate paths; need >= " + std::to_string(reach));
    }
    if ((x0_site + x1_site) % 2 != 0) return 0.0;  // unreachable parity

    const std::size_t size = static_cast<std::size_t>(2 * cutoff + 1);
    const long off = cutoff;

    // Per-step factor for moving between sites s and s', fixed in time.
    // up_w[i]: factor for the step (i-off) -> (i-off+1); down_w[i] for
    // (i-off) -> (i-off-1).
    std::vector<double> up_w(size, 1.0), down_w(size, 1.0);
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Step>) {
                const double f = std::exp(-m.V * spec.epsilon);
                for (std::size_t i = 0; i < size; ++i) {
                    const long s = static_cast<long>(i) - off;
                    if (std::min(s, s + 1) < 0) up_w[i] = f;
                    if (std::min(s, s - 1) < 0) down_w[i] = f;
                }
            } else if constexpr (std::is_same_v<M, Delta>) {
                const double f = std::exp(-m.a * spec.mass * spec.eta);
                up_w[static_cast<std::size_t>(off - 1)] = f;   // -1 -> 0
                down_w[static_cast<std::size_t>(off)] = f;     //  0 -> -1
            }
        },
        model);

    std::vector<double> cur(size, 0.0), next(size, 0.0);
    cur[static_cast<std::size_t>(off + x0_site)] = 1.0;
    long lo = x0_site, hi = x0_site;  // live support window
    for (unsigned long step = 0; step < 2 * n; ++step) {
        const long nlo = std::max(lo - 1, -cutoff);
        const long nhi = std::min(hi + 1, cutoff);
        for (long s = nlo; s <= nhi; ++s) {
            const std::size_t i = static_cast<std::size_t>(s + off);
            double acc = 0.0;
            if (s - 1 >= lo) acc += cur[i - 1] * up_w[i - 1];
            if (s + 1 <= hi) acc += cur[i + 1] * down_w[i + 1];
            next[i] = 0.5 * acc;
        }
        lo = nlo;
        hi = nhi;
        std::swap(cur, next);
    }
    return cur[static_cast<std::size_t>(off + x1_site)];
}

}  // namespace pdxprop::lattice
