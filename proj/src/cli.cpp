#include "pdxprop/cli.hpp"

#include "pdxprop/combinat.hpp"
#include "pdxprop/continuum.hpp"
#include "pdxprop/lattice.hpp"
#include "pdxprop/pdx.hpp"
#include "pdxprop/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace pdxprop::cli {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Decimal representation of e^{log_value}, usable beyond double range.
std::string fmt_from_log(double log_value) {
    if (log_value <= 700.0) return fmt(std::exp(log_value));
    const double log10_value = log_value / M_LN10;
    const double exponent = std::floor(log10_value);
    const double mantissa = std::pow(10.0, log10_value - exponent);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12ge+%.0f", mantissa, exponent);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out += columns[i];
            out += (i + 1 < columns.size()) ? "," : "\n";
        }
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out += row[i];
                out += (i + 1 < row.size()) ? "," : "\n";
            }
        }
        return out;
    }

    // Array of objects keyed by column name; cell strings are kept verbatim
    // so csv and json round-trip identically.
    std::string to_json() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }

    std::string render(const std::string& format) const {
        return format == "json" ? to_json() : to_csv();
    }
};

// Writes payload to the --out path (with a digest manifest alongside) or to
// the stream when no path was given.
void emit(const std::string& payload, const std::string& out_path, const std::string& format,
          const std::string& command, const json& config, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
        f << payload;
    }
    char digest[32];
    std::snprintf(digest, sizeof(digest), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload)));
    json manifest{
        {"tool", "pdxprop"},       {"version", kVersion}, {"command", command},
        {"config", config},        {"output", out_path},  {"format", format},
        {"bytes", payload.size()}, {"digest", digest},
    };
    std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
    if (!mf) throw std::invalid_argument("cannot open manifest file: " + out_path + ".manifest.json");
    mf << manifest.dump(2) << "\n";
}

lattice::WeightModel make_model(const std::string& name, double V, double a) {
    if (name == "free") return lattice::Free{};
    if (name == "step") return lattice::Step{V};
    if (name == "delta") return lattice::Delta{a};
    throw std::invalid_argument("unknown model: " + name);
}

double model_edge_target(const std::string& name, double V, double a, double mass, double T) {
    using namespace continuum;
    if (name == "free") return free_theta(0.0, cplx(T, 0.0), mass).real();
    if (name == "step") return step_edge_theta(cplx(T, 0.0), V, mass).real();
    return delta_edge_theta(cplx(T, 0.0), a, mass).real();
}

// ---------------------------------------------------------------------- count

int run_count(const std::vector<unsigned>& ns, const std::string& out_path,
              const std::string& format, std::ostream& out) {
    Table table;
    table.columns = {"n", "catalan", "central_binomial", "catalan_asymptotic", "relative_error"};
    for (unsigned n : ns) {
        std::vector<std::string> row(5);
        row[0] = std::to_string(n);
        const BigCount cn = combinat::catalan(n);
        row[1] = to_decimal(cn);
        row[2] = to_decimal(combinat::central_binomial(n));
        if (n >= 1) {
            const double la = combinat::catalan_asymptotic(n).log_value;
            row[3] = fmt_from_log(la);
            row[4] = fmt(std::abs(std::expm1(la - to_log(cn).log_value)));
        }
        table.rows.push_back(std::move(row));
    }
    json config{{"n", ns}, {"format", format}};
    emit(table.render(format), out_path, format, "count", config, out);
    return kExitOk;
}

// -------------------------------------------------------------------- density

int run_density(const std::string& model_name, double V, double a, double mass, double T,
                const std::vector<unsigned long>& ns, unsigned enum_bound,
                unsigned long transfer_bound, double agree_tol, const std::string& out_path,
                const std::string& format, std::ostream& out) {
    const lattice::WeightModel model = make_model(model_name, V, a);
    Table table;
    table.columns = {"n",      "closed",       "brute_force",
                     "transfer_matrix", "brute_agrees", "transfer_agrees"};
    for (unsigned long n : ns) {
        const auto spec = lattice::LatticeSpec::from_time(n, mass, T);
        const double closed = lattice::lattice_density_closed(n, model, spec);
        std::vector<std::string> row(6);
        row[0] = std::to_string(n);
        row[1] = fmt(closed);
        if (n <= enum_bound) {
            const double brute =
                lattice::lattice_density_bruteforce(static_cast<unsigned>(n), model, spec, enum_bound);
            row[2] = fmt(brute);
            row[4] = std::abs(brute - closed) <= agree_tol * std::abs(closed) ? "1" : "0";
        }
        if (n <= transfer_bound) {
            const double tm = lattice::transfer_matrix_density(n, 0, 0, model, spec,
                                                               static_cast<long>(n));
            row[3] = fmt(tm);
            row[5] = std::abs(tm - closed) <= agree_tol * std::abs(closed) ? "1" : "0";
        }
        table.rows.push_back(std::move(row));
    }
    json config{{"model", model_name}, {"V", V},
                {"a", a},              {"mass", mass},
                {"T", T},              {"n", ns},
                {"enum_bound", enum_bound}, {"transfer_bound", transfer_bound},
                {"agree_tol", agree_tol},   {"format", format}};
    emit(table.render(format), out_path, format, "density", config, out);
    return kExitOk;
}

// ------------------------------------------------------------------- converge

int run_converge(const std::string& model_name, double V, double a, double mass, double T,
                 std::vector<unsigned long> ns, const std::string& out_path,
                 const std::string& format, std::ostream& out) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.size() < 2) {
        throw std::invalid_argument("converge: need at least 2 distinct --n values");
    }
    const lattice::WeightModel model = make_model(model_name, V, a);
    const double target = model_edge_target(model_name, V, a, mass, T);

    Table table;
    table.columns = {"kind", "n", "value", "target", "relative_error"};
    std::vector<std::pair<double, double>> samples;
    std::vector<std::pair<double, double>> log_errors;
    for (unsigned long n : ns) {
        const auto spec = lattice::LatticeSpec::from_time(n, mass, T);
        const double density = lattice::lattice_density_closed(n, model, spec);
        const double value = density / (2.0 * spec.eta);
        samples.emplace_back(static_cast<double>(n), value);
        const double rel = std::abs(value - target) / std::abs(target);
        if (rel > 0.0) log_errors.emplace_back(std::log(static_cast<double>(n)), std::log(rel));
        table.rows.push_back({"sample", std::to_string(n), fmt(value), fmt(target), fmt(rel)});
    }
    const auto extrapolated = continuum::continuum_extrapolate(samples);
    table.rows.push_back({"extrapolated", "", fmt(extrapolated.estimate), fmt(target),
                          fmt(std::abs(extrapolated.estimate - target) / std::abs(target))});

    // Least-squares slope of log(relative error) against log n.
    std::string slope_cell;
    if (log_errors.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [x, y] : log_errors) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double k = static_cast<double>(log_errors.size());
        slope_cell = fmt((k * sxy - sx * sy) / (k * sxx - sx * sx));
    }
    table.rows.push_back({"slope", "", slope_cell, "", ""});

    json config{{"model", model_name}, {"V", V},   {"a", a},        {"mass", mass},
                {"T", T},              {"n", ns},  {"format", format}};
    emit(table.render(format), out_path, format, "converge", config, out);
    return kExitOk;
}

// ----------------------------------------------------------------- pdx-verify

struct Section {
    std::string name;
    double tolerance = 0.0;
    double max_rel = 0.0;
    json entries = json::array();
    std::string error;

    bool pass() const { return error.empty() && max_rel <= tolerance; }
};

int run_pdx_verify(std::vector<double> x0s, std::vector<double> x1s, std::vector<double> Ts,
                   double mass, double a, double tol_override, int max_subdivisions,
                   const std::string& out_path, const std::string& format, std::ostream& out,
                   std::ostream& err) {
    if (format != "json") {
        throw std::invalid_argument("pdx-verify emits JSON reports; use --format json");
    }
    std::erase_if(x0s, [](double x) { return x == 0.0; });
    std::erase_if(x1s, [](double x) { return x == 0.0; });
    std::erase_if(Ts, [](double t) { return !(t > 0.0); });
    // Endpoint pairs: x1 defaults to the mirror image -x0; an explicit --x1
    // list builds the full cross product instead.
    std::vector<std::pair<double, double>> pairs;
    for (double x0 : x0s) {
        if (x1s.empty()) {
            pairs.emplace_back(x0, -x0);
        } else {
            for (double x1 : x1s) pairs.emplace_back(x0, x1);
        }
    }
    std::vector<std::pair<double, double>> opposite;
    for (const auto& pr : pairs) {
        if (pr.first * pr.second < 0.0) opposite.push_back(pr);
    }
    if (opposite.empty() || Ts.empty()) {
        throw std::invalid_argument(
            "pdx-verify: empty query grid (need opposite-side nonzero --x0/--x1 pairs and "
            "positive --T)");
    }

    quad::QuadratureSpec qspec;
    qspec.max_subdivisions = max_subdivisions;
    const auto tol = [&](double standard) { return tol_override > 0.0 ? tol_override : standard; };

    std::vector<Section> sections;

    // 1. Free first/last-crossing identities.
    {
        Section s;
        s.name = "free_identities";
        s.tolerance = tol(1e-8);
        try {
            std::vector<pdx::Query> queries;
            for (const auto& [x0, x1] : opposite)
                for (double T : Ts) queries.push_back({x0, x1, T, mass});
            const auto report = pdx::verify_free_identity(queries, qspec);
            s.max_rel = report.max_relative_deviation;
            s.entries = json::parse(report.to_json())["entries"];
        } catch (const quad::QuadratureError& e) {
            s.error = e.what();
        }
        sections.push_back(std::move(s));
    }

    // 2. First-and-last-crossing composition with free ingredients.
    {
        Section s;
        s.name = "free_first_last_composition";
        s.tolerance = tol(1e-6);
        try {
            for (const auto& [px0, px1] : opposite) {
                for (double T : Ts) {
                    const pdx::Query q{px0, px1, T, mass};
                    const pdx::EdgeOnSurface edge = [&](double duration) {
                        return continuum::free_theta(0.0, continuum::cplx(duration, 0.0), mass)
                            .real();
                    };
                    const double assembled =
                        pdx::pdx_first_last(q, edge, qspec, continuum::TimeKind::Euclidean)
                            .amplitude.real();
                    const double direct =
                        continuum::free_theta(q.x1 - q.x0, continuum::cplx(T, 0.0), mass).real();
                    const double rel = std::abs(assembled - direct) / std::abs(direct);
                    s.max_rel = std::max(s.max_rel, rel);
                    s.entries.push_back({{"x0", q.x0},
                                         {"x1", q.x1},
                                         {"T", T},
                                         {"direct", direct},
                                         {"assembled", assembled},
                                         {"rel", rel}});
                }
            }
        } catch (const quad::QuadratureError& e) {
            s.error = e.what();
        }
        sections.push_back(std::move(s));
    }

    // 3. Delta assembly vs the closed form, all four sign cases.
    {
        Section s;
        s.name = "delta_assembly_euclidean";
        s.tolerance = tol(1e-6);
        try {
            for (const auto& [px0, px1] : pairs) {
                for (double T : Ts) {
                    const double p = std::abs(px0);
                    // default grid offsets the magnitudes so no case is
                    // accidentally symmetric
                    const double r = x1s.empty() ? 0.5 * p + 0.25 : std::abs(px1);
                    const double cases[4][2] = {{p, -r}, {-p, r}, {p, r}, {-p, -r}};
                    for (const auto& c : cases) {
                        const pdx::Query q{c[0], c[1], T, mass};
                        const double assembled =
                            pdx::assemble_delta_full(q, a, qspec, continuum::TimeKind::Euclidean)
                                .amplitude.real();
                        const double closed =
                            continuum::delta_full_theta(q.x0, q.x1, continuum::cplx(T, 0.0), a,
                                                        mass)
                                .real();
                        const double rel = std::abs(assembled - closed) / std::abs(closed);
                        s.max_rel = std::max(s.max_rel, rel);
                        s.entries.push_back({{"x0", q.x0},
                                             {"x1", q.x1},
                                             {"T", T},
                                             {"a", a},
                                             {"closed", closed},
                                             {"assembled", assembled},
                                             {"rel", rel}});
                    }
                }
            }
        } catch (const quad::QuadratureError& e) {
            s.error = e.what();
        }
        sections.push_back(std::move(s));
    }

    // 4. Real-time closed form vs contour quadrature (two independent routes).
    {
        Section s;
        s.name = "delta_real_time_two_route";
        s.tolerance = tol(1e-10);
        try {
            for (const auto& [px0, px1] : pairs) {
                for (double T : Ts) {
                    const double r = x1s.empty() ? 0.5 * std::abs(px0) + 0.25 : std::abs(px1);
                    const pdx::Query q{-std::abs(px0), r, T, mass};
                    const auto theta = continuum::theta_for(continuum::TimeKind::Real, T);
                    const auto closed =
                        continuum::delta_full_theta(q.x0, q.x1, theta, a, mass);
                    quad::QuadratureSpec tight = qspec;
                    tight.abs_tol = 1e-14;
                    tight.rel_tol = 1e-12;
                    const auto quadrature = continuum::delta_full_theta_by_quadrature(
                        q.x0, q.x1, theta, a, mass, tight);
                    const double rel = std::abs(closed - quadrature) / std::abs(closed);
                    s.max_rel = std::max(s.max_rel, rel);
                    s.entries.push_back({{"x0", q.x0},
                                         {"x1", q.x1},
                                         {"T", T},
                                         {"a", a},
                                         {"closed_re", closed.real()},
                                         {"closed_im", closed.imag()},
                                         {"rel", rel}});
                }
            }
        } catch (const quad::QuadratureError& e) {
            s.error = e.what();
        }
        sections.push_back(std::move(s));
    }

    bool all_pass = true;
    double worst = 0.0;
    std::string worst_name;
    json jsections = json::array();
    for (const auto& s : sections) {
        all_pass = all_pass && s.pass();
        if (!s.error.empty() || s.max_rel >= worst) {
            worst = s.max_rel;
            worst_name = s.name;
        }
        json js{{"name", s.name},
                {"tolerance", s.tolerance},
                {"max_relative_deviation", s.max_rel},
                {"pass", s.pass()},
                {"entries", s.entries}};
        if (!s.error.empty()) js["error"] = s.error;
        jsections.push_back(std::move(js));
    }
    json report{{"tool", "pdxprop"},
                {"version", kVersion},
                {"pass", all_pass},
                {"worst_section", worst_name},
                {"worst_deviation", worst},
                {"sections", jsections}};

    json config{{"x0", x0s},   {"x1", x1s},
                {"T", Ts},      {"mass", mass},
                {"a", a},       {"tol", tol_override},
                {"max_subdivisions", max_subdivisions}, {"format", format}};
    emit(report.dump(2) + "\n", out_path, format, "pdx-verify", config, out);
    if (!all_pass) {
        for (const auto& s : sections) {
            if (!s.pass()) {
                err << "pdx-verify: section '" << s.name << "' failed: ";
                if (!s.error.empty()) {
                    err << s.error << "\n";
                } else {
                    err << "max deviation " << fmt(s.max_rel) << " > tolerance "
                        << fmt(s.tolerance) << "\n";
                }
            }
        }
        return kExitTolerance;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Propagators near step and delta potentials: exact lattice combinatorics, "
                 "closed continuum forms, and path-decomposition quadrature"};
    app.name("pdxprop");
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    std::string model_name = "free";
    double V = 0.0, a = 0.0, mass = 1.0, T = 1.0;

    auto* count = app.add_subcommand("count", "Catalan and central binomial counts");
    std::vector<unsigned> count_ns;
    count->add_option("--n", count_ns, "n values (repeatable)");

    auto* density = app.add_subcommand("density", "Lattice loop densities u(0,T|0,0)");
    std::vector<unsigned long> density_ns;
    unsigned enum_bound = lattice::kDefaultEnumerationBound;
    unsigned long transfer_bound = 20000;
    double agree_tol = 1e-9;
    density->add_option("--n", density_ns, "n values (repeatable)");
    density->add_option("--enum-bound", enum_bound, "exhaustive-enumeration bound on n");
    density->add_option("--transfer-bound", transfer_bound, "transfer-matrix bound on n");
    density->add_option("--agree-tol", agree_tol, "relative tolerance for agreement flags");

    auto* converge = app.add_subcommand("converge", "Continuum limit of u/(2 eta)");
    std::vector<unsigned long> converge_ns;
    converge->add_option("--n", converge_ns, "n sweep (repeatable, >= 2 values)");

    auto* verify = app.add_subcommand("pdx-verify", "Path-decomposition identity checks");
    std::vector<double> x0s{0.5, 1.0, 2.0};
    std::vector<double> x1s;
    std::vector<double> Ts{0.5, 1.0, 2.0};
    double tol_override = 0.0;
    int max_subdivisions = 400;
    double verify_a = 1.0;
    verify->add_option("--x0", x0s, "query grid x0 values (repeatable)");
    verify->add_option("--x1", x1s, "query grid x1 values (repeatable; default -x0)");
    verify->add_option("--T", Ts, "query grid T values (repeatable)");
    verify->add_option("--a", verify_a, "delta coupling for assembly checks");
    verify->add_option("--tol", tol_override, "override every section tolerance");
    verify->add_option("--max-subdivisions", max_subdivisions, "quadrature subdivision budget");

    for (auto* cmd : {count, density, converge}) {
        cmd->add_option("--out", out_path, "write output here (manifest alongside)");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    verify->add_option("--out", out_path, "write report here (manifest alongside)");
    verify->add_option("--format", format, "json")->check(CLI::IsMember({"csv", "json"}));
    for (auto* cmd : {density, converge}) {
        cmd->add_option("--model", model_name, "free, step, or delta")
            ->check(CLI::IsMember({"free", "step", "delta"}));
        cmd->add_option("--V", V, "step height");
        cmd->add_option("--a", a, "delta coupling");
    }
    for (auto* cmd : {density, converge, verify}) {
        cmd->add_option("--mass", mass, "particle mass");
    }
    for (auto* cmd : {density, converge}) {
        cmd->add_option("--T", T, "total time");
    }

    std::vector<const char*> argv;
    argv.push_back("pdxprop");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        // pdx-verify defaults to json (csv is rejected inside).
        if (verify->parsed() && verify->count("--format") == 0) format = "json";
        if (count->parsed()) return run_count(count_ns, out_path, format, out);
        if (density->parsed()) {
            return run_density(model_name, V, a, mass, T, density_ns, enum_bound, transfer_bound,
                               agree_tol, out_path, format, out);
        }
        if (converge->parsed()) {
            return run_converge(model_name, V, a, mass, T, converge_ns, out_path, format, out);
        }
        return run_pdx_verify(x0s, x1s, Ts, mass, verify_a, tol_override, max_subdivisions,
                              out_path, format, out, err);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const quad::QuadratureError& e) {
        err << "pdxprop: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const std::exception& e) {
        err << "pdxprop: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace pdxprop::cli
