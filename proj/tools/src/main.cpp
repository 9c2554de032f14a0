#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "caloron/coefficients.hpp"
#include "caloron/errors.hpp"
#include "caloron/gauge.hpp"
#include "caloron/holonomy.hpp"
#include "caloron/invariants.hpp"
#include "caloron/json_io.hpp"
#include "caloron/ktheory.hpp"
#include "caloron/loop.hpp"
#include "caloron/suite.hpp"

// Batch front end. Exit codes: 0 success, 1 at least one suite check failed,
// 2 input could not be used (config, schema, or invariant violations).

namespace {

using namespace caloron;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Empty path means stdout.
void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot open output file: " + path);
    out << text;
}

std::string axes_key(const AxisSet& axes) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < axes.size(); ++i) {
        if (i) os << '<';
        os << axes[i];
    }
    os << ')';
    return os.str();
}

/// Periods are reported for plain scalar forms of positive degree; the
/// nearest-integer distance is the number the period tests quote.
json summarize_form(FILE* human, const std::string& label, const MatrixForm& w) {
    json s;
    s["degree"] = w.degree();
    s["max_abs"] = w.max_abs();
    std::fprintf(human, "%s: degree %d form, rank %d%s, max |entry| = %.12g\n",
                 label.c_str(), w.degree(), w.rank(),
                 w.loop_samples() > 0
                     ? (", " + std::to_string(w.loop_samples()) + " loop samples").c_str()
                     : "",
                 w.max_abs());
    if (w.degree() >= 1 && w.rank() == 1 && w.loop_samples() == 0) {
        json periods = json::object();
        for (const auto& [axes, value] : circle_periods(w)) {
            periods[axes_key(axes)] = {value.real(), value.imag()};
            const double dist =
                std::abs(value.real() - std::nearbyint(value.real())) + std::abs(value.imag());
            std::fprintf(human, "  period %-10s = %+.12f %+.12fi   (distance to Z: %.3e)\n",
                         axes_key(axes).c_str(), value.real(), value.imag(), dist);
        }
        s["periods"] = periods;
    }
    return s;
}

json summarize_graded(FILE* human, const std::string& label, const GradedForm& g) {
    json parts = json::object();
    for (const auto& [deg, part] : g)
        parts[std::to_string(deg)] = summarize_form(human, label + "[" + std::to_string(deg) + "]", part);
    return parts;
}

struct ComputeArgs {
    std::string kind;
    std::string input;
    std::string to;
    std::string output;
    int k = 1;
    int t_nodes = 16;
    double tol_int = 1e-6;
    HolonomyOptions hol;
};

GaugePair load_pair(const std::string& path) {
    GaugePair p = gauge_pair_from_json(read_file(path));
    check_gauge_pair(p);
    return p;
}

int compute_invariant(const ComputeArgs& a) {
    // Human-readable summary goes wherever the JSON does not.
    FILE* human = a.output.empty() ? stderr : stdout;
    json doc;
    doc["kind"] = a.kind;

    if (a.kind == "winding") {
        const SampledLoop loop = loop_from_json(read_file(a.input));
        const WindingResult w = winding_number(loop, a.tol_int);
        doc["winding"] = w.winding;
        doc["raw"] = w.raw;
        doc["distance"] = w.distance;
        std::fprintf(human, "winding = %lld   (raw %.12g, distance to Z %.3e)\n", w.winding,
                     w.raw, w.distance);
    } else if (a.kind == "string-form") {
        const GaugePair p = load_pair(a.input);
        const MatrixForm s = string_form(SymTrace{a.k}, p);
        doc["k"] = a.k;
        doc["result"] = json::parse(to_json(s));
        doc["summary"] = summarize_form(human, "string form", s);
    } else if (a.kind == "string-potential") {
        const GaugePair p = load_pair(a.input);
        doc["k"] = a.k;
        if (a.to.empty()) {
            const MatrixForm s = string_potential_total(SymTrace{a.k}, p);
            doc["mode"] = "total";
            doc["result"] = json::parse(to_json(s));
            doc["summary"] = summarize_form(human, "total string potential", s);
        } else {
            const GaugePair q = load_pair(a.to);
            const MatrixForm s =
                string_potential_relative(SymTrace{a.k}, SmoothPath::affine(p, q), a.t_nodes);
            doc["mode"] = "relative";
            doc["result"] = json::parse(to_json(s));
            doc["summary"] = summarize_form(human, "relative string potential", s);
        }
    } else if (a.kind == "odd-ch") {
        const GroupMap g = group_map_from_json(read_file(a.input));
        const GradedForm ch = odd_chern_character(g);
        doc["result"] = json::parse(to_json(ch));
        doc["summary"] = summarize_graded(human, "odd character", ch);
    } else if (a.kind == "even-ch") {
        const MatrixForm conn = form_from_json(read_file(a.input));
        const GradedForm ch = chern_character_even(conn);
        doc["result"] = json::parse(to_json(ch));
        doc["summary"] = summarize_graded(human, "even character", ch);
    } else if (a.kind == "cs") {
        const MatrixForm conn = form_from_json(read_file(a.input));
        if (conn.degree() != 1)
            throw ValidationError("cs expects a degree-1 connection form");
        const MatrixForm cs = chern_simons_total(SymTrace{a.k}, conn);
        doc["k"] = a.k;
        doc["result"] = json::parse(to_json(cs));
        doc["summary"] = summarize_form(human, "Chern-Simons form", cs);
    } else if (a.kind == "tau") {
        const rational pre = tau_prefactor(a.k);
        std::ostringstream os;
        os << pre;
        doc["k"] = a.k;
        doc["prefactor"] = os.str();
        std::fprintf(human, "transgression prefactor (k = %d): %s\n", a.k, os.str().c_str());
        if (!a.input.empty()) {
            const GroupMap g = group_map_from_json(read_file(a.input));
            const MatrixForm tau = transgression_pullback(SymTrace{a.k}, g);
            doc["result"] = json::parse(to_json(tau));
            doc["summary"] = summarize_form(human, "pulled-back transgression form", tau);
        }
    } else if (a.kind == "holonomy") {
        const GaugePair p = load_pair(a.input);
        const HolonomyResult hol = higgs_holonomy(p.higgs, p.spec, a.hol);
        doc["hol"] = json::parse(to_json(hol.hol));
        doc["max_error_estimate"] = hol.max_error_estimate;
        doc["re_unitarized"] = hol.re_unitarized;
        doc["max_unitary_defect"] = hol.max_unitary_defect;
        std::fprintf(human,
                     "holonomy endpoints over %ld grid points\n"
                     "  step-halving error estimate = %.3e\n"
                     "  re-unitarization %s, unitary defect = %.3e\n",
                     p.higgs.mesh().total_points(), hol.max_error_estimate,
                     hol.re_unitarized ? "ran" : "off", hol.max_unitary_defect);
    } else if (a.kind == "degree1-character") {
        const GaugePair p = load_pair(a.input);
        const std::vector<double> vals = degree1_character(p.higgs);
        doc["values"] = vals;
        double lo = vals.empty() ? 0.0 : vals.front();
        double hi = lo;
        for (double v : vals) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        std::fprintf(human,
                     "degree-1 character on %zu grid points, values in [-1/2, 1/2): "
                     "min %.12g, max %.12g\n",
                     vals.size(), lo, hi);
    } else if (a.kind == "twz-curvature") {
        const TwzElement e = twz_element_from_json(read_file(a.input));
        const GradedForm curv = twz_curvature(e);
        doc["result"] = json::parse(to_json(curv));
        doc["summary"] = summarize_graded(human, "curvature", curv);
        for (const std::string& note : e.notes)
            std::fprintf(human, "  note: %s\n", note.c_str());
    } else {
        throw ValidationError("unknown invariant kind: " + a.kind);
    }

    write_text(a.output, doc.dump(2) + "\n");
    return 0;
}

int run_suite(const ScenarioConfig& cfg, int jobs, const std::string& report_path) {
    const std::vector<CheckRecord> records = run_scenarios(cfg, jobs);
    const std::string text =
        cfg.output == "csv" ? report_csv(records) : report_json(cfg, records);
    write_text(report_path, text);
    if (all_passed(records)) return 0;
    int failed = 0;
    for (const CheckRecord& r : records) failed += r.pass ? 0 : 1;
    std::fprintf(stderr, "%d of %zu checks failed\n", failed, records.size());
    return 1;
}

/// Exceptions become a machine-readable failure report on the same stream
/// the real report would have used, and exit status 2.
int fail_report(const std::string& dest, const std::string& type, const std::string& what) {
    json err;
    err["error"] = {{"type", type}, {"what", what}};
    try {
        write_text(dest, err.dump(2) + "\n");
    } catch (const std::exception&) {
        std::fprintf(stderr, "%s\n", err.dump(2).c_str());
    }
    std::fprintf(stderr, "error (%s): %s\n", type.c_str(), what.c_str());
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"caloron: verify and compute loop-group characteristic-form identities"};
    app.require_subcommand(1);

    ScenarioConfig cfg;
    int jobs = 1;
    bool list_only = false;
    std::string report_path;

    CLI::App* run = app.add_subcommand("run-suite", "Run the identity verification suite");
    run->add_option("--scenario", cfg.scenario, "Scenario name, or \"all\"")
        ->capture_default_str();
    run->add_option("--grid", cfg.grid,
                    "Base-torus samples per axis (1-4 axes, powers of two in [16,1024])")
        ->delimiter(',')
        ->capture_default_str();
    run->add_option("--theta-samples", cfg.theta_samples, "Loop samples N")
        ->capture_default_str();
    run->add_option("--rank", cfg.rank_n, "Matrix rank n")->capture_default_str();
    run->add_option("--tol", cfg.tol_scale, "Scale factor applied to every tolerance")
        ->capture_default_str();
    run->add_option("--truncate", cfg.truncate,
                    "Skip checks above this form degree (-1 = no truncation)")
        ->capture_default_str();
    run->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    run->add_option("--output", cfg.output, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    run->add_option("--jobs", jobs, "Scenario-level parallelism")->capture_default_str();
    run->add_flag("--timings", cfg.timings,
                  "Record wall-clock times (makes reports non-reproducible)");
    run->add_flag("--list", list_only, "Print the scenario registry and exit");
    run->add_option("--report", report_path, "Write the report to this file instead of stdout");

    ComputeArgs ca;
    CLI::App* comp =
        app.add_subcommand("compute-invariant", "Evaluate one invariant on stored data");
    comp->add_option("kind", ca.kind, "One of: winding, string-form, string-potential, "
                                      "odd-ch, even-ch, cs, tau, holonomy, "
                                      "degree1-character, twz-curvature")
        ->required();
    comp->add_option("--input", ca.input, "Input JSON file (schema depends on the kind)");
    comp->add_option("--to", ca.to,
                     "Second gauge-pair file; string-potential then integrates along the "
                     "affine path instead of reporting the total potential");
    comp->add_option("-k,--degree", ca.k, "Trace degree k")->capture_default_str();
    comp->add_option("--t-nodes", ca.t_nodes, "Gauss-Legendre nodes on the path parameter")
        ->capture_default_str();
    comp->add_option("--tol-int", ca.tol_int, "Integrality tolerance for winding")
        ->capture_default_str();
    comp->add_option("--steps", ca.hol.steps, "Holonomy RK4 steps")->capture_default_str();
    comp->add_flag("--re-unitarize", ca.hol.re_unitarize,
                   "Project holonomy steps back onto the group (always reported)");
    comp->add_option("--richardson-tol", ca.hol.richardson_tol,
                     "Holonomy step-halving error budget")
        ->capture_default_str();
    comp->add_option("--output", ca.output, "Write the result JSON here instead of stdout");

    int table_k_max = 10;
    std::string table_path;
    CLI::App* table =
        app.add_subcommand("coefficient-table", "Emit the exact coefficient tables as CSV");
    table->add_option("--k-max", table_k_max, "Largest trace degree tabulated")
        ->capture_default_str();
    table->add_option("--output", table_path, "Write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string dest = run->parsed() ? report_path : (comp->parsed() ? ca.output : table_path);
    try {
        if (run->parsed()) {
            if (list_only) {
                for (const std::string& name : scenario_names())
                    std::printf("%s\n", name.c_str());
                return 0;
            }
            return run_suite(cfg, jobs, report_path);
        }
        if (comp->parsed()) return compute_invariant(ca);
        check_coefficient_tables(table_k_max);
        write_text(table_path, coefficient_table_csv(table_k_max));
        return 0;
    } catch (const SchemaError& e) {
        return fail_report(dest, "schema", e.what());
    } catch (const ValidationError& e) {
        return fail_report(dest, "validation", e.what());
    } catch (const Error& e) {
        return fail_report(dest, "validation", e.what());
    } catch (const std::exception& e) {
        return fail_report(dest, "internal", e.what());
    }
}
