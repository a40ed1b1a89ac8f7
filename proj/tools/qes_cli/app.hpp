#pragma once

// Command-line front end. Exit codes:
//   0 ok, 1 usage / invalid parameters, 2 constraint violation or divergence,
//   3 I/O failure, 4 verification (self-test) failure.

#include "presets.hpp"

#include <qes/qes.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qes::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kConstraint = 2, kIo = 3, kSelfTest = 4 };

using nlohmann::ordered_json;

/// Shortest round-trip decimal representation.
inline std::string format_double(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

struct ParamFlags {
    std::string cls = "I";
    double k = 0.0;
    double b = 1.0;
    double tau = 0.0;
    std::optional<double> m;

    void attach(CLI::App& sub, bool required = true)
    {
        sub.add_option("--class", cls, "algebra class: I, II, III")->required(required);
        sub.add_option("--k", k, "representation label k > 1/2")->required(required);
        sub.add_option("--b", b, "coupling b in G");
        sub.add_option("--tau", tau, "effective radial parameter tau")->required(required);
        sub.add_option("--m", m, "J_0 eigenvalue (default k)");
    }

    QesParams to_params() const
    {
        auto const c = parse_algebra_class(cls);
        if (!c || *c == AlgebraClass::II_MINUS) {
            throw ParameterError("unknown class '" + cls + "' (expected I, II or III)");
        }
        QesParams p{*c, k, b, tau, m};
        require_qes_class(p);
        return p;
    }
};

inline ordered_json tail_json(TailBehavior const& t)
{
    ordered_json j;
    j["power"] = t.power;
    j["prefactor"] = t.prefactor;
    j["saturating_exponential"] = t.saturating_exponential;
    return j;
}

inline ordered_json report_json(QesParams const& p, AdmissibilityReport const& r)
{
    ordered_json j;
    j["class"] = std::string(to_string(p.cls));
    j["k"] = p.k;
    j["b"] = p.b;
    j["tau"] = p.tau;
    j["paper_regular"] = r.paper_regular;
    j["l2_normalizable"] = r.l2_normalizable;
    j["weighted_l2_normalizable"] = r.weighted_l2_normalizable;
    j["violated"] = r.violated_constraints;
    j["exponent_at_zero"] = r.exponent_at_zero;
    j["behavior_at_inf"] = tail_json(r.behavior_at_inf);
    return j;
}

inline void write_json(std::ostream& out, ordered_json const& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// validate

inline int cmd_validate(ParamFlags const& flags, std::ostream& out)
{
    auto const p = flags.to_params();
    auto const rep = admissibility(p);
    write_json(out, report_json(p, rep));
    return rep.paper_regular ? kOk : kConstraint;
}

// ---------------------------------------------------------------------------
// table

struct TableFlags {
    std::string quantity = "density";
    double rho_min = 1e-2;
    double rho_max = 1e2;
    int points = 200;
    std::string spacing = "log";
    std::string format = "csv";
    std::string output;
    std::string preset;
    std::string convention = "chain";
};

struct TableSpec {
    Quantity quantity = Quantity::density;
    double rho_min = 1e-2;
    double rho_max = 1e2;
    int points = 200;
    Spacing spacing = Spacing::log;
    bool json = false;
};

inline void check_table_spec(TableSpec const& s)
{
    if (!(s.rho_min > 0.0)) throw ParameterError("rho-min must be positive");
    if (!(s.rho_min < s.rho_max)) throw ParameterError("rho-min must be below rho-max");
    if (s.points < 2) throw ParameterError("points must be at least 2");
}

inline std::vector<double> table_grid(TableSpec const& s)
{
    auto const n = static_cast<std::size_t>(s.points);
    return s.spacing == Spacing::log ? logspace(s.rho_min, s.rho_max, n) : linspace(s.rho_min, s.rho_max, n);
}

inline double evaluate_quantity(Quantity q, QesParams const& p, double rho, Convention conv)
{
    switch (q) {
    case Quantity::potential: return potential(p, rho, conv);
    case Quantity::wavefunction: return wavefunction(p, rho);
    case Quantity::density: return density(p, rho);
    }
    return 0.0;
}

/// Writes the table; deterministic for fixed inputs.
inline void write_table(std::ostream& out, TableSpec const& spec, QesParams const& p, Convention conv)
{
    auto const grid = table_grid(spec);
    auto const name = std::string(to_string(spec.quantity));
    if (spec.json) {
        ordered_json rows = ordered_json::array();
        for (double rho : grid) {
            rows.push_back({{"rho", rho}, {name, evaluate_quantity(spec.quantity, p, rho, conv)}});
        }
        ordered_json j;
        j["quantity"] = name;
        j["class"] = std::string(to_string(p.cls));
        j["k"] = p.k;
        j["b"] = p.b;
        j["tau"] = p.tau;
        j["rows"] = std::move(rows);
        write_json(out, j);
        return;
    }
    out << "rho," << name << '\n';
    for (double rho : grid) {
        out << format_double(rho) << ',' << format_double(evaluate_quantity(spec.quantity, p, rho, conv)) << '\n';
    }
}

inline std::optional<Convention> parse_convention(std::string const& s)
{
    if (s == "chain" || s == "C_chain") return Convention::chain;
    if (s == "paper" || s == "C_paper") return Convention::paper;
    return std::nullopt;
}

inline int emit(std::string const& path, std::ostream& out, std::ostream& err,
                std::function<void(std::ostream&)> const& writer)
{
    if (path.empty() || path == "-") {
        writer(out);
        return kOk;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return kIo;
    }
    writer(file);
    file.flush();
    if (!file) {
        err << "error: write to '" << path << "' failed\n";
        return kIo;
    }
    return kOk;
}

inline int cmd_table(ParamFlags const& flags, TableFlags const& tf, bool params_given, std::ostream& out,
                     std::ostream& err)
{
    TableSpec spec;
    QesParams p;
    if (!tf.preset.empty()) {
        auto const preset = find_preset(tf.preset);
        if (!preset) throw ParameterError("unknown preset '" + tf.preset + "'");
        p = preset->params;
        spec = {preset->quantity, preset->rho_min, preset->rho_max, preset->points, preset->spacing, tf.format == "json"};
    } else {
        if (!params_given) throw ParameterError("table needs --class, --k and --tau (or --preset)");
        p = flags.to_params();
        Quantity q = Quantity::density;
        if (tf.quantity == "potential") q = Quantity::potential;
        else if (tf.quantity == "wavefunction") q = Quantity::wavefunction;
        else if (tf.quantity != "density") throw ParameterError("unknown quantity '" + tf.quantity + "'");
        spec = {q, tf.rho_min, tf.rho_max, tf.points, tf.spacing == "linear" ? Spacing::linear : Spacing::log,
                tf.format == "json"};
    }
    check_table_spec(spec);
    auto const conv = parse_convention(tf.convention);
    if (!conv) throw ParameterError("unknown convention '" + tf.convention + "'");

    if (spec.quantity != Quantity::potential && p.m && *p.m != p.k) {
        err << "error: wavefunctions are defined for m = k only (got m = " << *p.m << ", k = " << p.k << ")\n";
        return kConstraint;
    }
    // Evaluate into a buffer first so a domain error never leaves a half-written file.
    std::ostringstream buffer;
    write_table(buffer, spec, p, *conv);
    return emit(tf.output, out, err, [&](std::ostream& o) { o << buffer.str(); });
}

// ---------------------------------------------------------------------------
// normalize

inline ordered_json normalization_json(quad::NormalizationResult const& n)
{
    ordered_json j;
    j["verdict"] = std::string(quad::to_string(n.verdict));
    j["divergence"] = std::string(quad::to_string(n.divergence));
    j["alpha"] = n.alpha;
    j["origin_power"] = n.origin_power;
    if (n.divergence == quad::Divergence::at_infinity) {
        j["message"] = "diverges (alpha = " + format_double(n.alpha) + " <= 1)";
    } else if (n.divergence == quad::Divergence::at_origin) {
        j["message"] = "diverges at the origin (integrand ~ rho^" + format_double(n.origin_power) + ", power <= -1)";
    }
    if (n.integral) {
        j["value"] = n.integral->value;
        j["abs_error_estimate"] = n.integral->abs_error_estimate;
        j["subdivisions"] = n.integral->subdivisions;
        j["rel_tol_used"] = n.integral->rel_tol_used;
        j["downgraded_tolerance"] = n.downgraded;
    }
    return j;
}

inline int cmd_normalize(ParamFlags const& flags, double tol, std::string const& measure, std::ostream& out)
{
    auto const p = flags.to_params();
    require_m_equals_k(p);
    if (measure != "flat" && measure != "weighted") throw ParameterError("measure must be flat or weighted");
    quad::Options opt;
    opt.rel_tol = tol;

    auto const flat = quad::normalization(p, opt, quad::Measure::flat);
    ordered_json j;
    j["class"] = std::string(to_string(p.cls));
    j["k"] = p.k;
    j["b"] = p.b;
    j["tau"] = p.tau;
    j["measure"] = "flat";
    j.update(normalization_json(flat));
    if (measure == "weighted") {
        j["weighted"] = normalization_json(quad::normalization(p, opt, quad::Measure::weighted));
    }
    write_json(out, j);
    return flat.verdict == quad::Verdict::converges ? kOk : kConstraint;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOutcome {
    ordered_json report;
    bool passed = false;
};

inline VerifyOutcome verify_one(QesParams const& p, double perturbation)
{
    auto const grid = verify::standard_grid();
    auto const cal = verify::convention_calibrate(p, grid);
    auto const scan = verify::residual_scan(p, grid, cal.best, verify::kResidualThreshold, perturbation);
    auto const diff = verify::closed_vs_algebra_diff(p, verify::comparison_grid(), cal.best);
    auto const adm = admissibility(p);
    bool const passed = scan.passed && !cal.ambiguous && diff.max_rel_diff <= verify::kResidualThreshold;

    ordered_json j;
    j["class"] = std::string(to_string(p.cls));
    j["k"] = p.k;
    j["b"] = p.b;
    j["tau"] = p.tau;
    j["convention"] = std::string(to_string(cal.best));
    j["max_residual"] = scan.max_abs_relative_residual;
    j["argmax_rho"] = scan.argmax_rho;
    j["passed"] = passed;
    j["tool_version"] = kToolVersion;
    j["paper_regular"] = adm.paper_regular;
    j["l2_normalizable"] = adm.l2_normalizable;
    j["violated"] = adm.violated_constraints;
    return {std::move(j), passed};
}

inline int cmd_verify(ParamFlags const& flags, bool all, bool params_given, double perturbation, std::ostream& out)
{
    std::vector<QesParams> sets;
    if (all) {
        sets = verify::acceptance_parameter_sets();
    } else {
        if (!params_given) throw ParameterError("verify needs --all or --class/--k/--tau");
        sets.push_back(flags.to_params());
    }
    ordered_json reports = ordered_json::array();
    bool ok = true;
    for (auto const& p : sets) {
        auto r = verify_one(p, perturbation);
        ok = ok && r.passed;
        reports.push_back(std::move(r.report));
    }
    write_json(out, reports);
    return ok ? kOk : kSelfTest;
}

// ---------------------------------------------------------------------------
// tcs

struct TcsFlags {
    int N = 2;
    double lambda = 1.0;
    int r = 1;
    int s = 0;
    double omega = 1.0;
    double k = 1.0;
    double b = 1.0;
};

inline int cmd_tcs(TcsFlags const& f, std::ostream& out)
{
    tcs::TcsParams const t{f.N, f.lambda, f.r, f.s, f.omega};
    auto const res = tcs::classify(t, f.k, f.b);
    ordered_json j;
    j["N"] = f.N;
    j["lambda"] = f.lambda;
    j["r"] = f.r;
    j["s"] = f.s;
    j["tau"] = res.tau;
    switch (tcs::interaction_kind(f.lambda)) {
    case tcs::Interaction::attractive: j["interaction"] = "attractive"; break;
    case tcs::Interaction::repulsive: j["interaction"] = "repulsive"; break;
    case tcs::Interaction::other: j["interaction"] = "untagged"; break;
    }
    ordered_json classes = ordered_json::array();
    for (std::size_t i = 0; i < res.reports.size(); ++i) {
        classes.push_back(report_json(QesParams{tcs::kQesClasses[i], f.k, f.b, res.tau, {}}, res.reports[i]));
    }
    j["classes"] = std::move(classes);
    write_json(out, j);
    return kOk;
}

// ---------------------------------------------------------------------------
// figures

inline int cmd_figures(std::string const& out_dir, std::ostream& out, std::ostream& err)
{
    if (out_dir.empty()) {
        for (auto const& p : figure_presets()) {
            out << p.name << '\t' << p.description << '\n';
        }
        return kOk;
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        err << "error: cannot create '" << out_dir << "': " << ec.message() << '\n';
        return kIo;
    }
    for (auto const& p : figure_presets()) {
        TableSpec const spec{p.quantity, p.rho_min, p.rho_max, p.points, p.spacing, false};
        auto const path = (std::filesystem::path(out_dir) / (std::string(p.name) + ".csv")).string();
        std::ostringstream buffer;
        write_table(buffer, spec, p.params, Convention::chain);
        if (int rc = emit(path, out, err, [&](std::ostream& o) { o << buffer.str(); }); rc != kOk) {
            return rc;
        }
        out << path << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------

/// Entry point shared by main() and the tests.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zero-energy QES potentials of the extended truncated Calogero-Sutherland model", "qes"};
    app.require_subcommand(1);

    ParamFlags pf;

    auto* validate = app.add_subcommand("validate", "check the per-class parameter constraints");
    pf.attach(*validate);

    TableFlags tf;
    ParamFlags table_pf;
    auto* table = app.add_subcommand("table", "emit a potential / wavefunction / density table");
    table_pf.attach(*table, false);
    table->add_option("--quantity", tf.quantity, "potential, wavefunction or density");
    table->add_option("--rho-min", tf.rho_min);
    table->add_option("--rho-max", tf.rho_max);
    table->add_option("--points", tf.points);
    table->add_option("--spacing", tf.spacing)->check(CLI::IsMember({"linear", "log"}));
    table->add_option("--format", tf.format)->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--output,-o", tf.output, "output file (default stdout)");
    table->add_option("--preset", tf.preset, "figure preset name (see `figures`)");
    table->add_option("--convention", tf.convention, "chain or paper");

    ParamFlags norm_pf;
    double tol = 1e-10;
    std::string measure = "flat";
    auto* normalize = app.add_subcommand("normalize", "normalization integral of |psi|^2 on (0, inf)");
    norm_pf.attach(*normalize);
    normalize->add_option("--tol", tol, "relative tolerance");
    normalize->add_option("--measure", measure, "flat, or weighted to add the rho^tau diagnostic")
        ->check(CLI::IsMember({"flat", "weighted"}));

    ParamFlags ver_pf;
    bool all = false;
    double perturb = 0.0;
    auto* verify_cmd = app.add_subcommand("verify", "residual and derivation-chain checks");
    ver_pf.attach(*verify_cmd, false);
    verify_cmd->add_flag("--all", all, "run the built-in acceptance parameter sets");
    verify_cmd->add_option("--perturb-potential", perturb, "add c/rho^2 to V (sensitivity self-test)");

    TcsFlags tcsf;
    auto* tcs_cmd = app.add_subcommand("tcs", "map TCS parameters to tau and classify");
    tcs_cmd->add_option("--N", tcsf.N)->required();
    tcs_cmd->add_option("--lambda", tcsf.lambda)->required();
    tcs_cmd->add_option("--r", tcsf.r)->required();
    tcs_cmd->add_option("--s", tcsf.s);
    tcs_cmd->add_option("--omega", tcsf.omega);
    tcs_cmd->add_option("--k", tcsf.k)->required();
    tcs_cmd->add_option("--b", tcsf.b);

    std::string out_dir;
    auto* figures = app.add_subcommand("figures", "list figure presets, or write them all as CSV");
    figures->add_option("--out-dir", out_dir, "directory for the preset CSV files");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return kOk;
    } catch (CLI::ParseError const& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kUsage;
    }

    auto given = [](CLI::App* sub) {
        return sub->count("--class") > 0 && sub->count("--k") > 0 && sub->count("--tau") > 0;
    };

    try {
        if (*validate) return cmd_validate(pf, out);
        if (*table) return cmd_table(table_pf, tf, given(table), out, err);
        if (*normalize) return cmd_normalize(norm_pf, tol, measure, out);
        if (*verify_cmd) return cmd_verify(ver_pf, all, given(verify_cmd), perturb, out);
        if (*tcs_cmd) return cmd_tcs(tcsf, out);
        if (*figures) return cmd_figures(out_dir, out, err);
    } catch (ParameterError const& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (DomainError const& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (CalibrationError const& e) {
        err << "verification failed: " << e.what() << '\n';
        return kSelfTest;
    } catch (InconsistencyError const& e) {
        err << "verification failed: " << e.what() << '\n';
        return kSelfTest;
    }
    return kUsage;
}

} // namespace qes::cli
