#include "ddeq/cli.hpp"

#include "ddeq/charroots.hpp"
#include "ddeq/closedform.hpp"
#include "ddeq/operators.hpp"
#include "ddeq/sn_table.hpp"
#include "ddeq/steps.hpp"
#include "ddeq/triangular.hpp"
#include "ddeq/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ddeq {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

/// Reads a JSON object as CLI11 configuration. Top-level keys set options of
/// the main program; nested objects address subcommands, e.g.
/// {"solve": {"h": "x^2", "span": 4}}.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        json j = json::object();
        for (const CLI::Option* opt : app->get_options()) {
            if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
            const std::string& name = opt->get_lnames().front();
            if (opt->count() > 0)
                j[name] = opt->results().size() == 1 ? json(opt->results().front()) : json(opt->results());
            else if (default_also && !opt->get_default_str().empty())
                j[name] = opt->get_default_str();
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what(), CLI::ExitCodes::ConfigError);
        }
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object", CLI::ExitCodes::ConfigError);
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void flatten(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                flatten(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array())
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            else
                item.inputs.push_back(scalar(value));
            items.push_back(std::move(item));
        }
    }
};

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string e3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct Globals {
    std::string config_file;
    std::string out_dir;
    bool json_output = false;
};

/// Everything one command produces.
struct Outcome {
    std::string command;
    json config = json::object();
    json result = json::object();
    std::vector<std::pair<std::string, std::string>> files;  // name, content
    std::string text;       // stdout when neither --json nor --out is given
    std::string out_text;   // stdout when --out is given (defaults to text)
    int code = kExitOk;
};

int finish(const Globals& g, Outcome o, std::ostream& out, std::ostream& err) {
    json config = std::move(o.config);
    config["config"] = g.config_file.empty() ? json(nullptr) : json(g.config_file);
    config["out"] = g.out_dir.empty() ? json(nullptr) : json(g.out_dir);
    config["json"] = g.json_output;
    json header{{"tool", "ddeq"}, {"version", kVersion}, {"command", o.command}, {"config", config}};

    if (!g.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(g.out_dir, ec);
        if (ec) {
            err << "error: cannot create output directory '" << g.out_dir << "': " << ec.message() << "\n";
            return kExitError;
        }
        auto write = [&](const std::string& name, const std::string& content) {
            std::ofstream f(std::filesystem::path(g.out_dir) / name, std::ios::binary);
            f << content;
            if (!f) throw std::runtime_error("cannot write " + name);
        };
        try {
            write("run.json", header.dump(2) + "\n");
            for (const auto& [name, content] : o.files) write(name, content);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitError;
        }
    }

    if (g.json_output)
        out << json{{"run", header}, {"result", o.result}}.dump(2) << "\n";
    else if (!g.out_dir.empty())
        out << (o.out_text.empty() ? o.text : o.out_text);
    else
        out << o.text;
    return o.code;
}

// ---------------------------------------------------------------- sn-table

struct SnTableArgs {
    int m_max = 10;
    bool compare = false;
};

Outcome cmd_sn_table(const SnTableArgs& a) {
    Outcome o;
    o.command = "sn-table";
    o.config = {{"m_max", a.m_max}, {"compare_reference", a.compare}};
    std::ostringstream text;
    json rows = json::array();
    for (int m = 1; m <= a.m_max; ++m) {
        Poly s = s_n(static_cast<unsigned>(m));
        rows.push_back({{"m", m}, {"poly", to_json(s)}, {"text", render(s)}});
        text << "m=" << m << ": " << render(s) << "\n";
    }
    o.result["rows"] = rows;
    if (a.compare) {
        auto diffs = compare_sn_table(a.m_max);
        int upto = std::min(a.m_max, static_cast<int>(reference_sn_table().size()));
        json list = json::array();
        text << "\ncomparison with the reference table (m = 1.." << upto << "): " << diffs.size()
             << (diffs.size() == 1 ? " discrepancy\n" : " discrepancies\n");
        for (const auto& d : diffs) {
            list.push_back({{"m", d.m}, {"power", d.power}, {"reference", to_string(d.reference)},
                            {"computed", to_string(d.computed)}});
            text << "  m=" << d.m << ", coefficient of x^" << d.power << ": reference " << to_string(d.reference)
                 << ", computed " << to_string(d.computed) << "\n";
        }
        o.result["comparison"] = {{"compared_up_to", upto}, {"discrepancies", list}};
    }
    o.text = text.str();
    o.files.emplace_back("sn_table.json", o.result.dump(2) + "\n");
    return o;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string h;
    std::optional<int> k;
    int span = 2;
    bool force = false;
    int samples = 201;
    std::string method = "stepwise";
};

std::string samples_csv(const PiecewiseSolution& sol, int n) {
    std::string csv = "x,y,residual\n";
    double lo = to_double(sol.lower()), hi = to_double(sol.upper());
    for (double x : linspace(lo, hi, n)) {
        csv += g17(x) + "," + g17(eval_solution(sol, x)) + ",";
        if (x - 0.5 >= lo && x + 0.5 <= hi) csv += g17(dde_residual(sol, x));
        csv += "\n";
    }
    return csv;
}

Outcome cmd_solve(const SolveArgs& a, std::ostream& err) {
    Outcome o;
    o.command = "solve";
    o.config = {{"h", a.h}, {"k", a.k ? json(*a.k) : json("unbounded")}, {"span", a.span},
                {"force", a.force}, {"samples", a.samples}, {"method", a.method}};

    InitialFunction h = InitialFunction::parse(a.h, a.k);
    AdmissibilityReport report = check_admissibility(h, admissibility_orders(h, a.span));
    if (!report.admissible()) {
        AdmissibilityError rejection(report);
        if (!a.force) {
            const auto& d = report.orders[static_cast<size_t>(*report.first_failure() - 1)];
            throw std::runtime_error(std::string(rejection.what()) + " [defect ~ " + e3(d.defect) +
                                     "]; rerun with --force to extend anyway");
        }
        err << "warning: " << rejection.what() << "; continuing because of --force\n";
        o.code = kExitFlagged;
    }

    PiecewiseSolution sol;
    if (a.method == "closed-form") {
        sol = closed_form_solution(h, a.span);
        sol.set_admissibility(report, !report.admissible());
    } else {
        sol = solve_ivp(h, a.span, true);
    }
    auto knots = knot_diagnostics(sol);

    json sol_json = to_json(sol);
    json knots_json = to_json(knots);
    json adm_json = to_json(report);
    o.result = {{"solution", sol_json}, {"knots", knots_json}, {"admissibility", adm_json}};
    o.files.emplace_back("solution.json", sol_json.dump(2) + "\n");
    o.files.emplace_back("samples.csv", samples_csv(sol, a.samples));
    o.files.emplace_back("knots.json", knots_json.dump(2) + "\n");
    o.files.emplace_back("admissibility.json", adm_json.dump(2) + "\n");

    std::ostringstream text;
    text << "h(x) = " << render(h.expr()) << "\n";
    text << "span " << a.span << ": segments " << sol.first_index() << ".." << sol.last_index() << " on ["
         << to_string(sol.lower()) << ", " << to_string(sol.upper()) << "] (" << to_string(sol.provenance()) << ")\n";
    text << "admissibility (orders 1.." << report.orders.size() << "): "
         << (report.admissible() ? "ok" : "FAILED at order " + std::to_string(*report.first_failure())) << "\n";
    for (const auto& [n, seg] : sol.segments())
        text << "  y_" << n << "(x) = " << render(seg.formula())
             << (seg.exact() ? "    [= " + render(*seg.exact()) + "]" : std::string()) << "\n";
    double worst = 0.0;
    for (const auto& k : knots) {
        text << "  knot " << to_string(k.knot) << ": value jump " << g17(k.value_jump) << ", derivative jump "
             << g17(k.derivative_jump) << "\n";
        worst = std::max(worst, std::abs(k.value_jump));
    }
    o.text = text.str();
    o.out_text = "wrote solution.json, samples.csv, knots.json, admissibility.json\nlargest knot value jump: " + g17(worst) +
                 "\n";
    return o;
}

// ---------------------------------------------------------------- roots

struct RootsArgs {
    std::vector<double> box{7, 8, 2, 3};
    int grid = 30;
    double tol = kRootTolerance;
};

Outcome cmd_roots(const RootsArgs& a) {
    Outcome o;
    o.command = "roots";
    o.config = {{"box", a.box}, {"grid", a.grid}, {"tol", a.tol}};
    Box box{a.box[0], a.box[1], a.box[2], a.box[3]};
    auto roots = scan_box(box, a.grid, a.tol);
    auto grid = linspace(-5, 5, 201);

    json list = json::array();
    std::ostringstream text;
    text << roots.size() << (roots.size() == 1 ? " root" : " roots") << " of sin(w) = w in [" << g17(box.x_min) << ", "
         << g17(box.x_max) << "] x [" << g17(box.y_min) << ", " << g17(box.y_max) << "]\n";
    for (const auto& r : roots) {
        ExpSolutionPair p = build_exp_solutions(r);
        double re = dde_residual_grid(p.real_part, grid) / std::max(1.0, max_abs_on_grid(p.real_part, grid));
        double im = dde_residual_grid(p.imag_part, grid) / std::max(1.0, max_abs_on_grid(p.imag_part, grid));
        auto [sa, sb] = real_system_residual(p.a, p.b);
        json entry = to_json(r);
        entry["real_part"] = render(p.real_part);
        entry["imag_part"] = render(p.imag_part);
        entry["dde_residual"] = {re, im};
        entry["system_residual"] = {sa, sb};
        list.push_back(std::move(entry));
        text << "  w = " << g17(r.w.real()) << " + " << g17(r.w.imag()) << "i  (z = " << g17(r.z.real()) << " + "
             << g17(r.z.imag()) << "i)  |sin w - w| = " << g4(r.residual) << "\n"
             << "    " << render(p.real_part) << "  scaled DDE residual " << g4(re) << "\n"
             << "    " << render(p.imag_part) << "  scaled DDE residual " << g4(im) << "\n";
    }
    o.result = list;
    o.files.emplace_back("roots.json", list.dump(2) + "\n");
    o.text = text.str();
    return o;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string file;
    int points = 101;
};

constexpr double kVerifyTolerance = 1e-9;

Outcome cmd_verify(const VerifyArgs& a) {
    Outcome o;
    o.command = "verify";
    o.config = {{"solution", a.file}, {"points", a.points}};

    std::ifstream in(a.file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open solution file '" + a.file + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("'" + a.file + "' is not valid JSON: " + e.what());
    }
    PiecewiseSolution sol = solution_from_json(doc);
    auto rows = residual_profile(sol, a.points);
    auto knots = knot_diagnostics(sol);

    double max_dde = 0, max_int = 0, max_jump = 0, scale = 1;
    for (const auto& r : rows) {
        max_dde = std::max(max_dde, std::abs(r.dde_residual));
        max_int = std::max(max_int, std::abs(r.integral_residual));
        scale = std::max(scale, std::abs(r.y));
    }
    for (const auto& k : knots) max_jump = std::max(max_jump, std::abs(k.value_jump));
    bool pass = max_dde <= kVerifyTolerance && max_int <= kVerifyTolerance * scale && max_jump <= kVerifyTolerance * scale;
    o.code = pass ? kExitOk : kExitFlagged;

    std::ostringstream csv;
    write_profile_csv(csv, rows);
    json summary{{"points", rows.size()},         {"max_dde_residual", max_dde}, {"max_integral_residual", max_int},
                 {"max_knot_value_jump", max_jump}, {"scale", scale},             {"tolerance", kVerifyTolerance},
                 {"pass", pass}};
    o.result = summary;
    o.files.emplace_back("profile.csv", csv.str());
    o.files.emplace_back("verify.json", summary.dump(2) + "\n");
    o.text = csv.str();
    o.out_text = "max |dde residual| = " + g17(max_dde) + "\nmax |integral residual| = " + g17(max_int) +
                 "\nmax |knot value jump| = " + g17(max_jump) + "\n" + (pass ? "PASS" : "FAIL") + "\n";
    return o;
}

// ---------------------------------------------------------------- opcheck

struct OpcheckArgs {
    int n_max = 15;
};

const std::vector<std::string>& battery() {
    static const std::vector<std::string> items = {
        "1", "x", "x^2", "1 + 2*x + 3*x^2", "x^3", "x^4 - x", "x^5 - 2*x^4 + x", "x^6 + 2*x^3 - x/3",
    };
    return items;
}

Outcome cmd_opcheck(const OpcheckArgs& a) {
    Outcome o;
    o.command = "opcheck";
    o.config = {{"n_max", a.n_max}};
    json items = json::array();
    std::ostringstream text;
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        all = all && ok;
        items.push_back({{"item", name}, {"pass", ok}});
        text << (ok ? "pass  " : "FAIL  ") << name << "\n";
    };
    for (int n = 1; n <= a.n_max; ++n) {
        OpPoly rec = fib_op_poly(n);
        record("G_" + std::to_string(n) + " recurrence = binomial sum: " + render(rec), rec == fib_op_poly_explicit(n));
    }
    for (const auto& text_h : battery()) {
        InitialFunction h = InitialFunction::parse(text_h);
        PiecewiseSolution stepwise = solve_ivp(h, 4, true);
        for (int n = -4; n <= 4; ++n) {
            if (n == 0 || n == -1) continue;
            SegmentFormula closed = closed_segment(n, h);
            record("closed form = stepwise, h = " + text_h + ", n = " + std::to_string(n),
                   closed.exact() && stepwise.segment(n).exact() && *closed.exact() == *stepwise.segment(n).exact());
        }
    }
    o.result = {{"items", items}, {"pass", all}};
    o.files.emplace_back("opcheck.json", o.result.dump(2) + "\n");
    o.text = text.str();
    o.code = all ? kExitOk : kExitFlagged;
    return o;
}

// ---------------------------------------------------------------- triangular

struct TriangularArgs {
    std::string parity = "even";
    int N = 8;
};

Outcome cmd_triangular(const TriangularArgs& a) {
    Outcome o;
    o.command = "triangular";
    o.config = {{"parity", a.parity}, {"N", a.N}};
    TriangularSystem sys = assemble_triangular(parse_parity(a.parity), a.N);
    o.result = to_json(sys);
    o.files.emplace_back("triangular.json", o.result.dump(2) + "\n");
    std::ostringstream text;
    text << to_string(sys.parity) << " system, N = " << sys.truncation << "\n";
    for (const auto& row : sys.rows) {
        text << "  k=" << row.k << ":";
        bool first = true;
        for (const auto& [i, c] : row.coeffs) {
            text << (first ? " " : " + ") << "(" << to_string(c) << ") a_" << i;
            first = false;
        }
        text << " = 0\n";
    }
    o.text = text.str();
    return o;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and numerical tools for the differential-difference equation y'(x) = y(x+1/2) - y(x-1/2)", "ddeq"};
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.set_config("--config", "", "JSON configuration file; command-line flags take precedence");
    app.add_option("--out", g.out_dir, "Directory for run.json and result files");
    app.add_flag("--json", g.json_output, "Print the run header and result as JSON");

    SnTableArgs sn;
    auto* sn_cmd = app.add_subcommand("sn-table", "Exact table of S_m = L x^m");
    sn_cmd->add_option("m_max,--m-max", sn.m_max, "Largest m (1..64)")->check(CLI::Range(1, 64))->capture_default_str();
    sn_cmd->add_flag("--compare-paper,--compare-reference", sn.compare, "Compare with the published table (m <= 10)");

    SolveArgs sv;
    auto* sv_cmd = app.add_subcommand("solve", "Method-of-steps solution from initial data on [-1/2, 1/2]");
    sv_cmd->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
    sv_cmd->add_option("--h", sv.h, "Initial function h(x)")->required();
    sv_cmd->add_option("--k", sv.k, "Declared smoothness order of h (default: unbounded)")->check(CLI::PositiveNumber);
    sv_cmd->add_option("--span", sv.span, "Extension steps on each side")->check(CLI::PositiveNumber)->capture_default_str();
    sv_cmd->add_flag("--force", sv.force, "Extend even when h is not admissible (exit code 2)");
    sv_cmd->add_option("--samples", sv.samples, "Points in samples.csv")->check(CLI::Range(2, 1000000))->capture_default_str();
    sv_cmd->add_option("--method", sv.method, "Segment construction")
        ->check(CLI::IsMember({"stepwise", "closed-form"}))
        ->capture_default_str();

    RootsArgs rt;
    auto* rt_cmd = app.add_subcommand("roots", "Roots of sin(w) = w in a box of the w-plane");
    rt_cmd->add_option("--box", rt.box, "x_min x_max y_min y_max")->expected(4)->capture_default_str();
    rt_cmd->add_option("--grid", rt.grid, "Seeds per side")->check(CLI::Range(2, 2000))->capture_default_str();
    rt_cmd->add_option("--tol", rt.tol, "Acceptance tolerance on |sin w - w|")->check(CLI::PositiveNumber)->capture_default_str();

    VerifyArgs vf;
    auto* vf_cmd = app.add_subcommand("verify", "Residual profile of a solution file");
    vf_cmd->add_option("solution,--solution", vf.file, "Solution JSON written by solve")->required();
    vf_cmd->add_option("--points", vf.points, "Grid points")->check(CLI::Range(2, 1000000))->capture_default_str();

    OpcheckArgs oc;
    auto* oc_cmd = app.add_subcommand("opcheck", "Check operator-polynomial identities and closed-form segments");
    oc_cmd->add_option("n_max,--n-max", oc.n_max, "Largest n")->check(CLI::Range(1, 200))->capture_default_str();

    TriangularArgs tr;
    auto* tr_cmd = app.add_subcommand("triangular", "Truncated triangular system for Taylor coefficients");
    tr_cmd->add_option("--parity", tr.parity, "even or odd")->check(CLI::IsMember({"even", "odd"}))->capture_default_str();
    tr_cmd->add_option("--N", tr.N, "Truncation order (>= 2)")->check(CLI::Range(2, 200))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }
    if (auto* cfg = app.get_config_ptr(); cfg && cfg->count() > 0) g.config_file = cfg->as<std::string>();

    try {
        if (rt_cmd->parsed() && (rt.box.size() != 4 || !(rt.box[0] <= rt.box[1]) || !(rt.box[2] <= rt.box[3]))) {
            err << "usage error: --box needs x_min <= x_max and y_min <= y_max\n";
            return kExitError;
        }
        Outcome o;
        if (sn_cmd->parsed()) o = cmd_sn_table(sn);
        else if (sv_cmd->parsed()) o = cmd_solve(sv, err);
        else if (rt_cmd->parsed()) o = cmd_roots(rt);
        else if (vf_cmd->parsed()) o = cmd_verify(vf);
        else if (oc_cmd->parsed()) o = cmd_opcheck(oc);
        else o = cmd_triangular(tr);
        return finish(g, std::move(o), out, err);
    } catch (const ParseError& e) {
        err << "error: cannot parse expression at offset " << e.offset() << ": " << e.what() << "\n";
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitError;
}

} // namespace ddeq
