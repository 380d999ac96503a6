#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liesurf/errors.hpp"
#include "liesurf/geometry.hpp"
#include "liesurf/io.hpp"
#include "liesurf/pde_lang.hpp"
#include "liesurf/symmetry.hpp"

using namespace liesurf;
using io::Json;

namespace {

struct Options {
    std::string pde;
    std::string field;
    int degree = 2;
    std::vector<std::string> params;
    std::vector<std::string> nonzero;
    std::string format = "json";
    std::string out;

    std::string group = "s3";
    std::string curve_a = "geodesic:dir=i";
    std::string curve_b = "geodesic:dir=j";
    int grid = 201;
    double step = 0.01;
    std::string in;
    std::string report;
};

Json tool_header() { return Json{{"name", "liesurf"}, {"version", LIESURF_VERSION}}; }

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) std::cout << text;
    else io::write_atomic(o.out, text);
}

std::map<std::string, Rational> parse_bindings(const std::vector<std::string>& items) {
    std::map<std::string, Rational> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("parameter binding '" + item + "' must be NAME=VALUE");
        const std::string name = item.substr(0, eq);
        ParseOptions numeric;
        numeric.parameters = std::set<std::string>{};
        numeric.allow_coefficient_functions = false;
        const auto value = parse_expression(item.substr(eq + 1), numeric).constant_value();
        if (!value) throw InputError("parameter " + name + " must be bound to a rational constant");
        if (!out.emplace(name, *value).second) throw InputError("parameter " + name + " bound twice");
    }
    return out;
}

PdeProblem load_pde(const Options& o) {
    if (o.pde.empty()) throw InputError("--pde is required");
    const Expression phi = parse_equation(o.pde);
    ParameterMap params;
    for (const auto& s : free_symbols(phi))
        if (s.kind() == SymbolKind::Parameter) params[s.name()] = ParameterInfo{};
    for (const auto& name : o.nonzero) {
        if (!params.contains(name)) throw InputError("--nonzero " + name + ": parameter does not occur in the PDE");
        params[name].nonzero = true;
    }
    PdeProblem p = PdeProblem::from_expression(phi, params);
    const auto bindings = parse_bindings(o.params);
    for (const auto& [name, value] : bindings)
        if (!params.contains(name)) throw InputError("--param " + name + ": parameter does not occur in the PDE");
    return bindings.empty() ? p : p.bind(bindings);
}

Json symmetry_config(const std::string& command, const Options& o) {
    Json c{{"command", "symmetry " + command}, {"pde", o.pde}};
    if (command == "verify") c["field"] = o.field;
    if (command == "solve") c["degree"] = o.degree;
    c["params"] = o.params;
    c["nonzero"] = o.nonzero;
    c["format"] = o.format;
    return c;
}

Json surface_config(const std::string& command, const Options& o) {
    Json c{{"command", "surface " + command}};
    if (command == "build") {
        c["group"] = o.group;
        c["curve_a"] = o.curve_a;
        c["curve_b"] = o.curve_b;
        c["grid"] = o.grid;
        c["step"] = o.step;
    } else {
        c["in"] = o.in;
    }
    c["format"] = o.format;
    return c;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (o.format == f) return;
    throw InputError("unsupported --format '" + o.format + "' for this command");
}

void run_derive(const Options& o) {
    require_format(o, {"json", "text"});
    const PdeProblem p = load_pde(o);
    const DeterminingSystem raw = determining_system(p);
    const ReducedSystem reduced = reduce(raw);
    const MaximalRankReport rank = maximal_rank_check(p);
    if (o.format == "text") {
        std::string t = "pde: " + p.solved_form() + "\nraw determining equations:\n";
        for (const auto& eq : raw.equations)
            t += "  [" + print_monomial(eq.monomial) + "] " + print_canonical(eq.coefficient) + " = 0\n";
        t += "forced zero:";
        for (const auto& s : reduced.forced_zero) t += " " + s.name();
        t += "\nreduced equations:\n";
        for (const auto& eq : reduced.equations)
            t += "  [" + print_monomial(eq.monomial) + "] " + print_canonical(eq.coefficient) + " = 0\n";
        if (rank.witness) t += "maximal rank witness: d/d" + rank.witness->name() + "\n";
        emit(o, t);
        return;
    }
    Json doc{{"tool", tool_header()}, {"config", symmetry_config("derive", o)}};
    doc["pde"] = print_canonical(p.phi());
    doc["solved_form"] = p.solved_form();
    doc["order"] = p.order();
    const Json system = io::determining_system_json(raw, reduced);
    doc["raw"] = system["raw"];
    doc["reduced"] = system["reduced"];
    doc["maximal_rank_witness"] = rank.witness ? Json(rank.witness->name()) : Json(nullptr);
    emit(o, io::dump(doc));
}

void run_verify(const Options& o) {
    require_format(o, {"json", "text"});
    if (o.field.empty()) throw InputError("--field is required");
    const PdeProblem p = load_pde(o);
    const VectorField v = parse_vector_field(o.field);
    const VerifyResult r = verify_generator(p, v);
    if (o.format == "text") {
        std::string t = std::string(r.holds ? "true" : "false") + "\nresidual: " + print_canonical(r.residual) + "\n";
        if (!r.holds_if_zero.empty()) {
            t += "holds if zero:";
            for (const auto& n : r.holds_if_zero) t += " " + n;
            t += "\n";
        }
        emit(o, t);
        return;
    }
    Json doc{{"tool", tool_header()}, {"config", symmetry_config("verify", o)}};
    doc["field"] = io::vector_field_json(v);
    doc["holds"] = r.holds;
    doc["residual"] = print_canonical(r.residual);
    doc["residual_tree"] = io::expression_tree(r.residual);
    doc["holds_if_zero"] = r.holds_if_zero;
    emit(o, io::dump(doc));
}

void run_solve(const Options& o) {
    require_format(o, {"json", "text"});
    const PdeProblem p = load_pde(o);
    const AnsatzSolution sol = solve_polynomial_ansatz(p, o.degree);
    if (o.format == "text") {
        std::string t = "dimension " + std::to_string(sol.dimension()) + "\n";
        for (const auto& v : sol.basis) t += print_vector_field(v) + "\n";
        emit(o, t);
        return;
    }
    Json basis = Json::array();
    for (const auto& v : sol.basis) basis.push_back(io::vector_field_json(v));
    Json doc{{"tool", tool_header()}, {"config", symmetry_config("solve", o)}};
    doc["pde"] = print_canonical(p.phi());
    doc["degree"] = sol.degree;
    doc["dimension"] = sol.dimension();
    doc["basis"] = basis;
    emit(o, io::dump(doc));
}

void run_kovalevskaya(const Options& o) {
    require_format(o, {"json", "text"});
    const PdeProblem p = load_pde(o);
    const PdeProblem k = kovalevskaya_transform(p);
    if (o.format == "text") {
        emit(o, k.solved_form() + "\n");
        return;
    }
    Json doc{{"tool", tool_header()}, {"config", symmetry_config("kovalevskaya", o)}};
    doc["input"] = p.solved_form();
    doc["change_of_variables"] = "x = t + s, y = t - s";
    doc["transformed"] = k.solved_form();
    doc["transformed_phi"] = print_canonical(k.phi());
    emit(o, io::dump(doc));
}

geom::TranslationSurface build_surface(const Options& o) {
    geom::Group group;
    if (o.group == "s3") group = geom::Group::Sphere3;
    else if (o.group == "r3") group = geom::Group::Euclidean;
    else throw InputError("--group must be s3 or r3");
    if (o.grid < 3) throw InputError("--grid must be at least 3");
    if (!(o.step > 0)) throw InputError("--step must be positive");
    const geom::CurveSpec a = geom::parse_curve_spec(o.curve_a);
    const geom::CurveSpec b = geom::parse_curve_spec(o.curve_b);
    if (geom::curve_group(a) != group || geom::curve_group(b) != group)
        throw InputError("curve kinds do not match --group " + o.group);
    const geom::ParamGrid grid = geom::ParamGrid::centered_nodes(o.grid, o.step);
    return geom::translation_surface(geom::build_curve(a, grid, false), geom::build_curve(b, grid, true));
}

void print_warnings(const geom::TranslationSurface& surf) {
    for (const auto& w : surf.warnings) std::cerr << "warning: " << w << "\n";
}

void run_surface_build(const Options& o) {
    require_format(o, {"json", "csv"});
    const geom::TranslationSurface surf = build_surface(o);
    print_warnings(surf);
    if (o.format == "csv") {
        emit(o, io::surface_csv(surf, geom::curvature_report(surf)));
        return;
    }
    Json doc{{"tool", tool_header()}, {"config", surface_config("build", o)}};
    const Json mesh = io::surface_json(surf);
    for (const auto& [key, value] : mesh.items()) doc[key] = value;
    emit(o, io::dump(doc, false));
}

void run_surface_curvature(const Options& o) {
    require_format(o, {"json", "csv", "text"});
    if (o.in.empty()) throw InputError("--in is required");
    Json mesh;
    try {
        mesh = Json::parse(io::read_file(o.in));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(o.in + ": " + e.what());
    }
    geom::TranslationSurface surf;
    try {
        surf = io::surface_from_json(mesh);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(o.in + ": " + e.what());
    }
    print_warnings(surf);
    const geom::CurvatureReport r = geom::curvature_report(surf);
    Options target = o;
    if (!o.report.empty()) target.out = o.report;
    if (o.format == "csv") {
        emit(target, io::surface_csv(surf, r));
        return;
    }
    if (o.format == "text") {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "grid %d x %d\nmax |K_intrinsic| %.17g\nmax |K_extrinsic| %.17g\nmax |K_intrinsic - K_extrinsic| %.17g\n"
                      "excluded nodes %zu\n",
                      surf.ns(), surf.nt(), r.max_abs_K_intrinsic, r.max_abs_K_extrinsic, r.max_abs_difference,
                      r.excluded.size());
        emit(target, buf);
        return;
    }
    Json doc{{"tool", tool_header()}, {"config", surface_config("curvature", o)}};
    doc["group"] = mesh.at("group");
    if (mesh.contains("config")) doc["mesh_config"] = mesh.at("config");
    const Json report = io::report_json(r);
    for (const auto& [key, value] : report.items()) doc[key] = value;
    emit(target, io::dump(doc, false));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie point symmetries of u_st + K sin u and translation surfaces in R^3 and S^3", "liesurf"};
    app.set_version_flag("--version", std::string("liesurf ") + LIESURF_VERSION);
    app.require_subcommand(1);
    Options o;

    auto* sym = app.add_subcommand("symmetry", "symbolic symmetry analysis of a scalar PDE");
    sym->require_subcommand(1);
    auto add_pde = [&](CLI::App* cmd) {
        cmd->add_option("--pde", o.pde, "PDE as an expression or 'lhs = rhs'")->required();
        cmd->add_option("--param", o.params, "bind a parameter, e.g. K=1");
        cmd->add_option("--nonzero", o.nonzero, "declare a parameter nonzero");
        cmd->add_option("--format", o.format, "json or text");
        cmd->add_option("--out", o.out, "output file (default: stdout)");
    };
    auto* derive = sym->add_subcommand("derive", "determining system, raw and reduced");
    add_pde(derive);
    auto* verify = sym->add_subcommand("verify", "check a candidate generator");
    add_pde(verify);
    verify->add_option("--field", o.field, "'xi = ...; tau = ...; eta = ...'")->required();
    auto* solve = sym->add_subcommand("solve", "polynomial ansatz for the symmetry algebra");
    add_pde(solve);
    solve->add_option("--degree", o.degree, "total degree in s, t, u (0..4)");
    auto* kov = sym->add_subcommand("kovalevskaya", "rewrite in x = t + s, y = t - s");
    add_pde(kov);

    auto* surf = app.add_subcommand("surface", "translation surfaces and their curvature");
    surf->require_subcommand(1);
    auto* build = surf->add_subcommand("build", "sample f(s,t) = a(s) b(t)");
    build->add_option("--group", o.group, "s3 or r3");
    build->add_option("--curve-a", o.curve_a, "geodesic:dir=i|j|k, frenet:kappa=..,tau=.., line:dir=x|y|z, circle:radius=..");
    build->add_option("--curve-b", o.curve_b, "second factor, same syntax");
    build->add_option("--grid", o.grid, "nodes per direction");
    build->add_option("--step", o.step, "parameter step");
    build->add_option("--format", o.format, "json or csv");
    build->add_option("--out", o.out, "output file (default: stdout)");
    auto* curv = surf->add_subcommand("curvature", "metric angle and Gaussian curvature of a mesh");
    curv->add_option("--in", o.in, "mesh produced by 'surface build'")->required();
    curv->add_option("--report", o.report, "report file (default: stdout)");
    curv->add_option("--format", o.format, "json, csv or text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*derive) run_derive(o);
        else if (*verify) run_verify(o);
        else if (*solve) run_solve(o);
        else if (*kov) run_kovalevskaya(o);
        else if (*build) run_surface_build(o);
        else if (*curv) run_surface_curvature(o);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
