#include "liesurf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "liesurf/errors.hpp"
#include "liesurf/pde_lang.hpp"

namespace liesurf::io {
namespace {

Json constant_node(const Rational& q) { return Json{{"op", "const"}, {"value", print_rational(q)}}; }

Json atom_node(const Atom& a) {
    if (a.is_symbol()) return Json{{"op", "symbol"}, {"name", a.symbol().name()}};
    return Json{{"op", a.function() == FunctionKind::Sin ? "sin" : "cos"},
                {"args", Json::array({expression_tree(a.argument())})}};
}

Json term_node(const Monomial& m, const Rational& c) {
    Json factors = Json::array();
    if (m.is_one() || c != 1) factors.push_back(constant_node(c));
    for (const auto& [atom, exponent] : m.factors()) {
        if (exponent == 1) factors.push_back(atom_node(atom));
        else factors.push_back(Json{{"op", "pow"}, {"args", Json::array({atom_node(atom), Json{{"op", "const"}, {"value", std::to_string(exponent)}}})}});
    }
    if (factors.size() == 1) return factors[0];
    return Json{{"op", "mul"}, {"args", factors}};
}

Json number(double v) { return std::isfinite(v) ? Json(v + 0.0) : Json(nullptr); }

double read_number(const Json& v) {
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number()) throw InputError("expected a number or null in surface document");
    return v.get<double>();
}

Json flatten(const std::vector<geom::Vec4>& values, int dim) {
    Json out = Json::array();
    for (const auto& v : values)
        for (int k = 0; k < dim; ++k) out.push_back(number(v[k]));
    return out;
}

std::vector<geom::Vec4> unflatten(const Json& arr, int dim, std::size_t count, const char* name) {
    if (!arr.is_array() || arr.size() != count * static_cast<std::size_t>(dim))
        throw InputError(std::string("surface document: samples.") + name + " has the wrong length");
    std::vector<geom::Vec4> out(count, geom::Vec4::Zero());
    for (std::size_t n = 0; n < count; ++n)
        for (int k = 0; k < dim; ++k) out[n][k] = read_number(arr[n * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)]);
    return out;
}

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("surface document: missing '") + key + "'");
    return doc.at(key);
}

}  // namespace

Json expression_tree(const Expression& e) {
    if (e.is_zero()) return constant_node(0);
    if (e.terms().size() == 1) return term_node(e.terms().begin()->first, e.terms().begin()->second);
    Json args = Json::array();
    for (const auto& [m, c] : e.terms()) args.push_back(term_node(m, c));
    return Json{{"op", "add"}, {"args", args}};
}

Json equation_list(const std::vector<DeterminingEquation>& equations) {
    Json out = Json::array();
    for (const auto& eq : equations)
        out.push_back(Json{{"monomial", print_monomial(eq.monomial)},
                           {"coefficient", print_canonical(eq.coefficient)},
                           {"coefficient_tree", expression_tree(eq.coefficient)}});
    return out;
}

Json determining_system_json(const DeterminingSystem& raw, const ReducedSystem& reduced) {
    Json forced = Json::array();
    for (const auto& s : reduced.forced_zero) forced.push_back(s.name());
    return Json{{"raw", equation_list(raw.equations)},
                {"reduced", Json{{"forced_zero", forced}, {"equations", equation_list(reduced.equations)}}}};
}

Json vector_field_json(const VectorField& v) {
    return Json{{"xi", print_canonical(v.xi())}, {"tau", print_canonical(v.tau())}, {"eta", print_canonical(v.eta())}};
}

Json grid_json(const geom::Grid2& g) {
    Json out = Json::array();
    for (double v : g.values) out.push_back(number(v));
    return out;
}

Json surface_json(const geom::TranslationSurface& surf, const geom::CurvatureReport* report) {
    const int dim = surf.group == geom::Group::Sphere3 ? 4 : surf.dim;
    Json doc;
    doc["group"] = geom::group_tag(surf.group, surf.dim);
    doc["dim"] = dim;
    doc["start_s"] = surf.grid_s.start;
    doc["start_t"] = surf.grid_t.start;
    doc["step_s"] = surf.grid_s.step;
    doc["step_t"] = surf.grid_t.step;
    doc["ns"] = surf.ns();
    doc["nt"] = surf.nt();
    doc["samples"] = Json{{"f", flatten(surf.f, dim)},       {"f_s", flatten(surf.f_s, dim)},
                          {"f_t", flatten(surf.f_t, dim)},   {"f_ss", flatten(surf.f_ss, dim)},
                          {"f_st", flatten(surf.f_st, dim)}, {"f_tt", flatten(surf.f_tt, dim)}};
    doc["warnings"] = surf.warnings;
    if (report != nullptr) {
        doc["u"] = grid_json(report->u);
        doc["K_intrinsic"] = grid_json(report->K_intrinsic);
        doc["K_extrinsic"] = grid_json(report->K_extrinsic);
    }
    return doc;
}

geom::TranslationSurface surface_from_json(const Json& doc) {
    geom::TranslationSurface surf;
    const std::string group = field(doc, "group").get<std::string>();
    if (group == "s3") {
        surf.group = geom::Group::Sphere3;
        surf.dim = 4;
    } else if (group.size() == 2 && group[0] == 'r' && group[1] >= '1' && group[1] <= '4') {
        surf.group = geom::Group::Euclidean;
        surf.dim = group[1] - '0';
    } else {
        throw InputError("surface document: unknown group '" + group + "'");
    }
    const int ns = field(doc, "ns").get<int>();
    const int nt = field(doc, "nt").get<int>();
    if (ns < 1 || nt < 1) throw InputError("surface document: empty grid");
    surf.grid_s = {field(doc, "start_s").get<double>(), field(doc, "step_s").get<double>(), ns};
    surf.grid_t = {field(doc, "start_t").get<double>(), field(doc, "step_t").get<double>(), nt};
    if (!(surf.grid_s.step > 0) || !(surf.grid_t.step > 0)) throw InputError("surface document: steps must be positive");
    const Json& samples = field(doc, "samples");
    const auto count = static_cast<std::size_t>(ns) * static_cast<std::size_t>(nt);
    surf.f = unflatten(field(samples, "f"), surf.dim, count, "f");
    surf.f_s = unflatten(field(samples, "f_s"), surf.dim, count, "f_s");
    surf.f_t = unflatten(field(samples, "f_t"), surf.dim, count, "f_t");
    surf.f_ss = unflatten(field(samples, "f_ss"), surf.dim, count, "f_ss");
    surf.f_st = unflatten(field(samples, "f_st"), surf.dim, count, "f_st");
    surf.f_tt = unflatten(field(samples, "f_tt"), surf.dim, count, "f_tt");
    if (doc.contains("warnings")) surf.warnings = doc.at("warnings").get<std::vector<std::string>>();
    return surf;
}

Json report_json(const geom::CurvatureReport& r) {
    Json excluded = Json::array();
    for (const auto& n : r.excluded) excluded.push_back(Json::array({n.i, n.j}));
    return Json{{"step_s", r.step_s},
                {"step_t", r.step_t},
                {"ns", r.u.ns},
                {"nt", r.u.nt},
                {"max_abs_K_intrinsic", r.max_abs_K_intrinsic},
                {"max_abs_K_extrinsic", r.max_abs_K_extrinsic},
                {"max_abs_difference", r.max_abs_difference},
                {"excluded", excluded},
                {"u", grid_json(r.u)},
                {"K_intrinsic", grid_json(r.K_intrinsic)},
                {"K_extrinsic", grid_json(r.K_extrinsic)}};
}

std::string surface_csv(const geom::TranslationSurface& surf, const geom::CurvatureReport& report) {
    std::string out = "s,t,f0,f1,f2,f3,u,K_int,K_ext\n";
    char buf[40];
    auto put = [&](double v, bool comma) {
        if (std::isfinite(v)) {
            std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
            out += buf;
        }
        if (comma) out += ',';
    };
    const int dim = surf.group == geom::Group::Sphere3 ? 4 : surf.dim;
    for (int i = 0; i < surf.ns(); ++i)
        for (int j = 0; j < surf.nt(); ++j) {
            const auto& f = surf.f[surf.index(i, j)];
            put(surf.grid_s.at(i), true);
            put(surf.grid_t.at(j), true);
            for (int k = 0; k < 4; ++k) put(k < dim ? f[k] : std::numeric_limits<double>::quiet_NaN(), true);
            put(report.u.at(i, j), true);
            put(report.K_intrinsic.at(i, j), true);
            put(report.K_extrinsic.at(i, j), false);
            out += '\n';
        }
    return out;
}

std::string dump(const Json& doc, bool pretty) { return doc.dump(pretty ? 2 : -1) + "\n"; }

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw InputError("failed writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw InputError("cannot move output into '" + path + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace liesurf::io
