#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "liesurf/errors.hpp"
#include "liesurf/geometry.hpp"
#include "liesurf/pde_lang.hpp"
#include "liesurf/symmetry.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace liesurf;
using namespace liesurf::geom;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

const char* kPaperPhiSt =
    "eta_ts + eta_tu*u_s + eta_us*u_t - xi_ts*u_s - tau_ts*u_t + eta_uu*u_s*u_t - xi_tu*u_s^2 - xi_us*u_t*u_s"
    " - tau_tu*u_s*u_t + eta_u*u_ts - xi_t*u_ss - xi_s*u_st - tau_t*u_ts - xi_uu*u_t*u_s^2 - tau_us*u_t^2"
    " - 2*xi_u*u_ts*u_s - xi_u*u_t*u_ss - tau_uu*u_s*u_t^2 - 2*tau_u*u_t*u_ts - tau_s*u_tt - tau_u*u_s*u_tt";

PdeProblem sine_gordon(const std::map<std::string, Rational>& bind = {}, bool k_nonzero = false) {
    ParameterMap params{{"K", ParameterInfo{k_nonzero}}};
    PdeProblem p = PdeProblem::from_expression(parse_equation("u_st + K*sin(u)"), params);
    return bind.empty() ? p : p.bind(bind);
}

Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const ProlongedField pv = prolong(VectorField::generic(), 2);
    const Expression diff = pv.coefficient(MultiIndex("st")) - parse_expression(kPaperPhiSt);
    const double elapsed = seconds_since(start);
    return {diff.is_zero() && elapsed < 1.0,
            "difference " + print_canonical(diff) + ", " + std::to_string(pv.coefficient(MultiIndex("st")).terms().size()) +
                " terms" + fmt(", %.3f s", elapsed)};
}

Expression monic(const Expression& e) {
    if (e.is_zero()) return e;
    return e / e.terms().begin()->second;
}

Outcome criterion2() {
    const PdeProblem p = sine_gordon();
    const DeterminingSystem raw = determining_system(p);
    const ReducedSystem engine = reduce(raw);

    // reference component list
    DeterminingSystem reference;
    for (const char* text : {"xi_t", "xi_u", "tau_s", "tau_u", "eta_uu - xi_us - tau_tu", "2*K*xi_u*sin(u) + eta_tu - xi_ts",
                             "2*K*tau_u*sin(u) + eta_us - tau_ts",
                             "eta_st - K*eta_u*sin(u) + K*eta*cos(u) + K*xi_s*sin(u) + K*tau_t*sin(u)"})
        reference.equations.push_back({Monomial(), parse_expression(text)});
    const ReducedSystem printed = reduce(reference);

    std::set<Symbol> fe(engine.forced_zero.begin(), engine.forced_zero.end());
    std::set<Symbol> fp(printed.forced_zero.begin(), printed.forced_zero.end());
    std::set<Expression> ee, ep;
    for (const auto& eq : engine.equations) ee.insert(monic(eq.coefficient));
    for (const auto& eq : printed.equations) ep.insert(monic(eq.coefficient));
    const bool equivalent = fe == fp && ee == ep;

    const Expression expanded_constant =
        parse_expression("eta_st + K*eta_u*sin(u) - K*eta*cos(u) + K*xi_s*sin(u) + K*tau_t*sin(u)");
    Expression engine_constant;
    for (const auto& eq : raw.equations)
        if (eq.monomial.is_one()) engine_constant = eq.coefficient;
    const bool discrepancy =
        engine_constant != expanded_constant && engine_constant == reference.equations.back().coefficient;

    const bool scaling = verify_generator(sine_gordon({}, true), parse_vector_field("xi = s; tau = -t")).holds;
    const bool dilation = verify_generator(sine_gordon({}, true), parse_vector_field("eta = u")).holds;
    return {equivalent && discrepancy && scaling && !dilation,
            std::string("reduced systems ") + (equivalent ? "equivalent" : "differ") + ", constant group " +
                (discrepancy ? "follows the component list, differs from the expanded form" : "unexpected") +
                ", s*d_s - t*d_t " + (scaling ? "true" : "false") + ", u*d_u " + (dilation ? "true" : "false")};
}

std::vector<VectorField> fields(std::initializer_list<const char*> texts) {
    std::vector<VectorField> out;
    for (const char* t : texts) out.push_back(parse_vector_field(t));
    return out;
}

Outcome criterion3() {
    const PdeProblem p = sine_gordon({{"K", Rational(1)}});
    const AnsatzSolution d2 = solve_polynomial_ansatz(p, 2);
    const AnsatzSolution d3 = solve_polynomial_ansatz(p, 3);
    const bool spans = testkit::same_span(d2.basis, fields({"xi = 1", "tau = 1", "xi = s; tau = -t"}));
    return {d2.dimension() == 3 && d3.dimension() == 3 && spans,
            "degree 2 dimension " + std::to_string(d2.dimension()) + ", degree 3 dimension " +
                std::to_string(d3.dimension()) + (spans ? ", spans {d_s, d_t, s*d_s - t*d_t}" : ", wrong span")};
}

Outcome criterion4() {
    const PdeProblem p = sine_gordon({{"K", Rational(0)}});
    const AnsatzSolution d2 = solve_polynomial_ansatz(p, 2);
    // xi(s), tau(t), eta = alpha*u + f(s) + g(t), truncated at degree 2
    const auto oracle = fields({"xi = 1", "xi = s", "xi = s^2", "tau = 1", "tau = t", "tau = t^2", "eta = u", "eta = 1",
                                "eta = s", "eta = s^2", "eta = t", "eta = t^2"});
    bool residuals = true;
    for (const auto& v : d2.basis) residuals = residuals && verify_generator(p, v).residual.is_zero();
    for (const auto& v : oracle) residuals = residuals && verify_generator(p, v).residual.is_zero();
    const bool spans = testkit::same_span(d2.basis, oracle);
    return {d2.dimension() == 12 && residuals && spans,
            "dimension " + std::to_string(d2.dimension()) + (residuals ? ", all residuals zero" : ", nonzero residual") +
                (spans ? ", matches oracle span" : ", span differs from oracle")};
}

Outcome criterion5() {
    const PdeProblem k = kovalevskaya_transform(sine_gordon());
    const std::string printed = k.solved_form();
    const bool form = printed == "u_xx = -K*sin(u) + u_yy" && k.solved_rhs() == parse_expression("u_yy - K*sin(u)");

    // u = 4 arctan(exp(s + t)) solves u_st = sin u, i.e. K = -1; in (x, y) it is 4 arctan(exp(x))
    const PdeProblem kb = kovalevskaya_transform(sine_gordon({{"K", Rational(-1)}}));
    const PdeProblem pb = sine_gordon({{"K", Rational(-1)}});
    // closed form: u' = 2 sech z, u'' = -2 sech z tanh z, with z = x or z = s + t
    double worst = 0;
    for (double x = -3; x <= 3.0001; x += 0.25) {
        for (double y = -1; y <= 1.0001; y += 0.5) {
            const double u = 4.0 * std::atan(std::exp(x));
            const double d1 = 2.0 / std::cosh(x);
            const double d2 = -2.0 * std::tanh(x) / std::cosh(x);
            const std::map<std::string, double> at{{"x", x}, {"y", y}, {"u", u}, {"u_x", d1}, {"u_y", 0.0},
                                                   {"u_xx", d2}, {"u_xy", 0.0}, {"u_yy", 0.0}};
            worst = std::max(worst, std::abs(evaluate_numeric(kb.phi(), at)));
            const double s = (x - y) / 2, t = (x + y) / 2;
            const std::map<std::string, double> st{{"s", s}, {"t", t}, {"u", u}, {"u_s", d1}, {"u_t", d1},
                                                   {"u_ss", d2}, {"u_st", d2}, {"u_tt", d2}};
            worst = std::max(worst, std::abs(evaluate_numeric(pb.phi(), st)));
        }
    }
    return {form && worst <= 1e-6, "\"" + printed + "\"" + fmt(", soliton residual %.2e", worst)};
}

Outcome criterion6() {
    const MaximalRankReport r = maximal_rank_check(sine_gordon());
    bool unit = false;
    for (const auto& [sym, partial] : r.gradient)
        if (r.witness && sym == *r.witness) unit = partial == Expression(1);
    return {r.witness && r.witness->name() == "u_st" && unit,
            r.witness ? "witness dPhi/d" + r.witness->name() + " = 1" : "no constant witness"};
}

Outcome criterion7() {
    const auto start = std::chrono::steady_clock::now();
    const ParamGrid g = ParamGrid::centered_nodes(201, 0.01);
    const TranslationSurface surf = translation_surface(geodesic_s3(Vec4(0, 1, 0, 0), g), geodesic_s3(Vec4(0, 0, 1, 0), g));
    const CurvatureReport r = curvature_report(surf);
    double udev = 0;
    for (double v : r.u.values) udev = std::max(udev, std::abs(v - M_PI / 2));
    const double gk = r.gauss_kronecker.max_deviation_interior(-1.0);
    const double elapsed = seconds_since(start);
    return {udev <= 1e-9 && r.max_abs_K_intrinsic <= 1e-6 && r.max_abs_K_extrinsic <= 1e-6 && gk <= 1e-5 && elapsed < 5.0,
            fmt("|u - pi/2| %.1e, |K_int| %.1e, |K_ext| %.1e", udev, r.max_abs_K_intrinsic, r.max_abs_K_extrinsic) +
                fmt(", |GK + 1| %.1e, %.2f s", gk, elapsed)};
}

Outcome criterion8() {
    // [-0.75, 0.75]^2: the product degenerates on |s - t| = pi/2, so no regular 2 x 2 square exists
    const ParamGrid g = ParamGrid::centered_nodes(151, 0.01);
    auto one = [](double) { return 1.0; };
    const SampledCurve a = frenet_curve_s3(one, 1.0, g, default_frame_a());
    const SampledCurve b = frenet_curve_s3(one, -1.0, g, default_frame_b());
    const CurvatureReport r = curvature_report(translation_surface(a, b));
    double torsion = 0;
    int measured = 0;
    for (const auto* c : {&a, &b}) {
        const double expected = c == &a ? 1.0 : -1.0;
        for (const auto& t : curve_invariants(*c).torsion)
            if (t) {
                torsion = std::max(torsion, std::abs(*t - expected));
                ++measured;
            }
    }
    return {r.max_abs_K_extrinsic <= 1e-4 && measured > 0 && torsion <= 1e-4,
            fmt("max |K_ext| %.1e on [-0.75, 0.75]^2, torsion round-trip error %.1e", r.max_abs_K_extrinsic, torsion)};
}

Outcome criterion9() {
    const ParamGrid g = ParamGrid::centered_nodes(201, 0.01);
    const TranslationSurface cyl = translation_surface(circle_r3(1.0, g), line_r3(Eigen::Vector3d(0, 0, 1), g));
    const CurvatureReport rc = curvature_report(cyl);

    const ParamGrid p = ParamGrid::centered_nodes(41, 0.05);
    const SampledCurve a = analytic_curve(3, p, [](double s) {
        return CurveJet{Vec4(s, 0, s * s, 0), Vec4(1, 0, 2 * s, 0), Vec4(0, 0, 2, 0)};
    });
    const SampledCurve b = analytic_curve(3, p, [](double t) {
        return CurveJet{Vec4(0, t, t * t, 0), Vec4(0, 1, 2 * t, 0), Vec4(0, 0, 2, 0)};
    });
    const ExtrinsicCurvature k = curvature_extrinsic(translation_surface(a, b));
    double rel = 0;
    for (int i = 1; i < p.count - 1; ++i)
        for (int j = 1; j < p.count - 1; ++j) {
            const double s = p.at(i), t = p.at(j);
            const double exact = 4.0 / std::pow(1 + 4 * s * s + 4 * t * t, 2);
            rel = std::max(rel, std::abs(k.K.at(i, j) - exact) / exact);
        }
    return {rc.max_abs_K_extrinsic <= 1e-6 && rc.max_abs_K_intrinsic <= 1e-6 && rel <= 1e-5,
            fmt("cylinder |K_ext| %.1e |K_int| %.1e, paraboloid relative error %.1e", rc.max_abs_K_extrinsic,
                rc.max_abs_K_intrinsic, rel)};
}

Outcome criterion10() {
    const double eps = 0.05;
    const ParamGrid g = ParamGrid::centered_nodes(131, 0.01);
    const int shift = static_cast<int>(std::lround(eps / g.step));
    auto kappa = [](double s) { return 1.0 + 0.1 * s; };
    const SampledCurve b = frenet_curve_s3([](double) { return 1.0; }, -1.0, g, default_frame_b());
    const Grid2 u = metric_angle(translation_surface(frenet_curve_s3(kappa, 1.0, g, default_frame_a()), b));
    const Grid2 ue = metric_angle(translation_surface(frenet_curve_s3(kappa, 1.0, g.shifted(eps), default_frame_a()), b));
    double worst = 0;
    for (int i = 0; i + shift < g.count; ++i)
        for (int j = 0; j < g.count; ++j) worst = std::max(worst, std::abs(ue.at(i, j) - u.at(i + shift, j)));
    return {worst <= 1e-6, fmt("max |u_eps(s,t) - u(s+eps,t)| %.1e at eps = 0.05", worst)};
}

Outcome criterion11() {
    using namespace liesurf::testkit;
    const PropertyResult results[] = {total_derivative_commutation(kPropertyCases, 11),
                                      prolongation_linearity(kPropertyCases, 12), canonical_congruence(kPropertyCases, 13),
                                      parser_round_trip(kPropertyCases, 14)};
    const char* names[] = {"commutation", "linearity", "congruence", "round-trip"};
    bool ok = true;
    std::ostringstream os;
    for (int k = 0; k < 4; ++k) {
        ok = ok && results[k].ok();
        os << (k ? ", " : "") << names[k] << " " << results[k].cases - results[k].failures << "/" << results[k].cases;
        if (!results[k].ok()) os << " (" << results[k].first_failure << ")";
    }
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"golden phi^st", criterion1},
        {"determining system", criterion2},
        {"symmetry algebra K != 0", criterion3},
        {"symmetry algebra K = 0", criterion4},
        {"Kovalevskaya form", criterion5},
        {"maximal rank", criterion6},
        {"Clifford torus", criterion7},
        {"Frenet product flatness", criterion8},
        {"R^3 controls", criterion9},
        {"translation flow", criterion10},
        {"property suites", criterion11},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, run] : criteria) {
        ++n;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2d %s  %s: %s\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
