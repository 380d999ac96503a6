#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "liesurf/errors.hpp"
#include "liesurf/io.hpp"
#include "liesurf/pde_lang.hpp"
#include "support.hpp"

using namespace liesurf;
using io::Json;

namespace {

double eval_tree(const Json& n, const std::map<std::string, double>& at) {
    const std::string op = n.at("op");
    if (op == "const") {
        const std::string v = n.at("value");
        const auto slash = v.find('/');
        return slash == std::string::npos ? std::stod(v) : std::stod(v.substr(0, slash)) / std::stod(v.substr(slash + 1));
    }
    if (op == "symbol") return at.at(n.at("name"));
    const Json& args = n.at("args");
    if (op == "sin") return std::sin(eval_tree(args.at(0), at));
    if (op == "cos") return std::cos(eval_tree(args.at(0), at));
    if (op == "pow") return std::pow(eval_tree(args.at(0), at), eval_tree(args.at(1), at));
    double acc = op == "add" ? 0.0 : 1.0;
    for (const auto& a : args) acc = op == "add" ? acc + eval_tree(a, at) : acc * eval_tree(a, at);
    return acc;
}

geom::TranslationSurface small_clifford() {
    const auto g = geom::ParamGrid::centered_nodes(5, 0.1);
    return geom::translation_surface(geom::geodesic_s3(geom::Vec4(0, 1, 0, 0), g), geom::geodesic_s3(geom::Vec4(0, 0, 1, 0), g));
}

}  // namespace

TEST(ExpressionTree, Shape) {
    const Json t = io::expression_tree(parse_expression("u_st + 2*K*sin(u)^2 - 1/3"));
    EXPECT_EQ(t["op"], "add");
    ASSERT_EQ(t["args"].size(), 3u);
    EXPECT_EQ(t["args"][0]["op"], "const");
    EXPECT_EQ(t["args"][0]["value"], "-1/3");
    EXPECT_EQ(io::expression_tree(parse_expression("u"))["name"], "u");
    EXPECT_EQ(io::expression_tree(Expression())["value"], "0");
}

TEST(ExpressionTree, EvaluatesLikeTheExpression) {
    testkit::Generator g(77);
    const std::vector<std::string> symbols = {"s", "t", "u", "u_s", "K"};
    for (int k = 0; k < 200; ++k) {
        const testkit::RawTree raw = g.tree(4, symbols);
        const Expression e = testkit::to_expression(raw);
        std::map<std::string, double> at;
        for (const auto& name : symbols) at[name] = g.real(-1, 1);
        const testkit::Evaluation expected = testkit::evaluate(raw, at);
        EXPECT_NEAR(eval_tree(io::expression_tree(e), at), expected.value, 1e-9 * (1 + expected.magnitude)) << testkit::to_text(raw);
    }
}

TEST(DeterminingSystemJson, SineGordon) {
    const PdeProblem p = PdeProblem::from_expression(parse_expression("u_st + K*sin(u)"), {{"K", ParameterInfo{}}});
    const DeterminingSystem raw = determining_system(p);
    const Json doc = io::determining_system_json(raw, reduce(raw));
    EXPECT_EQ(doc["raw"].size(), 12u);
    for (const auto& eq : doc["raw"]) {
        EXPECT_TRUE(eq.contains("monomial"));
        EXPECT_EQ(parse_expression(eq["coefficient"].get<std::string>()).is_zero(), false);
        EXPECT_TRUE(eq["coefficient_tree"].is_object());
    }
    EXPECT_TRUE(doc["reduced"]["forced_zero"].is_array());
    EXPECT_FALSE(doc["reduced"]["equations"].empty());
}

TEST(VectorFieldJson, Components) {
    const Json v = io::vector_field_json(parse_vector_field("xi = s; tau = -t"));
    EXPECT_EQ(v["xi"], "s");
    EXPECT_EQ(v["tau"], "-t");
    EXPECT_EQ(v["eta"], "0");
}

TEST(SurfaceJson, RoundTrip) {
    const auto surf = small_clifford();
    const auto report = geom::curvature_report(surf);
    const Json doc = io::surface_json(surf, &report);
    const auto back = io::surface_from_json(Json::parse(io::dump(doc, false)));
    EXPECT_EQ(back.group, surf.group);
    EXPECT_EQ(back.dim, 4);
    EXPECT_EQ(back.ns(), 5);
    EXPECT_DOUBLE_EQ(back.grid_t.step, 0.1);
    for (std::size_t n = 0; n < surf.f.size(); ++n) {
        EXPECT_EQ(back.f[n], surf.f[n]);
        EXPECT_EQ(back.f_st[n], surf.f_st[n]);
    }
    EXPECT_EQ(doc["u"].size(), 25u);
    EXPECT_EQ(io::dump(io::surface_json(back, &report), false), io::dump(doc, false));
}

TEST(SurfaceJson, MalformedDocuments) {
    const Json good = io::surface_json(small_clifford());
    EXPECT_THROW(io::surface_from_json(Json::array()), InputError);
    for (const char* key : {"group", "ns", "step_s", "samples"}) {
        Json bad = good;
        bad.erase(key);
        EXPECT_THROW(io::surface_from_json(bad), InputError) << key;
    }
    Json wrong = good;
    wrong["group"] = "so3";
    EXPECT_THROW(io::surface_from_json(wrong), InputError);
    Json short_samples = good;
    short_samples["samples"]["f"].erase(0);
    EXPECT_THROW(io::surface_from_json(short_samples), InputError);
}

TEST(GridJson, NaNIsNull) {
    geom::Grid2 g(1, 2);
    g.at(0, 0) = 0.5;
    g.at(0, 1) = std::nan("");
    EXPECT_EQ(io::dump(io::grid_json(g), false), "[0.5,null]\n");
}

TEST(SurfaceCsv, HeaderAndBlankCells) {
    const auto grid = geom::ParamGrid::centered_nodes(5, 0.1);
    const auto surf = geom::translation_surface(geom::circle_r3(1.0, grid), geom::line_r3(Eigen::Vector3d(0, 0, 1), grid));
    const auto report = geom::curvature_report(surf);
    std::istringstream in(io::surface_csv(surf, report));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "s,t,f0,f1,f2,f3,u,K_int,K_ext");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("-0.20000000000000001,-0.20000000000000001,", 0), 0u) << line;
    EXPECT_NE(line.find(",,"), std::string::npos);
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 25);
}

TEST(Files, AtomicWrite) {
    const auto dir = std::filesystem::temp_directory_path() / "liesurf_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "out.json").string();
    io::write_atomic(path, "first\n");
    io::write_atomic(path, "second\n");
    EXPECT_EQ(io::read_file(path), "second\n");
    EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
    EXPECT_THROW(io::read_file(path), InputError);
    EXPECT_THROW(io::write_atomic((dir / "missing" / "x").string(), "x"), std::exception);
}

TEST(Dump, PrettyAndCompact) {
    const Json doc = {{"a", 1}, {"b", {1, 2}}};
    EXPECT_EQ(io::dump(doc, false), "{\"a\":1,\"b\":[1,2]}\n");
    EXPECT_EQ(io::dump(doc), "{\n  \"a\": 1,\n  \"b\": [\n    1,\n    2\n  ]\n}\n");
}
