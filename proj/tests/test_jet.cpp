#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "liesurf/errors.hpp"
#include "liesurf/jet.hpp"
#include "liesurf/pde_lang.hpp"

using namespace liesurf;

namespace {

Expression P(const char* text) { return parse_expression(text); }

std::string golden(const char* name) {
    std::ifstream in(std::string(LIESURF_GOLDEN_DIR) + "/" + name);
    std::string line;
    std::getline(in, line);
    return line;
}

}  // namespace

TEST(MultiIndex, SortedMultiset) {
    EXPECT_EQ(MultiIndex("ts"), MultiIndex("st"));
    EXPECT_EQ(MultiIndex("sst").order(), 3);
    EXPECT_TRUE(MultiIndex("sst").contains(MultiIndex("ss")));
    EXPECT_FALSE(MultiIndex("st").contains(MultiIndex("ss")));
    EXPECT_EQ(MultiIndex("sst").minus(MultiIndex("st")), MultiIndex("s"));
    EXPECT_EQ(MultiIndex::all_of_order("st", 2).size(), 3u);
    EXPECT_EQ(MultiIndex::all_of_order("st", 3).size(), 4u);
}

TEST(TotalDerivative, Definition) {
    EXPECT_EQ(total_derivative(P("u"), sym_s()), P("u_s"));
    EXPECT_EQ(total_derivative(P("u_s"), sym_t()), P("u_st"));
    EXPECT_EQ(total_derivative(P("s*u_t"), sym_s()), P("u_t + s*u_st"));
    EXPECT_EQ(total_derivative(P("sin(u)"), sym_t()), P("cos(u)*u_t"));
    EXPECT_EQ(total_derivative(P("xi"), sym_s()), P("xi_s + xi_u*u_s"));
    EXPECT_EQ(total_derivative(P("K"), sym_s()), Expression(0));
    EXPECT_EQ(total_derivative(P("u"), MultiIndex("st")), P("u_st"));
}

TEST(VectorField, RejectsJets) {
    EXPECT_THROW(VectorField(P("u_s"), Expression(), Expression()), InputError);
    EXPECT_NO_THROW(VectorField(P("s*u"), P("sin(u)"), P("t")));
}

TEST(Prolong, OrderBounds) {
    EXPECT_THROW(prolong(VectorField::generic(), 0), PreconditionError);
    EXPECT_THROW(prolong(VectorField::generic(), kMaxProlongationOrder + 1), PreconditionError);
    EXPECT_EQ(prolong(VectorField::generic(), 3).phi.size(), 2u + 3u + 4u);
}

TEST(Prolong, TranslationHasZeroCoefficients) {
    const ProlongedField pv = prolong(VectorField(Expression(1), Expression(), Expression()), 2);
    for (const auto& [index, phi] : pv.phi) EXPECT_TRUE(phi.is_zero()) << index.letters();
}

TEST(Prolong, DilationOfU) {
    const ProlongedField pv = prolong(VectorField(Expression(), Expression(), P("u")), 2);
    for (const auto& [index, phi] : pv.phi) EXPECT_EQ(phi, Expression(jet_symbol(index))) << index.letters();
}

TEST(Prolong, FirstOrderCoefficient) {
    const ProlongedField pv = prolong(VectorField::generic(), 1);
    EXPECT_EQ(pv.coefficient(MultiIndex("s")), P("eta_s + (eta_u - xi_s)*u_s - xi_u*u_s^2 - tau_s*u_t - tau_u*u_s*u_t"));
}

TEST(Prolong, GoldenPhiSt) {
    const ProlongedField pv = prolong(VectorField::generic(), 2);
    const Expression& phi = pv.coefficient(MultiIndex("st"));
    EXPECT_EQ(phi.terms().size(), 21u);
    EXPECT_EQ(print_canonical(phi), golden("phi_st.txt"));
}

TEST(ApplyGenerator, Examples) {
    const Expression phi = P("u_st + K*sin(u)");
    EXPECT_TRUE(apply_generator(prolong(VectorField(Expression(1), Expression(), Expression()), 2), phi).is_zero());
    const ProlongedField generic = prolong(VectorField::generic(), 2);
    EXPECT_EQ(apply_generator(generic, phi), generic.coefficient(MultiIndex("st")) + P("K*eta*cos(u)"));
    EXPECT_EQ(apply_generator(prolong(VectorField(Expression(), Expression(), P("u")), 2), P("u_st")), P("u_st"));
    EXPECT_THROW(apply_generator(prolong(VectorField::generic(), 1), phi), PreconditionError);
}

TEST(Instantiate, GenericMatchesConcrete) {
    const VectorField v(P("s + u^2"), P("-t*u"), P("sin(u)*s"));
    const ProlongedField generic = prolong(VectorField::generic(), 2);
    const ProlongedField concrete = prolong(v, 2);
    for (const auto& [index, phi] : generic.phi) EXPECT_EQ(instantiate(phi, v), concrete.coefficient(index)) << index.letters();
}
