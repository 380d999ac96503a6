#ifndef LIESURF_PDE_LANG_HPP
#define LIESURF_PDE_LANG_HPP

// Text syntax for expressions, equations and point vector fields, plus the
// canonical printer. The grammar is documented in docs/grammar.md.

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "liesurf/expr.hpp"
#include "liesurf/jet.hpp"

namespace liesurf {

struct ParseOptions {
    /// Letters accepted as independent variables (and as jet index letters).
    std::string independent = "stxy";
    /// If set, only these parameter names are accepted; anything else is an
    /// unknown identifier.
    std::optional<std::set<std::string>> parameters;
    /// Whether xi, tau, eta and their partials (xi_su, ...) may appear.
    bool allow_coefficient_functions = true;
};

/// Throws ParseError ("line:col: message") on any malformed input.
Expression parse_expression(std::string_view source, const ParseOptions& options = {});

/// Accepts either a bare expression or "lhs = rhs"; returns lhs - rhs.
Expression parse_equation(std::string_view source, const ParseOptions& options = {});

/// `xi = <expr>; tau = <expr>; eta = <expr>`, any subset, any order.
VectorField parse_vector_field(std::string_view source);

/// Deterministic ASCII rendering; parse_expression(print_canonical(e)) == e.
std::string print_canonical(const Expression& e);

std::string print_rational(const Rational& q);

std::string print_monomial(const Monomial& m);

std::string print_vector_field(const VectorField& v);

}  // namespace liesurf

#endif  // LIESURF_PDE_LANG_HPP
