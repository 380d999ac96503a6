#ifndef LIESURF_EXPR_HPP
#define LIESURF_EXPR_HPP

// Exact symbolic expressions over rational constants, named symbols and the
// elementary atoms sin(.) / cos(.).
//
// Every Expression is held in canonical form: a sum of distinct monomials with
// nonzero rational coefficients, each monomial a sorted product of atoms raised
// to positive integer powers. Two expressions are equal as polynomials over
// their atoms iff their canonical forms are identical, so operator== is exact
// polynomial identity. sin/cos atoms are opaque; the only rewrites applied to
// them are sin(0) = 0 and cos(0) = 1.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace liesurf {

using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

enum class SymbolKind : std::uint8_t {
    Independent,          // s, t (or x, y after a change of variables)
    Parameter,            // free constants such as K
    CoefficientFunction,  // xi, tau, eta and their partials, e.g. xi_su
    Jet,                  // u and its derivatives u_J
};

/// A named scalar symbol. Jet symbols and coefficient-function partials carry
/// a sorted derivative index; mixed partials commute, so "ts" and "st" denote
/// the same symbol.
class Symbol {
public:
    static Symbol independent(std::string name);
    static Symbol parameter(std::string name);
    /// Partial derivative of an unknown coefficient function of (s, t, u).
    static Symbol coefficient(std::string base, std::string index = {});
    /// u_J; an empty index denotes u itself.
    static Symbol jet(std::string index = {});

    SymbolKind kind() const noexcept { return kind_; }
    const std::string& base() const noexcept { return base_; }
    const std::string& index() const noexcept { return index_; }
    const std::string& name() const noexcept { return name_; }
    bool is_jet() const noexcept { return kind_ == SymbolKind::Jet; }
    /// Derivative order of a jet symbol (0 for u).
    int jet_order() const noexcept { return static_cast<int>(index_.size()); }

    /// Same family with one more derivative letter appended (and re-sorted).
    Symbol derived(char variable) const;

    friend bool operator==(const Symbol& a, const Symbol& b) noexcept {
        return a.kind_ == b.kind_ && a.base_ == b.base_ && a.index_ == b.index_;
    }
    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) noexcept;

private:
    Symbol(SymbolKind kind, std::string base, std::string index);

    SymbolKind kind_;
    std::string base_;
    std::string index_;
    std::string name_;
};

class Expression;

enum class FunctionKind : std::uint8_t { Sin, Cos };

/// Indivisible factor of a monomial: a symbol or sin/cos of an expression.
class Atom {
public:
    Atom(Symbol symbol);  // NOLINT(google-explicit-constructor)
    Atom(FunctionKind fn, const Expression& argument);

    bool is_symbol() const noexcept { return !argument_; }
    bool is_function() const noexcept { return static_cast<bool>(argument_); }
    const Symbol& symbol() const;
    FunctionKind function() const noexcept { return function_; }
    const Expression& argument() const;

    friend bool operator==(const Atom& a, const Atom& b);
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

private:
    std::optional<Symbol> symbol_;
    FunctionKind function_ = FunctionKind::Sin;
    std::shared_ptr<const Expression> argument_;
};

/// Product of atoms with strictly positive integer exponents, sorted by atom.
/// The empty monomial is the constant 1.
class Monomial {
public:
    using Factor = std::pair<Atom, unsigned>;

    Monomial() = default;
    explicit Monomial(const Atom& atom, unsigned exponent = 1);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    unsigned exponent_of(const Atom& atom) const;
    unsigned degree() const;

    Monomial operator*(const Monomial& other) const;
    /// This monomial with `atom` removed.
    Monomial without(const Atom& atom) const;

    friend bool operator==(const Monomial& a, const Monomial& b);
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> factors_;
};

enum class NodeKind : std::uint8_t { Constant, Symbol, Sum, Product, Power, Function };

class Expression {
public:
    using TermMap = std::map<Monomial, Rational>;

    /// The zero expression.
    Expression() = default;
    Expression(long value);              // NOLINT(google-explicit-constructor)
    Expression(const Rational& value);   // NOLINT(google-explicit-constructor)
    Expression(const Symbol& symbol);    // NOLINT(google-explicit-constructor)
    explicit Expression(const Atom& atom);

    /// Builds the canonical form of an arbitrary (possibly repeated, zero or
    /// unit-exponent-free) list of terms.
    static Expression from_terms(const std::vector<std::pair<Monomial, Rational>>& terms);

    static Expression sin(const Expression& argument);
    static Expression cos(const Expression& argument);

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::optional<Rational> constant_value() const;
    bool is_constant() const { return constant_value().has_value(); }
    /// The rational coefficient of the given monomial (0 if absent).
    Rational coefficient(const Monomial& monomial) const;

    /// Top-level node shape of the canonical tree.
    NodeKind kind() const;

    Expression pow(unsigned exponent) const;

    Expression& operator+=(const Expression& rhs);
    Expression& operator-=(const Expression& rhs);
    Expression& operator*=(const Expression& rhs);
    Expression& operator/=(const Rational& rhs);

    friend Expression operator+(Expression a, const Expression& b) { return a += b; }
    friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(Expression a, const Rational& b) { return a /= b; }
    friend Expression operator-(const Expression& a);

    friend bool operator==(const Expression& a, const Expression& b);
    friend std::strong_ordering operator<=>(const Expression& a, const Expression& b);

private:
    void add_term(const Monomial& monomial, const Rational& coefficient);

    TermMap terms_;
};

Expression sin(const Expression& e);
Expression cos(const Expression& e);

/// Exact partial derivative with respect to a symbol. Distinct symbols are
/// independent, except that coefficient functions depend on s, t and u:
/// d/ds xi_J = xi_Js.
Expression differentiate(const Expression& e, const Symbol& x);

/// Replaces every occurrence of `target` (a symbol or a sin/cos atom),
/// including occurrences inside function arguments.
Expression substitute(const Expression& e, const Atom& target, const Expression& replacement);

/// Idempotent; Expressions are canonical by construction so this is a copy.
Expression canonicalize(const Expression& e);

/// Groups `e` by monomials in the basis atoms; coefficients are free of basis
/// atoms. Throws InputError if a basis atom occurs inside a function argument.
std::map<Monomial, Expression> collect_monomials(const Expression& e, const std::set<Atom>& basis);

/// Inverse of collect_monomials.
Expression reassemble(const std::map<Monomial, Expression>& collected);

/// Floating-point evaluation; symbols are bound by printed name. Throws
/// InputError naming the first unbound symbol.
double evaluate_numeric(const Expression& e, const std::map<std::string, double>& bindings);

/// Every symbol occurring in `e`, including inside function arguments.
std::set<Symbol> free_symbols(const Expression& e);

/// Every atom occurring at top level or nested in a function argument.
std::set<Atom> atoms(const Expression& e);

/// Highest jet order among the jet symbols of `e`, or -1 if none.
int max_jet_order(const Expression& e);

bool depends_on(const Expression& e, const Symbol& x);

}  // namespace liesurf

#endif  // LIESURF_EXPR_HPP
