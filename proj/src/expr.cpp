#include "liesurf/expr.hpp"

#include <algorithm>
#include <cmath>

#include "liesurf/errors.hpp"

namespace liesurf {

Rational make_rational(long numerator, long denominator) {
    if (denominator == 0) throw InputError("division by zero");
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// Symbol

Symbol::Symbol(SymbolKind kind, std::string base, std::string index)
    : kind_(kind), base_(std::move(base)), index_(std::move(index)) {
    std::sort(index_.begin(), index_.end());
    name_ = index_.empty() ? base_ : base_ + "_" + index_;
}

Symbol Symbol::independent(std::string name) { return {SymbolKind::Independent, std::move(name), {}}; }
Symbol Symbol::parameter(std::string name) { return {SymbolKind::Parameter, std::move(name), {}}; }
Symbol Symbol::coefficient(std::string base, std::string index) {
    return {SymbolKind::CoefficientFunction, std::move(base), std::move(index)};
}
Symbol Symbol::jet(std::string index) { return {SymbolKind::Jet, "u", std::move(index)}; }

Symbol Symbol::derived(char variable) const { return {kind_, base_, index_ + variable}; }

namespace {

// Plain symbols first (alphabetical), then sin/cos atoms, then jets by order.
int symbol_rank(const Symbol& s) { return s.is_jet() ? 2 : 0; }

}  // namespace

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) noexcept {
    if (auto c = symbol_rank(a) <=> symbol_rank(b); c != 0) return c;
    if (a.is_jet()) {
        if (auto c = a.index_.size() <=> b.index_.size(); c != 0) return c;
        return a.index_ <=> b.index_;
    }
    if (auto c = a.name_ <=> b.name_; c != 0) return c;
    return a.kind_ <=> b.kind_;
}

// ---------------------------------------------------------------------------
// Atom

Atom::Atom(Symbol symbol) : symbol_(std::move(symbol)) {}

Atom::Atom(FunctionKind fn, const Expression& argument)
    : function_(fn), argument_(std::make_shared<const Expression>(argument)) {}

const Symbol& Atom::symbol() const {
    if (!symbol_) throw InvariantError("atom is not a symbol");
    return *symbol_;
}

const Expression& Atom::argument() const {
    if (!argument_) throw InvariantError("atom is not a function");
    return *argument_;
}

namespace {

int atom_rank(const Atom& a) { return a.is_function() ? 1 : symbol_rank(a.symbol()); }

}  // namespace

bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = atom_rank(a) <=> atom_rank(b); c != 0) return c;
    if (a.is_symbol()) return a.symbol() <=> b.symbol();
    // "cos" sorts before "sin"
    const int fa = a.function_ == FunctionKind::Cos ? 0 : 1;
    const int fb = b.function_ == FunctionKind::Cos ? 0 : 1;
    if (auto c = fa <=> fb; c != 0) return c;
    if (a.argument_ == b.argument_) return std::strong_ordering::equal;
    return *a.argument_ <=> *b.argument_;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const Atom& atom, unsigned exponent) {
    if (exponent > 0) factors_.emplace_back(atom, exponent);
}

unsigned Monomial::exponent_of(const Atom& atom) const {
    for (const auto& [a, e] : factors_)
        if (a == atom) return e;
    return 0;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + other.factors_.size());
    auto i = factors_.begin();
    auto j = other.factors_.begin();
    while (i != factors_.end() && j != other.factors_.end()) {
        auto c = i->first <=> j->first;
        if (c < 0) {
            out.factors_.push_back(*i++);
        } else if (c > 0) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    out.factors_.insert(out.factors_.end(), i, factors_.end());
    out.factors_.insert(out.factors_.end(), j, other.factors_.end());
    return out;
}

Monomial Monomial::without(const Atom& atom) const {
    Monomial out;
    for (const auto& f : factors_)
        if (!(f.first == atom)) out.factors_.push_back(f);
    return out;
}

bool operator==(const Monomial& a, const Monomial& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (auto c = a.factors_[k].first <=> b.factors_[k].first; c != 0) return c;
        if (auto c = a.factors_[k].second <=> b.factors_[k].second; c != 0) return c;
    }
    return a.factors_.size() <=> b.factors_.size();
}

// ---------------------------------------------------------------------------
// Expression

Expression::Expression(long value) : Expression(Rational(value)) {}

Expression::Expression(const Rational& value) { add_term(Monomial{}, value); }

Expression::Expression(const Symbol& symbol) : Expression(Atom(symbol)) {}

Expression::Expression(const Atom& atom) { add_term(Monomial(atom), Rational(1)); }

Expression Expression::from_terms(const std::vector<std::pair<Monomial, Rational>>& terms) {
    Expression out;
    for (const auto& [m, c] : terms) out.add_term(m, c);
    return out;
}

Expression Expression::sin(const Expression& argument) {
    if (argument.is_zero()) return {};
    return Expression(Atom(FunctionKind::Sin, argument));
}

Expression Expression::cos(const Expression& argument) {
    if (argument.is_zero()) return {1L};
    return Expression(Atom(FunctionKind::Cos, argument));
}

Expression sin(const Expression& e) { return Expression::sin(e); }
Expression cos(const Expression& e) { return Expression::cos(e); }

void Expression::add_term(const Monomial& monomial, const Rational& coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (inserted) return;
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
}

std::optional<Rational> Expression::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
}

Rational Expression::coefficient(const Monomial& monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? Rational(0) : it->second;
}

NodeKind Expression::kind() const {
    if (terms_.empty()) return NodeKind::Constant;
    if (terms_.size() > 1) return NodeKind::Sum;
    const auto& [m, c] = *terms_.begin();
    if (m.is_one()) return NodeKind::Constant;
    if (c != 1 || m.factors().size() > 1) return NodeKind::Product;
    const auto& [atom, exponent] = m.factors().front();
    if (exponent > 1) return NodeKind::Power;
    return atom.is_symbol() ? NodeKind::Symbol : NodeKind::Function;
}

Expression Expression::pow(unsigned exponent) const {
    Expression result(1L);
    Expression base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

Expression& Expression::operator+=(const Expression& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Expression& Expression::operator-=(const Expression& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Expression& Expression::operator*=(const Expression& rhs) { return *this = *this * rhs; }

Expression& Expression::operator/=(const Rational& rhs) {
    if (rhs == 0) throw InputError("division by zero");
    for (auto& term : terms_) term.second /= rhs;
    return *this;
}

Expression operator*(const Expression& a, const Expression& b) {
    Expression out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

Expression operator-(const Expression& a) {
    Expression out = a;
    for (auto& term : out.terms_) term.second = -term.second;
    return out;
}

bool operator==(const Expression& a, const Expression& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Expression& a, const Expression& b) {
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
        if (auto c = i->first <=> j->first; c != 0) return c;
        const int c = cmp(i->second, j->second);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms_.size() <=> b.terms_.size();
}

// ---------------------------------------------------------------------------
// Operations

namespace {

Expression monomial_expression(const Monomial& m) { return Expression::from_terms({{m, Rational(1)}}); }

Expression apply_function(FunctionKind fn, const Expression& argument) {
    return fn == FunctionKind::Sin ? Expression::sin(argument) : Expression::cos(argument);
}

// Derivative of a single atom.
Expression atom_derivative(const Atom& atom, const Symbol& x) {
    if (atom.is_function()) {
        Expression inner = differentiate(atom.argument(), x);
        if (inner.is_zero()) return {};
        if (atom.function() == FunctionKind::Sin) return Expression::cos(atom.argument()) * inner;
        return -(Expression::sin(atom.argument()) * inner);
    }
    const Symbol& s = atom.symbol();
    if (s == x) return {1L};
    if (s.kind() == SymbolKind::CoefficientFunction) {
        // coefficient functions depend on the base variables s, t, u
        if (x.kind() == SymbolKind::Independent && (x.name() == "s" || x.name() == "t"))
            return Expression(s.derived(x.name().front()));
        if (x.is_jet() && x.jet_order() == 0) return Expression(s.derived('u'));
    }
    return {};
}

bool contains_atom(const Expression& e, const Atom& target) {
    for (const auto& [m, c] : e.terms()) {
        for (const auto& [a, exponent] : m.factors()) {
            if (a == target) return true;
            if (a.is_function() && contains_atom(a.argument(), target)) return true;
        }
    }
    return false;
}

void collect_atoms(const Expression& e, std::set<Atom>& out) {
    for (const auto& [m, c] : e.terms()) {
        for (const auto& [a, exponent] : m.factors()) {
            out.insert(a);
            if (a.is_function()) collect_atoms(a.argument(), out);
        }
    }
}

}  // namespace

Expression differentiate(const Expression& e, const Symbol& x) {
    Expression out;
    for (const auto& [m, c] : e.terms()) {
        const auto& factors = m.factors();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const auto& [atom, exponent] = factors[k];
            Expression d = atom_derivative(atom, x);
            if (d.is_zero()) continue;
            std::vector<std::pair<Monomial, Rational>> rest{{Monomial{}, c * exponent}};
            Monomial r;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                if (j == k) {
                    if (exponent > 1) r = r * Monomial(atom, exponent - 1);
                } else {
                    r = r * Monomial(factors[j].first, factors[j].second);
                }
            }
            rest.front().first = r;
            out += Expression::from_terms(rest) * d;
        }
    }
    return out;
}

Expression substitute(const Expression& e, const Atom& target, const Expression& replacement) {
    if (!contains_atom(e, target)) return e;
    Expression out;
    for (const auto& [m, c] : e.terms()) {
        Expression term(c);
        Monomial untouched;
        for (const auto& [atom, exponent] : m.factors()) {
            if (atom == target) {
                term *= replacement.pow(exponent);
            } else if (atom.is_function() && contains_atom(atom.argument(), target)) {
                term *= apply_function(atom.function(), substitute(atom.argument(), target, replacement)).pow(exponent);
            } else {
                untouched = untouched * Monomial(atom, exponent);
            }
        }
        out += term * monomial_expression(untouched);
    }
    return out;
}

Expression canonicalize(const Expression& e) { return e; }

std::map<Monomial, Expression> collect_monomials(const Expression& e, const std::set<Atom>& basis) {
    std::map<Monomial, Expression> out;
    for (const auto& [m, c] : e.terms()) {
        Monomial key;
        Monomial rest;
        for (const auto& [atom, exponent] : m.factors()) {
            if (basis.count(atom)) {
                key = key * Monomial(atom, exponent);
                continue;
            }
            if (atom.is_function()) {
                for (const auto& b : basis) {
                    if (contains_atom(atom.argument(), b))
                        throw InputError("non-polynomial dependence on a basis atom inside a function argument");
                }
            }
            rest = rest * Monomial(atom, exponent);
        }
        out[key] += Expression::from_terms({{rest, c}});
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

Expression reassemble(const std::map<Monomial, Expression>& collected) {
    Expression out;
    for (const auto& [m, coefficient] : collected) out += monomial_expression(m) * coefficient;
    return out;
}

double evaluate_numeric(const Expression& e, const std::map<std::string, double>& bindings) {
    double total = 0.0;
    for (const auto& [m, c] : e.terms()) {
        double value = c.get_d();
        for (const auto& [atom, exponent] : m.factors()) {
            double base = 0.0;
            if (atom.is_symbol()) {
                auto it = bindings.find(atom.symbol().name());
                if (it == bindings.end()) throw InputError("unbound symbol: " + atom.symbol().name());
                base = it->second;
            } else {
                const double arg = evaluate_numeric(atom.argument(), bindings);
                base = atom.function() == FunctionKind::Sin ? std::sin(arg) : std::cos(arg);
            }
            double p = 1.0;
            for (unsigned k = 0; k < exponent; ++k) p *= base;
            value *= p;
        }
        total += value;
    }
    return total;
}

std::set<Atom> atoms(const Expression& e) {
    std::set<Atom> out;
    collect_atoms(e, out);
    return out;
}

std::set<Symbol> free_symbols(const Expression& e) {
    std::set<Symbol> out;
    for (const auto& a : atoms(e))
        if (a.is_symbol()) out.insert(a.symbol());
    return out;
}

int max_jet_order(const Expression& e) {
    int order = -1;
    for (const auto& s : free_symbols(e))
        if (s.is_jet()) order = std::max(order, s.jet_order());
    return order;
}

bool depends_on(const Expression& e, const Symbol& x) { return contains_atom(e, Atom(x)); }

}  // namespace liesurf
