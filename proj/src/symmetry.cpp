#include "liesurf/symmetry.hpp"

#include <algorithm>
#include <set>

#include "liesurf/errors.hpp"
#include "liesurf/exact_linalg.hpp"
#include "liesurf/pde_lang.hpp"

namespace liesurf {
namespace {

// Rational coefficient c with phi = c * leading + rest, rest free of leading.
std::optional<std::pair<Rational, Expression>> split_linear(const Expression& phi, const Symbol& leading) {
    std::map<Monomial, Expression> parts;
    try {
        parts = collect_monomials(phi, {Atom(leading)});
    } catch (const InputError&) {
        return std::nullopt;
    }
    Expression rest;
    std::optional<Rational> coefficient;
    for (const auto& [m, c] : parts) {
        if (m.is_one()) {
            rest = c;
        } else if (m == Monomial(Atom(leading))) {
            coefficient = c.constant_value();
            if (!coefficient || *coefficient == 0) return std::nullopt;
        } else {
            return std::nullopt;
        }
    }
    if (!coefficient) return std::nullopt;
    return std::make_pair(*coefficient, rest);
}

std::string infer_independent(const Expression& phi) {
    bool st = false;
    bool xy = false;
    for (const auto& s : free_symbols(phi)) {
        std::string letters;
        if (s.is_jet()) letters = s.index();
        else if (s.kind() == SymbolKind::Independent) letters = s.name();
        for (char c : letters) {
            st = st || c == 's' || c == 't';
            xy = xy || c == 'x' || c == 'y';
        }
    }
    if (st && xy) throw InputError("PDE mixes (s, t) and (x, y) coordinates");
    return xy ? "xy" : "st";
}

Symbol coordinate(char letter) { return Symbol::independent(std::string(1, letter)); }

}  // namespace

// ---------------------------------------------------------------------------
// PdeProblem

PdeProblem::PdeProblem(Expression phi, Symbol leading, ParameterMap parameters)
    : phi_(std::move(phi)), leading_(std::move(leading)), parameters_(std::move(parameters)) {
    if (!leading_.is_jet() || leading_.jet_order() < 1)
        throw InputError("leading variable must be a derivative of u");
    auto split = split_linear(phi_, leading_);
    if (!split)
        throw InputError("PDE must be linear in " + leading_.name() + " with a nonzero constant coefficient");
    leading_coefficient_ = split->first;
    solved_rhs_ = -split->second / leading_coefficient_;
    order_ = max_jet_order(phi_);
    independent_ = infer_independent(phi_);
    for (const auto& s : free_symbols(phi_))
        if (s.kind() == SymbolKind::Parameter) parameters_.try_emplace(s.name());
}

PdeProblem PdeProblem::from_expression(Expression phi, ParameterMap parameters) {
    std::vector<Symbol> jets;
    for (const auto& s : free_symbols(phi))
        if (s.is_jet() && s.jet_order() >= 1) jets.push_back(s);
    std::stable_sort(jets.begin(), jets.end(),
                     [](const Symbol& a, const Symbol& b) { return a.jet_order() > b.jet_order(); });
    for (const auto& j : jets)
        if (split_linear(phi, j)) return {std::move(phi), j, std::move(parameters)};
    throw InputError("no derivative of u enters the PDE linearly with a constant coefficient");
}

std::vector<std::string> PdeProblem::parameter_symbols() const {
    std::vector<std::string> out;
    for (const auto& s : free_symbols(phi_))
        if (s.kind() == SymbolKind::Parameter) out.push_back(s.name());
    return out;
}

PdeProblem PdeProblem::bind(const std::map<std::string, Rational>& values) const {
    Expression phi = phi_;
    ParameterMap remaining = parameters_;
    for (const auto& [name, value] : values) {
        phi = substitute(phi, Atom(Symbol::parameter(name)), Expression(value));
        remaining.erase(name);
    }
    return {phi, leading_, remaining};
}

std::string PdeProblem::solved_form() const { return leading_.name() + " = " + print_canonical(solved_rhs_); }

// ---------------------------------------------------------------------------
// Symmetry condition and determining systems

Expression eliminate_on_shell(const PdeProblem& p, const Expression& e) {
    const MultiIndex lead(p.leading().index());
    Expression out = e;
    for (int guard = 0; guard < 64; ++guard) {
        std::optional<Symbol> target;
        for (const auto& s : free_symbols(out)) {
            if (!s.is_jet() || !MultiIndex(s.index()).contains(lead)) continue;
            if (!target || s.jet_order() > target->jet_order()) target = s;
        }
        if (!target) return out;
        const MultiIndex extra = MultiIndex(target->index()).minus(lead);
        out = substitute(out, Atom(*target), total_derivative(p.solved_rhs(), extra));
    }
    throw InvariantError("on-shell elimination did not terminate");
}

Expression symmetry_condition(const PdeProblem& p, const VectorField& v) {
    if (p.independent() != "st") throw PreconditionError("symmetry analysis requires a PDE in (s, t)");
    const int order = std::max(p.order(), 1);
    return eliminate_on_shell(p, apply_generator(prolong(v, order), p.phi()));
}

DeterminingSystem determining_system(const PdeProblem& p) { return determining_system(p, VectorField::generic()); }

DeterminingSystem determining_system(const PdeProblem& p, const VectorField& v) {
    const Expression condition = symmetry_condition(p, v);
    std::set<Atom> basis;
    for (const auto& s : free_symbols(condition))
        if (s.is_jet() && s.jet_order() >= 1) basis.insert(Atom(s));
    DeterminingSystem out;
    for (auto& [m, c] : collect_monomials(condition, basis)) out.equations.push_back({m, c});
    return out;
}

Expression apply_forced_zero(const Expression& e, const std::vector<Symbol>& forced) {
    Expression out = e;
    for (const auto& s : free_symbols(e)) {
        if (s.kind() != SymbolKind::CoefficientFunction) continue;
        const MultiIndex index(s.index());
        for (const auto& f : forced) {
            if (f.base() == s.base() && index.contains(MultiIndex(f.index()))) {
                out = substitute(out, Atom(s), Expression());
                break;
            }
        }
    }
    return out;
}

namespace {

std::optional<Symbol> single_coefficient_symbol(const Expression& e) {
    if (e.terms().size() != 1) return std::nullopt;
    const auto& factors = e.terms().begin()->first.factors();
    if (factors.size() != 1 || !factors.front().first.is_symbol()) return std::nullopt;
    const Symbol& s = factors.front().first.symbol();
    if (s.kind() != SymbolKind::CoefficientFunction) return std::nullopt;
    return s;
}

}  // namespace

ReducedSystem reduce(const DeterminingSystem& system) {
    std::vector<Symbol> forced;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& eq : system.equations) {
            auto s = single_coefficient_symbol(apply_forced_zero(eq.coefficient, forced));
            if (s && std::find(forced.begin(), forced.end(), *s) == forced.end()) {
                forced.push_back(*s);
                changed = true;
            }
        }
    }
    ReducedSystem out;
    for (const auto& f : forced) {
        const bool implied = std::any_of(forced.begin(), forced.end(), [&](const Symbol& g) {
            return !(g == f) && g.base() == f.base() && MultiIndex(f.index()).contains(MultiIndex(g.index()));
        });
        if (!implied) out.forced_zero.push_back(f);
    }
    std::sort(out.forced_zero.begin(), out.forced_zero.end());
    for (const auto& eq : system.equations) {
        Expression c = apply_forced_zero(eq.coefficient, out.forced_zero);
        if (!c.is_zero()) out.equations.push_back({eq.monomial, std::move(c)});
    }
    return out;
}

VerifyResult verify_generator(const PdeProblem& p, const VectorField& v) {
    VerifyResult out;
    out.residual = symmetry_condition(p, v);
    out.holds = out.residual.is_zero();
    if (out.holds) return out;
    for (const auto& s : free_symbols(out.residual)) {
        if (s.kind() != SymbolKind::Parameter) continue;
        auto it = p.parameters().find(s.name());
        if (it != p.parameters().end() && it->second.nonzero) continue;
        if (substitute(out.residual, Atom(s), Expression()).is_zero()) out.holds_if_zero.push_back(s.name());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial ansatz

AnsatzSolution solve_polynomial_ansatz(const PdeProblem& p, int degree) {
    if (degree < 0 || degree > kMaxAnsatzDegree)
        throw PreconditionError("ansatz degree must be between 0 and " + std::to_string(kMaxAnsatzDegree));
    for (const auto& s : free_symbols(p.phi())) {
        if (s.kind() == SymbolKind::Parameter)
            throw PreconditionError("parameter " + s.name() + " must be bound to a rational value");
        if (s.kind() == SymbolKind::CoefficientFunction)
            throw PreconditionError("PDE must not contain coefficient functions");
    }

    const Expression s(sym_s());
    const Expression t(sym_t());
    const Expression u(sym_u());
    std::vector<Expression> monomials;
    for (int total = 0; total <= degree; ++total)
        for (int i = total; i >= 0; --i)
            for (int j = total - i; j >= 0; --j)
                monomials.push_back(s.pow(static_cast<unsigned>(i)) * t.pow(static_cast<unsigned>(j)) *
                                    u.pow(static_cast<unsigned>(total - i - j)));

    std::vector<VectorField> unknowns;
    for (int component = 0; component < 3; ++component) {
        for (const auto& m : monomials) {
            if (component == 0) unknowns.emplace_back(m, Expression(), Expression());
            else if (component == 1) unknowns.emplace_back(Expression(), m, Expression());
            else unknowns.emplace_back(Expression(), Expression(), m);
        }
    }

    // Each monomial over all atoms (jets, s, t, u, sin u, cos u) is treated as
    // linearly independent, giving one linear equation per monomial.
    std::map<Monomial, std::map<std::size_t, Rational>> rows;
    for (std::size_t col = 0; col < unknowns.size(); ++col) {
        const Expression condition = symmetry_condition(p, unknowns[col]);
        for (const auto& [m, c] : condition.terms()) rows[m][col] = c;
    }
    RationalMatrix matrix;
    matrix.reserve(rows.size());
    for (const auto& [m, entries] : rows) {
        RationalVector row(unknowns.size(), Rational(0));
        for (const auto& [col, c] : entries) row[col] = c;
        matrix.push_back(std::move(row));
    }

    AnsatzSolution out;
    out.degree = degree;
    for (const auto& x : exact_nullspace(matrix, unknowns.size())) {
        VectorField v;
        for (std::size_t col = 0; col < x.size(); ++col)
            if (x[col] != 0) v = v + x[col] * unknowns[col];
        if (!verify_generator(p, v).holds) throw InvariantError("ansatz basis field fails verification");
        out.basis.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Change of variables

namespace {

Expression jet_expr(const char* index) { return Expression(Symbol::jet(index)); }

PdeProblem normalized(const Expression& phi, const Symbol& leading, const ParameterMap& parameters) {
    auto split = split_linear(phi, leading);
    if (!split) throw PreconditionError("transformed PDE is not linear in " + leading.name() + " with a constant coefficient");
    return {phi / split->first, leading, parameters};
}

}  // namespace

PdeProblem kovalevskaya_transform(const PdeProblem& p) {
    if (p.independent() != "st" || p.order() != 2 || p.leading() != Symbol::jet("st"))
        throw PreconditionError("Kovalevskaya transform requires a second-order PDE in (s, t) solved for u_st");
    const Expression x(coordinate('x'));
    const Expression y(coordinate('y'));
    const Expression ux = jet_expr("x");
    const Expression uy = jet_expr("y");
    const Expression uxx = jet_expr("xx");
    const Expression uxy = jet_expr("xy");
    const Expression uyy = jet_expr("yy");

    // s = (x - y)/2, t = (x + y)/2, d/ds = d/dx - d/dy, d/dt = d/dx + d/dy
    Expression phi = p.phi();
    phi = substitute(phi, Atom(coordinate('s')), (x - y) / 2);
    phi = substitute(phi, Atom(coordinate('t')), (x + y) / 2);
    phi = substitute(phi, Atom(Symbol::jet("s")), ux - uy);
    phi = substitute(phi, Atom(Symbol::jet("t")), ux + uy);
    phi = substitute(phi, Atom(Symbol::jet("ss")), uxx - Expression(2L) * uxy + uyy);
    phi = substitute(phi, Atom(Symbol::jet("st")), uxx - uyy);
    phi = substitute(phi, Atom(Symbol::jet("tt")), uxx + Expression(2L) * uxy + uyy);
    return normalized(phi, Symbol::jet("xx"), p.parameters());
}

PdeProblem inverse_kovalevskaya_transform(const PdeProblem& p) {
    if (p.independent() != "xy" || p.order() > 2)
        throw PreconditionError("inverse Kovalevskaya transform requires a PDE of order <= 2 in (x, y)");
    const Expression s(coordinate('s'));
    const Expression t(coordinate('t'));
    const Expression us = jet_expr("s");
    const Expression ut = jet_expr("t");
    const Expression uss = jet_expr("ss");
    const Expression ust = jet_expr("st");
    const Expression utt = jet_expr("tt");

    // x = t + s, y = t - s, d/dx = (d/ds + d/dt)/2, d/dy = (d/dt - d/ds)/2
    Expression phi = p.phi();
    phi = substitute(phi, Atom(coordinate('x')), t + s);
    phi = substitute(phi, Atom(coordinate('y')), t - s);
    phi = substitute(phi, Atom(Symbol::jet("x")), (us + ut) / 2);
    phi = substitute(phi, Atom(Symbol::jet("y")), (ut - us) / 2);
    phi = substitute(phi, Atom(Symbol::jet("xx")), (uss + Expression(2L) * ust + utt) / 4);
    phi = substitute(phi, Atom(Symbol::jet("xy")), (utt - uss) / 4);
    phi = substitute(phi, Atom(Symbol::jet("yy")), (uss - Expression(2L) * ust + utt) / 4);
    return normalized(phi, Symbol::jet("st"), p.parameters());
}

// ---------------------------------------------------------------------------
// Maximal rank

MaximalRankReport maximal_rank_check(const Expression& phi, const std::string& independent) {
    MaximalRankReport out;
    std::vector<Symbol> coordinates;
    for (int k = std::max(max_jet_order(phi), 1); k >= 1; --k)
        for (const auto& j : MultiIndex::all_of_order(independent, k)) coordinates.push_back(jet_symbol(j));
    coordinates.push_back(sym_u());
    for (char c : independent) coordinates.push_back(coordinate(c));
    for (const auto& x : coordinates) {
        Expression partial = differentiate(phi, x);
        auto value = partial.constant_value();
        if (!out.witness && value && *value != 0) out.witness = x;
        out.gradient.emplace_back(x, std::move(partial));
    }
    return out;
}

MaximalRankReport maximal_rank_check(const PdeProblem& p) { return maximal_rank_check(p.phi(), p.independent()); }

}  // namespace liesurf
