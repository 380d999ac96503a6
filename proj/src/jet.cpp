#include "liesurf/jet.hpp"

#include <algorithm>

#include "liesurf/errors.hpp"

namespace liesurf {

MultiIndex::MultiIndex(std::string letters) : letters_(std::move(letters)) {
    std::sort(letters_.begin(), letters_.end());
}

bool MultiIndex::contains(const MultiIndex& other) const {
    return std::includes(letters_.begin(), letters_.end(), other.letters_.begin(), other.letters_.end());
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
    std::string out;
    std::set_difference(letters_.begin(), letters_.end(), other.letters_.begin(), other.letters_.end(),
                        std::back_inserter(out));
    return MultiIndex(out);
}

std::vector<MultiIndex> MultiIndex::all_of_order(const std::string& variables, int order) {
    std::string vars = variables;
    std::sort(vars.begin(), vars.end());
    std::vector<MultiIndex> out;
    // non-decreasing sequences of length `order` over vars
    std::vector<std::size_t> pick(static_cast<std::size_t>(order), 0);
    if (order == 0) return {MultiIndex()};
    while (true) {
        std::string letters;
        for (auto p : pick) letters += vars[p];
        out.emplace_back(letters);
        int k = order - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] + 1 == vars.size()) --k;
        if (k < 0) break;
        const auto next = pick[static_cast<std::size_t>(k)] + 1;
        for (auto j = static_cast<std::size_t>(k); j < pick.size(); ++j) pick[j] = next;
    }
    return out;
}

Symbol jet_symbol(const MultiIndex& index) { return Symbol::jet(index.letters()); }

Expression total_derivative(const Expression& e, const Symbol& variable) {
    if (variable.kind() != SymbolKind::Independent || variable.name().size() != 1)
        throw InputError("total derivative requires a single-letter independent variable");
    const char letter = variable.name().front();
    Expression out = differentiate(e, variable);
    // u is always a potential dependency: coefficient functions depend on it
    // implicitly even when u itself does not occur.
    std::set<Symbol> jets;
    jets.insert(sym_u());
    for (const auto& s : free_symbols(e))
        if (s.is_jet()) jets.insert(s);
    for (const auto& j : jets) {
        Expression partial = differentiate(e, j);
        if (partial.is_zero()) continue;
        out += Expression(j.derived(letter)) * partial;
    }
    return out;
}

Expression total_derivative(const Expression& e, const MultiIndex& index) {
    Expression out = e;
    for (char c : index.letters()) out = total_derivative(out, Symbol::independent(std::string(1, c)));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_point_coefficient(const Expression& e, const char* which) {
    if (max_jet_order(e) >= 1)
        throw InputError(std::string("jet variable in point-symmetry coefficient ") + which);
}

}  // namespace

VectorField::VectorField(Expression xi, Expression tau, Expression eta)
    : xi_(std::move(xi)), tau_(std::move(tau)), eta_(std::move(eta)) {
    require_point_coefficient(xi_, "xi");
    require_point_coefficient(tau_, "tau");
    require_point_coefficient(eta_, "eta");
}

VectorField VectorField::generic() {
    return {Expression(Symbol::coefficient("xi")), Expression(Symbol::coefficient("tau")),
            Expression(Symbol::coefficient("eta"))};
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return {a.xi_ + b.xi_, a.tau_ + b.tau_, a.eta_ + b.eta_};
}

VectorField operator*(const Rational& c, const VectorField& v) {
    const Expression k(c);
    return {k * v.xi_, k * v.tau_, k * v.eta_};
}

const Expression& ProlongedField::coefficient(const MultiIndex& index) const {
    if (index.order() == 0) return base.eta();
    auto it = phi.find(index);
    if (it == phi.end()) throw PreconditionError("prolongation order too low for u_" + index.letters());
    return it->second;
}

ProlongedField prolong(const VectorField& v, int order) {
    if (order < 1 || order > kMaxProlongationOrder)
        throw PreconditionError("prolongation order must be between 1 and " + std::to_string(kMaxProlongationOrder));
    const Expression u_s(jet_symbol(MultiIndex("s")));
    const Expression u_t(jet_symbol(MultiIndex("t")));
    // characteristic Q = eta - xi u_s - tau u_t
    const Expression q = v.eta() - v.xi() * u_s - v.tau() * u_t;

    ProlongedField out{v, order, {}};
    std::map<MultiIndex, Expression> dq{{MultiIndex(), q}};
    for (int k = 1; k <= order; ++k) {
        for (const auto& j : MultiIndex::all_of_order("st", k)) {
            // D_J Q from the cached D_{J minus last letter} Q
            const char last = j.letters().back();
            const MultiIndex parent(j.letters().substr(0, j.letters().size() - 1));
            Expression d = total_derivative(dq.at(parent), Symbol::independent(std::string(1, last)));
            out.phi[j] = d + v.xi() * Expression(jet_symbol(j.with('s'))) +
                         v.tau() * Expression(jet_symbol(j.with('t')));
            dq.emplace(j, std::move(d));
        }
    }
    return out;
}

Expression apply_generator(const ProlongedField& pv, const Expression& e) {
    if (max_jet_order(e) > pv.order)
        throw PreconditionError("expression involves jets above prolongation order " + std::to_string(pv.order));
    Expression out = pv.base.xi() * differentiate(e, sym_s()) + pv.base.tau() * differentiate(e, sym_t()) +
                     pv.base.eta() * differentiate(e, sym_u());
    for (const auto& [index, coefficient] : pv.phi) {
        Expression partial = differentiate(e, jet_symbol(index));
        if (!partial.is_zero()) out += coefficient * partial;
    }
    return out;
}

Expression instantiate(const Expression& e, const VectorField& v) {
    Expression out = e;
    for (const auto& s : free_symbols(e)) {
        if (s.kind() != SymbolKind::CoefficientFunction) continue;
        const Expression* concrete = nullptr;
        if (s.base() == "xi") concrete = &v.xi();
        else if (s.base() == "tau") concrete = &v.tau();
        else if (s.base() == "eta") concrete = &v.eta();
        else continue;
        Expression value = *concrete;
        for (char c : s.index()) value = differentiate(value, c == 'u' ? sym_u() : Symbol::independent(std::string(1, c)));
        out = substitute(out, Atom(s), value);
    }
    return out;
}

}  // namespace liesurf
