#ifndef LIESURF_JET_HPP
#define LIESURF_JET_HPP

// Jet space over two independent variables and one dependent variable u:
// multi-indices, total derivatives and prolongation of point vector fields.

#include <map>
#include <string>
#include <vector>

#include "liesurf/expr.hpp"

namespace liesurf {

/// Sorted multiset of independent-variable letters; (s,t) and (t,s) coincide.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::string letters);

    const std::string& letters() const noexcept { return letters_; }
    int order() const noexcept { return static_cast<int>(letters_.size()); }
    MultiIndex with(char variable) const { return MultiIndex(letters_ + variable); }
    /// True if every letter of `other` occurs in this index (with multiplicity).
    bool contains(const MultiIndex& other) const;
    /// This index with the letters of `other` removed; requires contains(other).
    MultiIndex minus(const MultiIndex& other) const;

    /// Every sorted multi-index of exactly the given order over `variables`.
    static std::vector<MultiIndex> all_of_order(const std::string& variables, int order);

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
        if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
        return a.letters_ <=> b.letters_;
    }

private:
    std::string letters_;
};

Symbol jet_symbol(const MultiIndex& index);

inline const Symbol& sym_s() { static const Symbol s = Symbol::independent("s"); return s; }
inline const Symbol& sym_t() { static const Symbol t = Symbol::independent("t"); return t; }
inline const Symbol& sym_u() { static const Symbol u = Symbol::jet(); return u; }

/// D_i e = de/dx_i + sum_J u_{J,i} de/du_J, summed over the jet symbols that
/// actually occur in e.
Expression total_derivative(const Expression& e, const Symbol& variable);

/// D_J = D_{j1} ... D_{jk}.
Expression total_derivative(const Expression& e, const MultiIndex& index);

/// v = xi d/ds + tau d/dt + eta d/du with coefficients in (s, t, u).
class VectorField {
public:
    VectorField() = default;
    /// Throws InputError if a coefficient mentions a jet of order >= 1.
    VectorField(Expression xi, Expression tau, Expression eta);

    /// Fully generic field with opaque coefficient functions xi, tau, eta.
    static VectorField generic();

    const Expression& xi() const noexcept { return xi_; }
    const Expression& tau() const noexcept { return tau_; }
    const Expression& eta() const noexcept { return eta_; }
    bool is_zero() const { return xi_.is_zero() && tau_.is_zero() && eta_.is_zero(); }

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const Rational& c, const VectorField& v);
    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    Expression xi_;
    Expression tau_;
    Expression eta_;
};

/// pr^(m) v: the base field plus phi^J for every multi-index of order 1..m.
struct ProlongedField {
    VectorField base;
    int order = 0;
    std::map<MultiIndex, Expression> phi;

    const Expression& coefficient(const MultiIndex& index) const;
};

inline constexpr int kMaxProlongationOrder = 4;

/// phi^J = D_J(eta - xi u_s - tau u_t) + xi u_{J,s} + tau u_{J,t}.
/// Throws PreconditionError unless 1 <= order <= kMaxProlongationOrder.
ProlongedField prolong(const VectorField& v, int order);

/// pr v [e]: the derivative of e along the prolonged field. Throws
/// PreconditionError if e involves jets above the prolongation order.
Expression apply_generator(const ProlongedField& pv, const Expression& e);

/// Replaces the opaque coefficient functions xi, tau, eta (and all their
/// partials) of `e` with the derivatives of the concrete field `v`.
Expression instantiate(const Expression& e, const VectorField& v);

}  // namespace liesurf

#endif  // LIESURF_JET_HPP
