#ifndef LIESURF_SYMMETRY_HPP
#define LIESURF_SYMMETRY_HPP

// Lie point symmetries of a scalar PDE Phi(s, t, u^(m)) = 0: the on-shell
// symmetry condition, the determining system and its syntactic reduction,
// generator verification, a polynomial-ansatz solver, the characteristic to
// Kovalevskaya change of variables and the maximal-rank witness.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liesurf/expr.hpp"
#include "liesurf/jet.hpp"

namespace liesurf {

struct ParameterInfo {
    bool nonzero = false;
};

using ParameterMap = std::map<std::string, ParameterInfo>;

/// A scalar PDE together with the jet it is solved for. Phi is linear in the
/// leading jet with a nonzero rational coefficient, so on-shell elimination
/// needs no division by expressions.
class PdeProblem {
public:
    /// Throws InputError if `leading` does not enter Phi linearly with a
    /// nonzero constant coefficient.
    PdeProblem(Expression phi, Symbol leading, ParameterMap parameters = {});

    /// Picks the leading jet automatically: the first highest-order jet that
    /// enters linearly with a constant coefficient.
    static PdeProblem from_expression(Expression phi, ParameterMap parameters = {});

    const Expression& phi() const noexcept { return phi_; }
    const Symbol& leading() const noexcept { return leading_; }
    const Rational& leading_coefficient() const noexcept { return leading_coefficient_; }
    /// Value of the leading jet on the solution set: leading = solved_rhs().
    const Expression& solved_rhs() const noexcept { return solved_rhs_; }
    int order() const noexcept { return order_; }
    /// Independent-variable letters, "st" or "xy".
    const std::string& independent() const noexcept { return independent_; }
    const ParameterMap& parameters() const noexcept { return parameters_; }
    /// Parameter symbols that actually occur in Phi.
    std::vector<std::string> parameter_symbols() const;

    /// Substitutes rational values for parameters.
    PdeProblem bind(const std::map<std::string, Rational>& values) const;

    /// "u_st = -K*sin(u)"
    std::string solved_form() const;

private:
    Expression phi_;
    Symbol leading_;
    Rational leading_coefficient_;
    Expression solved_rhs_;
    int order_ = 0;
    std::string independent_;
    ParameterMap parameters_;
};

/// Replaces the leading jet, and any jet that is a derivative of it, by its
/// on-shell value until none remain. Idempotent.
Expression eliminate_on_shell(const PdeProblem& p, const Expression& e);

/// pr^(m) v [Phi] restricted to Phi = 0.
Expression symmetry_condition(const PdeProblem& p, const VectorField& v);

struct DeterminingEquation {
    Monomial monomial;       // monomial in jets of order >= 1
    Expression coefficient;  // must vanish identically in (s, t, u)
};

struct DeterminingSystem {
    std::vector<DeterminingEquation> equations;
};

/// Coefficients of the symmetry condition of the generic field, grouped by
/// monomials in the jets of order 1..m, in monomial order.
DeterminingSystem determining_system(const PdeProblem& p);

/// Same as above for an arbitrary (possibly partially concrete) field.
DeterminingSystem determining_system(const PdeProblem& p, const VectorField& v);

struct ReducedSystem {
    /// Minimal set of coefficient-function partials forced to vanish; every
    /// further partial of one of these vanishes too.
    std::vector<Symbol> forced_zero;
    /// Remaining nonzero equations after propagating forced_zero.
    std::vector<DeterminingEquation> equations;
};

/// Applies the syntactic consequences of the raw system: an equation that is
/// a single coefficient-function partial (times a constant) forces that
/// partial, and all of its derivatives, to zero; iterated to a fixed point.
ReducedSystem reduce(const DeterminingSystem& system);

/// Sets every partial of a coefficient function implied by `forced` to zero.
Expression apply_forced_zero(const Expression& e, const std::vector<Symbol>& forced);

struct VerifyResult {
    bool holds = false;
    Expression residual;
    /// Parameters not flagged nonzero whose vanishing kills the residual.
    std::vector<std::string> holds_if_zero;
};

VerifyResult verify_generator(const PdeProblem& p, const VectorField& v);

inline constexpr int kMaxAnsatzDegree = 4;

struct AnsatzSolution {
    int degree = 0;
    std::vector<VectorField> basis;
    std::size_t dimension() const noexcept { return basis.size(); }
};

/// Expands xi, tau, eta over all monomials s^i t^j u^k with i+j+k <= degree
/// and returns a basis of the exact nullspace of the resulting linear system.
/// Parameters must already be bound to rationals.
AnsatzSolution solve_polynomial_ansatz(const PdeProblem& p, int degree);

/// x = t + s, y = t - s. Requires a second-order PDE in (s, t) solved for u_st;
/// returns the PDE in (x, y) solved for u_xx (normalized to coefficient 1).
PdeProblem kovalevskaya_transform(const PdeProblem& p);

/// Inverse change of variables back to (s, t), normalized so that u_st has
/// coefficient 1.
PdeProblem inverse_kovalevskaya_transform(const PdeProblem& p);

struct MaximalRankReport {
    /// Partial derivatives of Phi in the order they were examined.
    std::vector<std::pair<Symbol, Expression>> gradient;
    /// First coordinate whose partial is a nonzero constant.
    std::optional<Symbol> witness;
    bool has_constant_witness() const noexcept { return witness.has_value(); }
};

/// Examines jets from the highest order down, then u, then the independent
/// variables.
MaximalRankReport maximal_rank_check(const Expression& phi, const std::string& independent = "st");
MaximalRankReport maximal_rank_check(const PdeProblem& p);

}  // namespace liesurf

#endif  // LIESURF_SYMMETRY_HPP
