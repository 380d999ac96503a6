#ifndef LIESURF_TESTS_SUPPORT_HPP
#define LIESURF_TESTS_SUPPORT_HPP

// Random expression trees kept outside the canonical representation, so they
// can serve as an independent oracle: they are evaluated directly in floating
// point and rendered to fully parenthesized text.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "liesurf/exact_linalg.hpp"
#include "liesurf/expr.hpp"
#include "liesurf/jet.hpp"

namespace liesurf::testkit {

struct RawTree {
    enum class Op { Const, Sym, Add, Sub, Mul, Neg, Pow, Div, Sin, Cos };
    Op op = Op::Const;
    long num = 0;
    long den = 1;
    std::string name;
    unsigned exponent = 0;
    std::vector<RawTree> kids;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Rational rational(int span = 5) {
        return make_rational(uniform(-span, span), uniform(1, 3));
    }

    Rational nonzero_rational(int span = 5) {
        for (;;) {
            Rational q = rational(span);
            if (q != 0) return q;
        }
    }

    RawTree tree(int depth, const std::vector<std::string>& symbols) {
        if (depth <= 0 || uniform(0, 9) < 3) {
            RawTree leaf;
            if (uniform(0, 2) == 0) {
                leaf.op = RawTree::Op::Const;
                leaf.num = uniform(-5, 5);
                leaf.den = uniform(1, 3);
            } else {
                leaf.op = RawTree::Op::Sym;
                leaf.name = symbols[static_cast<std::size_t>(uniform(0, static_cast<int>(symbols.size()) - 1))];
            }
            return leaf;
        }
        RawTree node;
        switch (uniform(0, 9)) {
            case 0:
            case 1: node.op = RawTree::Op::Add; break;
            case 2: node.op = RawTree::Op::Sub; break;
            case 3:
            case 4: node.op = RawTree::Op::Mul; break;
            case 5: node.op = RawTree::Op::Neg; break;
            case 6: node.op = RawTree::Op::Pow; break;
            case 7: node.op = RawTree::Op::Div; break;
            case 8: node.op = RawTree::Op::Sin; break;
            default: node.op = RawTree::Op::Cos; break;
        }
        switch (node.op) {
            case RawTree::Op::Add:
            case RawTree::Op::Sub:
            case RawTree::Op::Mul:
                node.kids = {tree(depth - 1, symbols), tree(depth - 1, symbols)};
                break;
            case RawTree::Op::Pow:
                node.exponent = static_cast<unsigned>(uniform(0, 3));
                node.kids = {tree(depth - 2, symbols)};
                break;
            case RawTree::Op::Div: {
                node.kids = {tree(depth - 1, symbols)};
                do node.num = uniform(-5, 5); while (node.num == 0);
                node.den = uniform(1, 3);
                break;
            }
            default:
                node.kids = {tree(depth - 1, symbols)};
                break;
        }
        return node;
    }

    /// Polynomial in the given symbols with small rational coefficients.
    Expression polynomial(const std::vector<Symbol>& vars, int degree, int terms) {
        Expression out;
        for (int k = 0; k < terms; ++k) {
            Expression term = rational();
            const int d = uniform(0, degree);
            for (int j = 0; j < d; ++j) term *= vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))];
            out += term;
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

inline Expression to_expression(const RawTree& t) {
    using Op = RawTree::Op;
    switch (t.op) {
        case Op::Const: return make_rational(t.num, t.den);
        case Op::Sym: {
            if (t.name == "s" || t.name == "t") return Symbol::independent(t.name);
            if (t.name == "u") return Symbol::jet();
            if (t.name.rfind("u_", 0) == 0) return Symbol::jet(t.name.substr(2));
            const auto us = t.name.find('_');
            if (t.name.rfind("xi", 0) == 0 || t.name.rfind("tau", 0) == 0 || t.name.rfind("eta", 0) == 0)
                return us == std::string::npos ? Symbol::coefficient(t.name) : Symbol::coefficient(t.name.substr(0, us), t.name.substr(us + 1));
            return Symbol::parameter(t.name);
        }
        case Op::Add: return to_expression(t.kids[0]) + to_expression(t.kids[1]);
        case Op::Sub: return to_expression(t.kids[0]) - to_expression(t.kids[1]);
        case Op::Mul: return to_expression(t.kids[0]) * to_expression(t.kids[1]);
        case Op::Neg: return -to_expression(t.kids[0]);
        case Op::Pow: return to_expression(t.kids[0]).pow(t.exponent);
        case Op::Div: return to_expression(t.kids[0]) / make_rational(t.num, t.den);
        case Op::Sin: return Expression::sin(to_expression(t.kids[0]));
        case Op::Cos: return Expression::cos(to_expression(t.kids[0]));
    }
    return {};
}

inline std::string constant_text(long num, long den) {
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return "(" + s + ")";
}

inline std::string to_text(const RawTree& t) {
    using Op = RawTree::Op;
    switch (t.op) {
        case Op::Const: return constant_text(t.num, t.den);
        case Op::Sym: return t.name;
        case Op::Add: return "(" + to_text(t.kids[0]) + " + " + to_text(t.kids[1]) + ")";
        case Op::Sub: return "(" + to_text(t.kids[0]) + " - " + to_text(t.kids[1]) + ")";
        case Op::Mul: return "(" + to_text(t.kids[0]) + "*" + to_text(t.kids[1]) + ")";
        case Op::Neg: return "(-" + to_text(t.kids[0]) + ")";
        case Op::Pow: return "(" + to_text(t.kids[0]) + ")^" + std::to_string(t.exponent);
        case Op::Div: return "(" + to_text(t.kids[0]) + "/" + constant_text(t.num, t.den) + ")";
        case Op::Sin: return "sin(" + to_text(t.kids[0]) + ")";
        case Op::Cos: return "cos(" + to_text(t.kids[0]) + ")";
    }
    return {};
}

struct Evaluation {
    double value = 0;
    double magnitude = 0;  // same tree with every sum replaced by a sum of absolute values
};

inline Evaluation evaluate(const RawTree& t, const std::map<std::string, double>& at) {
    using Op = RawTree::Op;
    auto kid = [&](std::size_t k) { return evaluate(t.kids[k], at); };
    switch (t.op) {
        case Op::Const: {
            const double v = static_cast<double>(t.num) / static_cast<double>(t.den);
            return {v, std::abs(v)};
        }
        case Op::Sym: {
            const double v = at.at(t.name);
            return {v, std::abs(v)};
        }
        case Op::Add: {
            auto a = kid(0), b = kid(1);
            return {a.value + b.value, a.magnitude + b.magnitude};
        }
        case Op::Sub: {
            auto a = kid(0), b = kid(1);
            return {a.value - b.value, a.magnitude + b.magnitude};
        }
        case Op::Mul: {
            auto a = kid(0), b = kid(1);
            return {a.value * b.value, a.magnitude * b.magnitude};
        }
        case Op::Neg: {
            auto a = kid(0);
            return {-a.value, a.magnitude};
        }
        case Op::Pow: {
            auto a = kid(0);
            return {std::pow(a.value, t.exponent), std::pow(a.magnitude, t.exponent)};
        }
        case Op::Div: {
            auto a = kid(0);
            const double c = static_cast<double>(t.num) / static_cast<double>(t.den);
            return {a.value / c, a.magnitude / std::abs(c)};
        }
        case Op::Sin: {
            auto a = kid(0);
            return {std::sin(a.value), 1.0 + a.magnitude};
        }
        case Op::Cos: {
            auto a = kid(0);
            return {std::cos(a.value), 1.0 + a.magnitude};
        }
    }
    return {};
}

/// Coordinates of point fields over the union of their (component, monomial)
/// pairs, one row per field.
inline RationalMatrix field_matrix(const std::vector<VectorField>& fields, std::size_t* columns) {
    std::map<std::pair<int, Monomial>, std::size_t> index;
    for (const auto& v : fields) {
        int c = 0;
        for (const Expression* e : {&v.xi(), &v.tau(), &v.eta()}) {
            for (const auto& [m, q] : e->terms()) index.emplace(std::make_pair(c, m), 0);
            ++c;
        }
    }
    std::size_t n = 0;
    for (auto& [key, col] : index) col = n++;
    RationalMatrix rows;
    for (const auto& v : fields) {
        RationalVector row(n, Rational(0));
        int c = 0;
        for (const Expression* e : {&v.xi(), &v.tau(), &v.eta()}) {
            for (const auto& [m, q] : e->terms()) row[index.at({c, m})] = q;
            ++c;
        }
        rows.push_back(std::move(row));
    }
    *columns = n;
    return rows;
}

/// True if both lists span the same space of fields.
inline bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
    std::vector<VectorField> both = a;
    both.insert(both.end(), b.begin(), b.end());
    std::size_t na = 0, nb = 0, n = 0;
    const RationalMatrix ma = field_matrix(a, &na);
    const RationalMatrix mb = field_matrix(b, &nb);
    const RationalMatrix m = field_matrix(both, &n);
    const std::size_t r = exact_rank(m, n);
    return exact_rank(ma, na) == r && exact_rank(mb, nb) == r;
}

}  // namespace liesurf::testkit

#endif  // LIESURF_TESTS_SUPPORT_HPP
