#include "liesurf/pde_lang.hpp"

#include <cctype>
#include <vector>

#include "liesurf/errors.hpp"

namespace liesurf {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, Semicolon, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

constexpr unsigned kMaxExponent = 64;
constexpr int kMaxDepth = 200;

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const std::size_t l = line;
        const std::size_t cl = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                const std::size_t frac = j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                if (j == frac) throw ParseError(l, cl, "malformed number");
            }
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '_') {
                ++j;
                while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
            }
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        Tok kind = Tok::End;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '=': kind = Tok::Equals; break;
            case ';': kind = Tok::Semicolon; break;
            default: {
                std::string shown = std::isprint(static_cast<unsigned char>(c))
                                        ? std::string(1, c)
                                        : "\\x" + std::to_string(static_cast<unsigned char>(c));
                throw ParseError(l, cl, "unexpected character '" + shown + "'");
            }
        }
        out.push_back({kind, std::string(1, c), l, cl});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

Rational parse_number(const Token& tok) {
    const auto dot = tok.text.find('.');
    if (dot == std::string::npos) return Rational(mpz_class(tok.text, 10));
    const std::string digits = tok.text.substr(0, dot) + tok.text.substr(dot + 1);
    mpz_class denominator = 1;
    for (std::size_t k = dot + 1; k < tok.text.size(); ++k) denominator *= 10;
    Rational q(mpz_class(digits, 10), denominator);
    q.canonicalize();
    return q;
}

bool is_reserved(const std::string& name) {
    static const std::set<std::string> reserved{"sin", "cos", "u", "xi", "tau", "eta", "s", "t", "x", "y"};
    return reserved.count(name) > 0;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const ParseOptions& options)
        : tokens_(std::move(tokens)), options_(options) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at(Tok kind) const { return peek().kind == kind; }

    [[noreturn]] void fail(const Token& tok, const std::string& message) const {
        throw ParseError(tok.line, tok.column, message);
    }

    void expect(Tok kind, const char* what) {
        if (!at(kind)) fail(peek(), std::string("expected ") + what + describe(peek()));
        take();
    }

    static std::string describe(const Token& tok) {
        if (tok.kind == Tok::End) return ", found end of input";
        return ", found '" + tok.text + "'";
    }

    Expression expression() {
        DepthGuard guard(*this);
        Expression value = term();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            const bool minus = take().kind == Tok::Minus;
            Expression rhs = term();
            value = minus ? value - rhs : value + rhs;
        }
        return value;
    }

private:
    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth) parser.fail(parser.peek(), "expression nested too deeply");
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    Expression term() {
        Expression value = unary();
        while (at(Tok::Star) || at(Tok::Slash)) {
            const Token op = take();
            const Token& start = peek();
            Expression rhs = unary();
            if (op.kind == Tok::Star) {
                value *= rhs;
                continue;
            }
            auto divisor = rhs.constant_value();
            if (!divisor) fail(start, "division is only supported by rational constants");
            if (*divisor == 0) fail(start, "division by zero");
            value /= *divisor;
        }
        return value;
    }

    Expression unary() {
        DepthGuard guard(*this);
        if (at(Tok::Minus)) {
            take();
            return -unary();
        }
        if (at(Tok::Plus)) {
            take();
            return unary();
        }
        return power();
    }

    Expression power() {
        Expression base = primary();
        if (!at(Tok::Caret)) return base;
        take();
        const Token& start = peek();
        Expression exponent = unary();
        auto value = exponent.constant_value();
        if (!value || value->get_den() != 1 || *value < 0)
            fail(start, "exponent must be a non-negative integer constant");
        if (*value > kMaxExponent) fail(start, "exponent too large");
        return base.pow(static_cast<unsigned>(value->get_num().get_ui()));
    }

    Expression primary() {
        const Token tok = take();
        switch (tok.kind) {
            case Tok::Number: return Expression(parse_number(tok));
            case Tok::LParen: {
                Expression inner = expression();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: return identifier(tok);
            default: fail(tok, "expected an operand" + describe(tok));
        }
    }

    Expression identifier(const Token& tok) {
        const std::string& name = tok.text;
        if (name == "sin" || name == "cos") {
            if (!at(Tok::LParen)) fail(peek(), "expected '(' after " + name);
            take();
            Expression arg = expression();
            expect(Tok::RParen, "')'");
            return name == "sin" ? Expression::sin(arg) : Expression::cos(arg);
        }
        const auto underscore = name.find('_');
        const std::string head = name.substr(0, underscore);
        const std::string index = underscore == std::string::npos ? "" : name.substr(underscore + 1);
        if (underscore != std::string::npos && index.empty()) fail(tok, "malformed index in '" + name + "'");

        if (head == "u") {
            for (char c : index)
                if (options_.independent.find(c) == std::string::npos)
                    fail(tok, "malformed jet index in '" + name + "'");
            return Expression(Symbol::jet(index));
        }
        if (head == "xi" || head == "tau" || head == "eta") {
            if (!options_.allow_coefficient_functions) fail(tok, "unknown identifier '" + name + "'");
            for (char c : index)
                if (c != 's' && c != 't' && c != 'u') fail(tok, "malformed derivative index in '" + name + "'");
            return Expression(Symbol::coefficient(head, index));
        }
        if (underscore != std::string::npos) fail(tok, "malformed identifier '" + name + "'");
        if (name.size() == 1 && std::string("stxy").find(name[0]) != std::string::npos) {
            if (options_.independent.find(name[0]) == std::string::npos)
                fail(tok, "unknown identifier '" + name + "'");
            return Expression(Symbol::independent(name));
        }
        if (is_reserved(name)) fail(tok, "unknown identifier '" + name + "'");
        if (options_.parameters && !options_.parameters->count(name))
            fail(tok, "unknown identifier '" + name + "'");
        return Expression(Symbol::parameter(name));
    }

    std::vector<Token> tokens_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view source, const ParseOptions& options) {
    Parser parser(tokenize(source), options);
    if (parser.at(Tok::End)) parser.fail(parser.peek(), "empty expression");
    Expression e = parser.expression();
    if (!parser.at(Tok::End)) parser.fail(parser.peek(), "unexpected token '" + parser.peek().text + "'");
    return e;
}

Expression parse_equation(std::string_view source, const ParseOptions& options) {
    Parser parser(tokenize(source), options);
    if (parser.at(Tok::End)) parser.fail(parser.peek(), "empty expression");
    Expression lhs = parser.expression();
    if (parser.at(Tok::Equals)) {
        parser.take();
        Expression rhs = parser.expression();
        lhs -= rhs;
    }
    if (!parser.at(Tok::End)) parser.fail(parser.peek(), "unexpected token '" + parser.peek().text + "'");
    return lhs;
}

VectorField parse_vector_field(std::string_view source) {
    ParseOptions options;
    options.independent = "st";
    Parser parser(tokenize(source), options);
    Expression xi;
    Expression tau;
    Expression eta;
    std::set<std::string> seen;
    while (!parser.at(Tok::End)) {
        if (parser.at(Tok::Semicolon)) {
            parser.take();
            continue;
        }
        const Token key = parser.take();
        if (key.kind != Tok::Ident || (key.text != "xi" && key.text != "tau" && key.text != "eta"))
            parser.fail(key, "expected xi, tau or eta" + Parser::describe(key));
        if (!seen.insert(key.text).second) parser.fail(key, "duplicate component '" + key.text + "'");
        parser.expect(Tok::Equals, "'='");
        const Token start = parser.peek();
        Expression value = parser.expression();
        if (max_jet_order(value) >= 1)
            parser.fail(start, "jet variable in point-symmetry coefficient '" + key.text + "'");
        (key.text == "xi" ? xi : key.text == "tau" ? tau : eta) = std::move(value);
        if (!parser.at(Tok::End)) parser.expect(Tok::Semicolon, "';'");
    }
    return {xi, tau, eta};
}

// ---------------------------------------------------------------------------
// Printing

std::string print_rational(const Rational& q) { return q.get_str(); }

namespace {

std::string print_atom(const Atom& atom) {
    if (atom.is_symbol()) return atom.symbol().name();
    const char* fn = atom.function() == FunctionKind::Sin ? "sin" : "cos";
    return std::string(fn) + "(" + print_canonical(atom.argument()) + ")";
}

}  // namespace

std::string print_monomial(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string out;
    for (const auto& [atom, exponent] : m.factors()) {
        if (!out.empty()) out += '*';
        out += print_atom(atom);
        if (exponent > 1) out += "^" + std::to_string(exponent);
    }
    return out;
}

std::string print_canonical(const Expression& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        const bool negative = c < 0;
        const Rational magnitude = negative ? Rational(-c) : c;
        std::string body;
        if (m.is_one()) {
            body = print_rational(magnitude);
        } else if (magnitude == 1) {
            body = print_monomial(m);
        } else {
            body = print_rational(magnitude) + "*" + print_monomial(m);
        }
        if (first) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
        first = false;
    }
    return out;
}

std::string print_vector_field(const VectorField& v) {
    return "xi = " + print_canonical(v.xi()) + "; tau = " + print_canonical(v.tau()) +
           "; eta = " + print_canonical(v.eta());
}

}  // namespace liesurf
