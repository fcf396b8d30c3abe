#include "supercover/expr.hpp"

#include <cctype>

namespace supercover {

namespace {

enum class Tok { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string t) { out.push_back({k, std::move(t), line, col}); };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Integer, src.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                      src[j] == '_'))
                ++j;
            push(Tok::Ident, src.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        switch (c) {
            case '+': push(Tok::Plus, "+"); break;
            case '-': push(Tok::Minus, "-"); break;
            case '*': push(Tok::Star, "*"); break;
            case '/': push(Tok::Slash, "/"); break;
            case '^': push(Tok::Caret, "^"); break;
            case '(': push(Tok::LParen, "("); break;
            case ')': push(Tok::RParen, ")"); break;
            default:
                throw ExprError(std::string("unexpected character '") + c + "'", line, col);
        }
        ++col;
        ++i;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, GenSetPtr gs) : toks_(std::move(toks)), gs_(std::move(gs)) {}

    Superfunction run() {
        Superfunction f = expr();
        if (cur().kind != Tok::End) fail("trailing input");
        return f;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError(msg, cur().line, cur().col);
    }

    Superfunction expr() {
        Superfunction f = term();
        while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            bool plus = cur().kind == Tok::Plus;
            advance();
            Superfunction g = term();
            f = plus ? f + g : f - g;
        }
        return f;
    }

    Superfunction term() {
        Superfunction f = unary();
        while (cur().kind == Tok::Star || cur().kind == Tok::Slash) {
            bool mul = cur().kind == Tok::Star;
            const Token& op = cur();
            advance();
            Superfunction g = unary();
            if (mul) {
                f = f * g;
            } else {
                try {
                    f = f / g;
                } catch (const std::domain_error& e) {
                    throw ExprError(e.what(), op.line, op.col);
                }
            }
        }
        return f;
    }

    Superfunction unary() {
        bool neg = false;
        while (cur().kind == Tok::Minus) {
            neg = !neg;
            advance();
        }
        Superfunction f = power();
        return neg ? -f : f;
    }

    Superfunction power() {
        Superfunction f = atom();
        if (cur().kind == Tok::Caret) {
            advance();
            if (cur().kind != Tok::Integer) fail("expected integer exponent");
            unsigned long e = std::stoul(cur().text);
            if (e == 0) fail("exponent must be positive");
            advance();
            f = f.pow(static_cast<unsigned>(e));
        }
        return f;
    }

    Superfunction atom() {
        switch (cur().kind) {
            case Tok::Integer: {
                Rational v(Int(cur().text));
                advance();
                return Superfunction::constant(gs_, v);
            }
            case Tok::Ident: {
                auto idx = gs_->index_of(cur().text);
                if (!idx) fail("unknown identifier '" + cur().text + "'");
                advance();
                return Superfunction::generator(gs_, *idx);
            }
            case Tok::LParen: {
                advance();
                Superfunction f = expr();
                if (cur().kind != Tok::RParen) fail("expected ')'");
                advance();
                return f;
            }
            default:
                fail("expected a value");
        }
    }

    std::vector<Token> toks_;
    GenSetPtr gs_;
    size_t pos_ = 0;
};

bool rational_is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

std::string rat_factor(const Rational& r) {
    // factor position inside a product; fractions get parentheses
    if (rational_is_integer(r)) return rational_to_string(r);
    return "(" + rational_to_string(r) + ")";
}

std::string power_product_text(const PowerProduct& pp, const GeneratorSet& gs) {
    std::string out;
    for (size_t v = 0; v < pp.e.size(); ++v) {
        if (pp.e[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += gs.gen(gs.base_vars()[v]).name;
        if (pp.e[v] > 1) out += "^" + std::to_string(pp.e[v]);
    }
    return out;
}

// single polynomial term with positive coefficient
std::string poly_term_text(const Rational& c, const PowerProduct& pp, const GeneratorSet& gs) {
    std::string vars = power_product_text(pp, gs);
    if (vars.empty()) return rational_to_string(c);
    if (c == 1) return vars;
    return rat_factor(c) + "*" + vars;
}

// sign-extracted sum; suitable at expression level
std::string poly_sum_text(const Poly& p, const GeneratorSet& gs) {
    std::string out;
    for (const auto& [pp, c] : p.terms()) {
        bool neg = c < 0;
        std::string t = poly_term_text(neg ? Rational(-c) : c, pp, gs);
        if (out.empty())
            out = (neg ? "-" : "") + t;
        else
            out += (neg ? " - " : " + ") + t;
    }
    return out.empty() ? "0" : out;
}

bool poly_is_single_term(const Poly& p) { return p.terms().size() == 1; }

// true when the polynomial may appear bare as a divisor: one term,
// coefficient 1, a single variable (to any power)
bool bare_divisor(const Poly& p) {
    if (p.terms().size() != 1) return false;
    const auto& [pp, c] = *p.terms().begin();
    if (c != 1) return false;
    int used = 0;
    for (unsigned e : pp.e)
        if (e > 0) ++used;
    return used == 1;
}

int base_sign(const BaseFunction& f) {
    if (f.is_zero()) return 1;
    return f.num().terms().begin()->second < 0 ? -1 : 1;
}

// standalone rendering (expression level), positive input
std::string base_standalone_text(const BaseFunction& f, const GeneratorSet& gs) {
    if (f.is_polynomial()) return poly_sum_text(f.num(), gs);
    std::string num = poly_is_single_term(f.num()) ? poly_sum_text(f.num(), gs)
                                                   : "(" + poly_sum_text(f.num(), gs) + ")";
    std::string den = bare_divisor(f.den()) ? poly_sum_text(f.den(), gs)
                                            : "(" + poly_sum_text(f.den(), gs) + ")";
    return num + "/" + den;
}

// factor rendering (product position), positive input, never "1"
std::string base_factor_text(const BaseFunction& f, const GeneratorSet& gs) {
    if (!f.is_polynomial()) return "(" + base_standalone_text(f, gs) + ")";
    const Poly& p = f.num();
    if (poly_is_single_term(p)) {
        const auto& [pp, c] = *p.terms().begin();
        return poly_term_text(c, pp, gs);
    }
    return "(" + poly_sum_text(p, gs) + ")";
}

std::string monomial_text(const SuperMonomial& m, const GeneratorSet& gs) {
    std::string out;
    for (const auto& [slot, e] : m.factors) {
        if (!out.empty()) out += "*";
        out += gs.mono_gen(slot).name;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace

Superfunction parse_expr(const std::string& text, const GenSetPtr& gs) {
    return Parser(tokenize(text), gs).run();
}

std::string render_base(const BaseFunction& f, const GeneratorSet& gs) {
    if (f.is_zero()) return "0";
    if (base_sign(f) < 0) return "-" + base_standalone_text(-f, gs);
    return base_standalone_text(f, gs);
}

std::string render_expr(const Superfunction& f) {
    if (f.is_zero()) return "0";
    const GeneratorSet& gs = *f.genset();
    // (negative, text) pairs joined with sign-extracted separators
    std::vector<std::pair<bool, std::string>> parts;
    for (const auto& [m, c] : f.terms()) {
        if (m.is_unit() && c.is_polynomial()) {
            // splice polynomial terms directly into the sum so interior
            // signs stay attached to their own terms
            for (const auto& [pp, coef] : c.num().terms()) {
                bool neg = coef < 0;
                parts.emplace_back(neg, poly_term_text(neg ? Rational(-coef) : coef, pp, gs));
            }
            continue;
        }
        bool neg = base_sign(c) < 0;
        BaseFunction cp = neg ? -c : c;
        if (m.is_unit()) {
            parts.emplace_back(neg, base_standalone_text(cp, gs));
        } else {
            std::string mono = monomial_text(m, gs);
            bool is_one = cp.is_constant() && cp.constant_value() == 1;
            parts.emplace_back(neg, is_one ? mono : base_factor_text(cp, gs) + "*" + mono);
        }
    }
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i == 0)
            out = (parts[i].first ? "-" : "") + parts[i].second;
        else
            out += (parts[i].first ? " - " : " + ") + parts[i].second;
    }
    return out;
}

} // namespace supercover
