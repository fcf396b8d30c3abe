#include "supercover/base_fn.hpp"

#include <optional>
#include <stdexcept>

namespace supercover {

namespace {

// Integer content normalization: scale both polynomials by the same rational
// so all coefficients are integers with overall gcd 1 and the denominator's
// leading coefficient is positive.
void content_normalize(Poly& num, Poly& den) {
    Int lcm_den = 1;
    for (const auto& [p, c] : num.terms())
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    for (const auto& [p, c] : den.terms())
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    Int gcd_num = 0;
    for (const auto& [p, c] : num.terms())
        gcd_num = boost::multiprecision::gcd(gcd_num, numerator(c * Rational(lcm_den)));
    for (const auto& [p, c] : den.terms())
        gcd_num = boost::multiprecision::gcd(gcd_num, numerator(c * Rational(lcm_den)));
    if (gcd_num == 0)
        gcd_num = 1;
    Rational scale(lcm_den, gcd_num);
    if (den.leading_coefficient() * scale < 0)
        scale = -scale;
    num = num * scale;
    den = den * scale;
}

// Counts the distinct variables a polynomial uses; reports the one variable
// when there is exactly one.
struct VarUse {
    size_t count = 0;
    size_t var = 0;
};
VarUse variables_used(const Poly& p) {
    VarUse u;
    std::vector<bool> seen;
    for (const auto& [pp, c] : p.terms()) {
        for (size_t i = 0; i < pp.e.size(); ++i) {
            if (pp.e[i] == 0)
                continue;
            if (i >= seen.size())
                seen.resize(i + 1, false);
            if (!seen[i]) {
                seen[i] = true;
                ++u.count;
                u.var = i;
            }
        }
    }
    return u;
}

Poly univariate_remainder(const Poly& a, const Poly& b, size_t var) {
    Poly rem = a;
    unsigned db = 0;
    for (const auto& [p, c] : b.terms())
        db = std::max(db, p.exp(var));
    auto lead = [var](const Poly& p) {
        unsigned d = 0;
        Rational c(0);
        for (const auto& [pp, cc] : p.terms()) {
            if (pp.exp(var) >= d && (pp.exp(var) > d || c == 0)) {
                d = pp.exp(var);
                c = cc;
            }
        }
        return std::pair<unsigned, Rational>(d, c);
    };
    auto [bd, bc] = lead(b);
    while (!rem.is_zero()) {
        auto [rd, rc] = lead(rem);
        if (rd < bd)
            break;
        PowerProduct q;
        q.e.assign(var + 1, 0);
        q.e[var] = rd - bd;
        q.trim();
        Poly t;
        t.add_term(q, rc / bc);
        rem = rem - t * b;
    }
    return rem;
}

Poly univariate_gcd(Poly a, Poly b, size_t var) {
    while (!b.is_zero()) {
        Poly r = univariate_remainder(a, b, var);
        a = b;
        b = r;
    }
    return a;
}

} // namespace

BaseFunction::BaseFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw std::domain_error("zero denominator");
    normalize();
}

void BaseFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(Rational(1));
        return;
    }
    // Common power-product factor.
    size_t n = std::max(num_.arity(), den_.arity());
    for (size_t v = 0; v < n; ++v) {
        unsigned k = std::min(num_.min_exponent(v), den_.min_exponent(v));
        if (k > 0) {
            num_ = num_.shift_down(v, k);
            den_ = den_.shift_down(v, k);
        }
    }
    // Univariate gcd when both sides live in one common variable.
    if (!den_.is_constant()) {
        VarUse un = variables_used(num_);
        VarUse ud = variables_used(den_);
        if (ud.count == 1 && (un.count == 0 || (un.count == 1 && un.var == ud.var))) {
            Poly g = univariate_gcd(num_, den_, ud.var);
            if (!g.is_constant()) {
                num_ = num_.divide_exact(g);
                den_ = den_.divide_exact(g);
            }
        }
    }
    content_normalize(num_, den_);
    // Fold a constant denominator into the numerator so is_polynomial()
    // callers may rely on num() alone.
    if (den_.is_constant() && den_.constant_value() != 1) {
        num_ = num_ * (Rational(1) / den_.constant_value());
        den_ = Poly::constant(Rational(1));
    }
}

Rational BaseFunction::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

BaseFunction BaseFunction::operator+(const BaseFunction& o) const {
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    if (den_ == o.den_)
        return BaseFunction(num_ + o.num_, den_);
    return BaseFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

BaseFunction BaseFunction::operator-(const BaseFunction& o) const {
    if (o.is_zero())
        return *this;
    if (den_ == o.den_)
        return BaseFunction(num_ - o.num_, den_);
    return BaseFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

BaseFunction BaseFunction::operator-() const {
    BaseFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

BaseFunction BaseFunction::operator*(const BaseFunction& o) const {
    if (is_zero() || o.is_zero())
        return BaseFunction();
    return BaseFunction(num_ * o.num_, den_ * o.den_);
}

BaseFunction BaseFunction::operator*(const Rational& c) const {
    if (c == 0)
        return BaseFunction();
    return BaseFunction(num_ * c, den_);
}

BaseFunction BaseFunction::operator/(const BaseFunction& o) const {
    return *this * o.reciprocal();
}

BaseFunction BaseFunction::reciprocal() const {
    if (is_zero())
        throw std::domain_error("division by zero");
    return BaseFunction(den_, num_);
}

bool BaseFunction::operator==(const BaseFunction& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

BaseFunction BaseFunction::derivative(size_t var) const {
    if (den_.is_constant())
        return BaseFunction(num_.derivative(var), den_);
    Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return BaseFunction(std::move(n), den_ * den_);
}

namespace {
BaseFunction eval_poly(const Poly& p, std::span<const BaseFunction> args) {
    BaseFunction acc;
    for (const auto& [pp, c] : p.terms()) {
        BaseFunction term{c};
        for (size_t v = 0; v < pp.e.size(); ++v) {
            for (unsigned k = 0; k < pp.e[v]; ++k) {
                if (v >= args.size())
                    throw std::domain_error("compose: missing argument");
                term = term * args[v];
            }
        }
        acc = acc + term;
    }
    return acc;
}
} // namespace

BaseFunction BaseFunction::compose(std::span<const BaseFunction> args) const {
    BaseFunction n = eval_poly(num_, args);
    BaseFunction d = eval_poly(den_, args);
    if (d.is_zero())
        throw std::domain_error("composition collapses denominator to zero");
    return n / d;
}

} // namespace supercover
