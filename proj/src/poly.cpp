#include "supercover/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace supercover {

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

Rational rational_from_string(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + s + "'");
    }
}

void PowerProduct::trim() {
    while (!e.empty() && e.back() == 0)
        e.pop_back();
}

unsigned PowerProduct::total_degree() const {
    unsigned d = 0;
    for (unsigned x : e)
        d += x;
    return d;
}

PowerProduct PowerProduct::operator*(const PowerProduct& o) const {
    PowerProduct r;
    r.e.resize(std::max(e.size(), o.e.size()), 0);
    for (size_t i = 0; i < r.e.size(); ++i)
        r.e[i] = exp(i) + o.exp(i);
    return r;
}

bool PowerProductOrder::operator()(const PowerProduct& a, const PowerProduct& b) const {
    size_t n = std::max(a.e.size(), b.e.size());
    for (size_t i = 0; i < n; ++i) {
        unsigned ea = a.exp(i), eb = b.exp(i);
        if (ea != eb)
            return ea > eb;
    }
    return false;
}

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (c != 0)
        p.terms_.emplace(PowerProduct{}, c);
    return p;
}

Poly Poly::variable(size_t var) {
    PowerProduct p;
    p.e.assign(var + 1, 0);
    p.e[var] = 1;
    Poly r;
    r.terms_.emplace(std::move(p), Rational(1));
    return r;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Poly::constant_value() const {
    if (terms_.empty())
        return Rational(0);
    if (!is_constant())
        throw std::domain_error("polynomial is not constant");
    return terms_.begin()->second;
}

size_t Poly::arity() const {
    size_t a = 0;
    for (const auto& [p, c] : terms_)
        a = std::max(a, p.e.size());
    return a;
}

bool Poly::uses_variable(size_t var) const {
    for (const auto& [p, c] : terms_)
        if (p.exp(var) > 0)
            return true;
    return false;
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& [p, c] : terms_)
        d = std::max(d, p.total_degree());
    return d;
}

void Poly::add_term(const PowerProduct& p, const Rational& c) {
    if (c == 0)
        return;
    PowerProduct q = p;
    q.trim();
    auto it = terms_.find(q);
    if (it == terms_.end()) {
        terms_.emplace(std::move(q), c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [p, c] : o.terms_)
        r.add_term(p, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [p, c] : o.terms_)
        r.add_term(p, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [p, c] : terms_)
        r.terms_.emplace(p, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [p, c] : terms_)
        for (const auto& [q, d] : o.terms_)
            r.add_term(p * q, c * d);
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r;
    if (c == 0)
        return r;
    for (const auto& [p, d] : terms_)
        r.terms_.emplace(p, d * c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly r = Poly::constant(Rational(1));
    for (unsigned i = 0; i < n; ++i)
        r = r * *this;
    return r;
}

Poly Poly::derivative(size_t var) const {
    Poly r;
    for (const auto& [p, c] : terms_) {
        unsigned ev = p.exp(var);
        if (ev == 0)
            continue;
        PowerProduct q = p;
        q.e[var] -= 1;
        q.trim();
        r.add_term(q, c * Rational(ev));
    }
    return r;
}

unsigned Poly::min_exponent(size_t var) const {
    if (terms_.empty())
        return 0;
    unsigned m = UINT32_MAX;
    for (const auto& [p, c] : terms_)
        m = std::min(m, p.exp(var));
    return m;
}

Poly Poly::shift_down(size_t var, unsigned k) const {
    if (k == 0)
        return *this;
    Poly r;
    for (const auto& [p, c] : terms_) {
        if (p.exp(var) < k)
            throw std::domain_error("shift_down: exponent underflow");
        PowerProduct q = p;
        q.e[var] -= k;
        q.trim();
        r.terms_.emplace(std::move(q), c);
    }
    return r;
}

Rational Poly::leading_coefficient() const {
    if (terms_.empty())
        return Rational(0);
    return terms_.begin()->second;
}

Poly Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero())
        throw std::domain_error("division by zero polynomial");
    Poly rem = *this;
    Poly quot;
    const auto& dlead = *divisor.terms_.begin();
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms_.begin();
        PowerProduct q;
        size_t n = std::max(rlead.first.e.size(), dlead.first.e.size());
        q.e.assign(n, 0);
        for (size_t i = 0; i < n; ++i) {
            unsigned er = rlead.first.exp(i), ed = dlead.first.exp(i);
            if (er < ed)
                throw std::domain_error("not exactly divisible");
            q.e[i] = er - ed;
        }
        q.trim();
        Rational c = rlead.second / dlead.second;
        Poly t;
        t.terms_.emplace(q, c);
        quot = quot + t;
        rem = rem - t * divisor;
    }
    return quot;
}

} // namespace supercover
