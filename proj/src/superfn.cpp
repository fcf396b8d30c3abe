#include "supercover/superfn.hpp"

#include <stdexcept>

namespace supercover {

int SuperMonomial::weight(const GeneratorSet& gs) const {
    int w = 0;
    for (const auto& [slot, e] : factors)
        w += gs.mono_gen(slot).weight * static_cast<int>(e);
    return w;
}

Parity SuperMonomial::parity(const GeneratorSet& gs) const {
    return odd_count(gs) % 2 == 0 ? Parity::Even : Parity::Odd;
}

int SuperMonomial::odd_count(const GeneratorSet& gs) const {
    int n = 0;
    for (const auto& [slot, e] : factors)
        if (gs.mono_gen(slot).parity == Parity::Odd) n += static_cast<int>(e);
    return n;
}

unsigned SuperMonomial::exponent_of(size_t slot) const {
    for (const auto& [s, e] : factors)
        if (s == slot) return e;
    return 0;
}

bool SuperMonomialOrder::operator()(const SuperMonomial& a, const SuperMonomial& b) const {
    size_t ia = 0, ib = 0;
    while (ia < a.factors.size() && ib < b.factors.size()) {
        if (a.factors[ia].first != b.factors[ib].first)
            return a.factors[ia].first < b.factors[ib].first;
        if (a.factors[ia].second != b.factors[ib].second)
            return a.factors[ia].second > b.factors[ib].second;
        ++ia;
        ++ib;
    }
    // The longer factor list continues with positive exponents on later
    // slots, while the shorter one has exponent zero there.
    return ia < a.factors.size();
}

MonomialProduct mono_mul(const GeneratorSet& gs, const SuperMonomial& a, const SuperMonomial& b) {
    MonomialProduct out;
    // Count of odd factors of `a` strictly to the right of the merge point;
    // every odd factor of `b` that moves left past them flips the sign.
    int odd_remaining = a.odd_count(gs);
    size_t ia = 0, ib = 0;
    auto odd_of = [&](size_t slot) { return gs.mono_gen(slot).parity == Parity::Odd; };
    auto push = [&](size_t slot, unsigned e) {
        if (!out.mono.factors.empty() && out.mono.factors.back().first == slot)
            out.mono.factors.back().second += e;
        else
            out.mono.factors.emplace_back(slot, e);
    };
    while (ia < a.factors.size() || ib < b.factors.size()) {
        bool take_a = ib >= b.factors.size() ||
                      (ia < a.factors.size() && a.factors[ia].first <= b.factors[ib].first);
        if (take_a) {
            const auto& [slot, e] = a.factors[ia++];
            if (odd_of(slot)) odd_remaining -= static_cast<int>(e);
            push(slot, e);
        } else {
            const auto& [slot, e] = b.factors[ib++];
            if (odd_of(slot)) {
                if (odd_remaining % 2 != 0) out.sign = -out.sign;
                // crossing an even number of odd factors keeps sign
                if (e > 1 || (ia < a.factors.size() && a.factors[ia].first == slot) ||
                    (!out.mono.factors.empty() && out.mono.factors.back().first == slot)) {
                    out.zero = true;
                    return out;
                }
            }
            push(slot, e);
        }
    }
    // An odd generator appearing in both inputs collides at the merge point.
    for (size_t i = 0; i + 1 < out.mono.factors.size(); ++i)
        if (out.mono.factors[i].first == out.mono.factors[i + 1].first) {
            out.zero = true;
            return out;
        }
    for (const auto& [slot, e] : out.mono.factors)
        if (odd_of(slot) && e > 1) {
            out.zero = true;
            return out;
        }
    return out;
}

Superfunction Superfunction::constant(GenSetPtr gs, const Rational& c) {
    Superfunction f(std::move(gs));
    if (c != 0) f.terms_.emplace(SuperMonomial{}, BaseFunction(c));
    return f;
}

Superfunction Superfunction::base(GenSetPtr gs, const BaseFunction& b) {
    Superfunction f(std::move(gs));
    if (!b.is_zero()) f.terms_.emplace(SuperMonomial{}, b);
    return f;
}

Superfunction Superfunction::generator(GenSetPtr gs, size_t gen_index) {
    Superfunction f(gs);
    if (gs->is_base_var(gen_index)) {
        f.terms_.emplace(SuperMonomial{},
                         BaseFunction::variable(gs->base_slot(gen_index)));
    } else {
        SuperMonomial m;
        m.factors.emplace_back(gs->mono_slot(gen_index), 1u);
        f.terms_.emplace(m, BaseFunction(Rational(1)));
    }
    return f;
}

Superfunction Superfunction::with_cutoff(std::optional<int> k) const {
    Superfunction f = *this;
    f.cutoff_ = k;
    return f;
}

bool Superfunction::is_base() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.is_unit();
}

BaseFunction Superfunction::base_part() const {
    for (const auto& [m, c] : terms_)
        if (m.is_unit()) return c;
    return BaseFunction();
}

void Superfunction::add_term(const SuperMonomial& m, const BaseFunction& c, int sign) {
    if (c.is_zero()) return;
    BaseFunction v = sign < 0 ? -c : c;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Superfunction::check_same(const Superfunction& o) const {
    if (gs_ && o.gs_ && gs_ != o.gs_ && !gs_->same_shape(*o.gs_))
        throw std::invalid_argument("superfunction operands live on different charts");
}

Superfunction Superfunction::operator+(const Superfunction& o) const {
    check_same(o);
    Superfunction f = *this;
    if (!f.gs_) f.gs_ = o.gs_;
    if (o.cutoff_ && (!f.cutoff_ || *o.cutoff_ < *f.cutoff_)) f.cutoff_ = o.cutoff_;
    for (const auto& [m, c] : o.terms_) f.add_term(m, c);
    return f;
}

Superfunction Superfunction::operator-(const Superfunction& o) const {
    return *this + (-o);
}

Superfunction Superfunction::operator-() const {
    Superfunction f(gs_, cutoff_);
    for (const auto& [m, c] : terms_) f.terms_.emplace(m, -c);
    return f;
}

Superfunction Superfunction::operator*(const Superfunction& o) const {
    check_same(o);
    Superfunction f(gs_ ? gs_ : o.gs_, cutoff_);
    if (o.cutoff_ && (!f.cutoff_ || *o.cutoff_ < *f.cutoff_)) f.cutoff_ = o.cutoff_;
    const GeneratorSet& gs = *f.gs_;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            MonomialProduct p = mono_mul(gs, ma, mb);
            if (p.zero) continue;
            if (f.cutoff_ && p.mono.weight(gs) > *f.cutoff_) continue;
            f.add_term(p.mono, ca * cb, p.sign);
        }
    }
    return f;
}

Superfunction Superfunction::operator*(const Rational& c) const {
    Superfunction f(gs_, cutoff_);
    if (c == 0) return f;
    for (const auto& [m, v] : terms_) f.terms_.emplace(m, v * c);
    return f;
}

Superfunction Superfunction::operator*(const BaseFunction& c) const {
    Superfunction f(gs_, cutoff_);
    if (c.is_zero()) return f;
    for (const auto& [m, v] : terms_) f.terms_.emplace(m, v * c);
    return f;
}

Superfunction Superfunction::operator/(const Superfunction& o) const {
    if (!o.is_base() || o.is_zero())
        throw std::domain_error("division requires a nonzero base-function divisor");
    BaseFunction inv = o.base_part().reciprocal();
    return *this * inv;
}

Superfunction Superfunction::pow(unsigned n) const {
    Superfunction acc = Superfunction::constant(gs_, Rational(1)).with_cutoff(cutoff_);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

bool Superfunction::operator==(const Superfunction& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto ia = terms_.begin();
    auto ib = o.terms_.begin();
    for (; ia != terms_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return false;
        if (!(ia->second == ib->second)) return false;
    }
    return true;
}

Superfunction Superfunction::pr(int q) const {
    Superfunction f(gs_);
    for (const auto& [m, c] : terms_)
        if (m.weight(*gs_) == q) f.terms_.emplace(m, c);
    return f;
}

Superfunction Superfunction::truncated(int k) const {
    Superfunction f(gs_, k);
    for (const auto& [m, c] : terms_)
        if (m.weight(*gs_) <= k) f.terms_.emplace(m, c);
    return f;
}

Superfunction Superfunction::j_component(int j) const {
    Superfunction f(gs_, cutoff_);
    for (const auto& [m, c] : terms_)
        if (m.odd_count(*gs_) == j) f.terms_.emplace(m, c);
    return f;
}

Superfunction Superfunction::j_at_least(int j) const {
    Superfunction f(gs_, cutoff_);
    for (const auto& [m, c] : terms_)
        if (m.odd_count(*gs_) >= j) f.terms_.emplace(m, c);
    return f;
}

Superfunction Superfunction::left_derivative(size_t gen_index) const {
    const GeneratorSet& gs = *gs_;
    Superfunction f(gs_, cutoff_);
    if (gs.is_base_var(gen_index)) {
        size_t var = gs.base_slot(gen_index);
        for (const auto& [m, c] : terms_) {
            BaseFunction d = c.derivative(var);
            if (!d.is_zero()) f.add_term(m, d);
        }
        return f;
    }
    size_t slot = gs.mono_slot(gen_index);
    bool odd = gs.mono_gen(slot).parity == Parity::Odd;
    for (const auto& [m, c] : terms_) {
        int odd_before = 0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto& [s, e] = m.factors[i];
            if (s == slot) {
                SuperMonomial rest;
                for (size_t j = 0; j < m.factors.size(); ++j) {
                    if (j == i) {
                        if (e > 1) rest.factors.emplace_back(s, e - 1);
                    } else {
                        rest.factors.push_back(m.factors[j]);
                    }
                }
                int sign = (odd && odd_before % 2 != 0) ? -1 : 1;
                f.add_term(rest, c * Rational(e), sign);
                break;
            }
            if (gs.mono_gen(s).parity == Parity::Odd) odd_before += static_cast<int>(e);
        }
    }
    return f;
}

int Superfunction::max_weight() const {
    int w = 0;
    for (const auto& [m, c] : terms_) w = std::max(w, m.weight(*gs_));
    return w;
}

std::optional<int> Superfunction::min_weight() const {
    std::optional<int> w;
    for (const auto& [m, c] : terms_) {
        int mw = m.weight(*gs_);
        if (!w || mw < *w) w = mw;
    }
    return w;
}

bool Superfunction::has_parity(Parity p) const {
    for (const auto& [m, c] : terms_)
        if (m.parity(*gs_) != p) return false;
    return true;
}

bool Superfunction::is_weight_homogeneous(int w) const {
    for (const auto& [m, c] : terms_)
        if (m.weight(*gs_) != w) return false;
    return true;
}

} // namespace supercover
