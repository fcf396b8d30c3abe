#include "supercover/subst.hpp"

#include <span>
#include <stdexcept>

namespace supercover {

Substitution Substitution::identity(GenSetPtr gs, SubstMode mode, std::optional<int> cutoff) {
    Substitution s;
    s.source = gs;
    s.target = gs;
    s.mode = mode;
    s.cutoff = cutoff;
    for (size_t i = 0; i < gs->size(); ++i)
        s.images.push_back(Superfunction::generator(gs, i));
    return s;
}

void Substitution::validate() const {
    if (!source || !target) throw std::invalid_argument("substitution missing charts");
    if (images.size() != source->size())
        throw std::invalid_argument("substitution image count does not match source generators");
    for (size_t i = 0; i < images.size(); ++i) {
        const Generator& g = source->gen(i);
        const Superfunction& f = images[i];
        if (!f.has_parity(g.parity))
            throw std::invalid_argument("image of '" + g.name + "' has terms of the wrong parity");
        if (mode == SubstMode::Graded && !f.is_weight_homogeneous(g.weight))
            throw std::invalid_argument("image of '" + g.name +
                                        "' is not weight homogeneous of weight " +
                                        std::to_string(g.weight));
    }
}

namespace {

struct BaseImage {
    BaseFunction g0;          // value on the retract
    Superfunction nilpotent;  // remainder of positive filtration
    std::vector<Superfunction> powers;  // nilpotent^1, ^2, ... computed lazily
};

// nilpotent^p, or nullopt once the power vanishes.
const Superfunction* nil_power(BaseImage& bi, size_t p) {
    while (bi.powers.size() < p) {
        const Superfunction& prev = bi.powers.empty() ? bi.nilpotent : bi.powers.back();
        if (bi.powers.empty()) {
            bi.powers.push_back(bi.nilpotent);
        } else {
            bi.powers.push_back(prev * bi.nilpotent);
        }
        if (bi.powers.back().is_zero()) break;
    }
    if (bi.powers.size() < p || bi.powers[p - 1].is_zero()) return nullptr;
    return &bi.powers[p - 1];
}

} // namespace

Superfunction Substitution::apply(const Superfunction& f) const {
    if (!f.genset()->same_shape(*source))
        throw std::invalid_argument("substitution applied to a function on the wrong chart");
    const GeneratorSet& src = *source;
    const GeneratorSet& tgt = *target;

    std::vector<BaseImage> base_imgs(src.base_vars().size());
    std::vector<BaseFunction> g0s;
    std::vector<size_t> active;  // base slots with a nonzero nilpotent part
    for (size_t a = 0; a < src.base_vars().size(); ++a) {
        const Superfunction& img = images[src.base_vars()[a]];
        base_imgs[a].g0 = img.base_part();
        base_imgs[a].nilpotent = img - Superfunction::base(target, base_imgs[a].g0);
        if (cutoff) base_imgs[a].nilpotent = base_imgs[a].nilpotent.truncated(*cutoff);
        g0s.push_back(base_imgs[a].g0);
        if (!base_imgs[a].nilpotent.is_zero()) active.push_back(a);
    }

    // Bound on any single Taylor exponent: each nilpotent monomial raises
    // weight or odd count, both of which are capped.
    size_t odd_cap = 0;
    for (size_t s = 0; s < tgt.mono_gens().size(); ++s)
        if (tgt.mono_gen(s).parity == Parity::Odd) ++odd_cap;
    size_t power_cap = odd_cap + (cutoff ? static_cast<size_t>(std::max(*cutoff, 0)) : 0) + 1;

    Superfunction out(target, cutoff);

    // Images of the monomial generators of a source term, in factor order.
    auto monomial_image = [&](const SuperMonomial& m) {
        Superfunction p = Superfunction::constant(target, Rational(1)).with_cutoff(cutoff);
        for (const auto& [slot, e] : m.factors) {
            const Superfunction& gi = images[src.mono_gens()[slot]];
            for (unsigned r = 0; r < e; ++r) {
                p = p * gi;
                if (p.is_zero()) return p;
            }
        }
        return p;
    };

    for (const auto& [m, c] : f.terms()) {
        Superfunction mono_img = monomial_image(m);
        if (mono_img.is_zero()) continue;

        // Taylor expansion of the coefficient over the active base slots.
        Superfunction taylor(target, cutoff);
        auto expand = [&](auto&& self, size_t idx, const BaseFunction& deriv,
                          const Superfunction& nil_acc) -> void {
            if (deriv.is_zero() || nil_acc.is_zero()) return;
            if (idx == active.size()) {
                BaseFunction value = deriv.compose(std::span<const BaseFunction>(g0s));
                if (!value.is_zero()) taylor = taylor + nil_acc * value;
                return;
            }
            size_t a = active[idx];
            self(self, idx + 1, deriv, nil_acc);
            BaseFunction d = deriv;
            for (size_t p = 1;; ++p) {
                if (p > power_cap)
                    throw std::domain_error(
                        "substitution does not terminate; a cutoff is required");
                d = d.derivative(a) * Rational(Int(1), Int(p));
                if (d.is_zero()) return;
                const Superfunction* np = nil_power(base_imgs[a], p);
                if (!np) return;
                Superfunction acc = nil_acc * *np;
                if (acc.is_zero()) return;
                self(self, idx + 1, d, acc);
            }
        };
        Superfunction unit = Superfunction::constant(target, Rational(1)).with_cutoff(cutoff);
        expand(expand, 0, c, unit);

        out = out + taylor * mono_img;
    }
    if (cutoff) out = out.truncated(*cutoff);
    return out.with_cutoff(cutoff);
}

Substitution Substitution::after(const Substitution& inner) const {
    if (!inner.target->same_shape(*source))
        throw std::invalid_argument("substitution composition chart mismatch");
    Substitution s;
    s.source = inner.source;
    s.target = target;
    s.mode = mode;
    s.cutoff = cutoff ? cutoff : inner.cutoff;
    if (inner.cutoff && cutoff && *inner.cutoff < *cutoff) s.cutoff = inner.cutoff;
    for (const Superfunction& img : inner.images) s.images.push_back(apply(img));
    return s;
}

bool Substitution::operator==(const Substitution& o) const {
    if (images.size() != o.images.size()) return false;
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i] != o.images[i]) return false;
    return true;
}

Derivation Derivation::zero(GenSetPtr gs, Parity parity) {
    Derivation d;
    d.gs = gs;
    d.parity = parity;
    d.images.assign(gs->size(), Superfunction(gs));
    return d;
}

bool Derivation::is_zero() const {
    for (const auto& f : images)
        if (!f.is_zero()) return false;
    return true;
}

bool Derivation::operator==(const Derivation& o) const {
    if (images.size() != o.images.size()) return false;
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i] != o.images[i]) return false;
    return true;
}

Superfunction Derivation::apply(const Superfunction& f) const {
    const GeneratorSet& g = *gs;
    Superfunction out(gs, f.cutoff());
    for (const auto& [m, c] : f.terms()) {
        Superfunction mono = Superfunction::constant(gs, Rational(1));
        for (const auto& [slot, e] : m.factors) {
            Superfunction gen = Superfunction::generator(gs, g.mono_gens()[slot]);
            for (unsigned r = 0; r < e; ++r) mono = mono * gen;
        }
        // Chain rule on the coefficient. Base variables are even, so the
        // derivative images may be placed in front without a sign.
        for (size_t a = 0; a < g.base_vars().size(); ++a) {
            BaseFunction dc = c.derivative(a);
            if (dc.is_zero()) continue;
            out = out + images[g.base_vars()[a]] * dc * mono;
        }
        // Leibniz rule over the monomial factors.
        int odd_before = 0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const auto& [slot, e] = m.factors[i];
            const Generator& gen = g.mono_gen(slot);
            Superfunction before = Superfunction::base(gs, c);
            for (size_t j = 0; j < i; ++j) {
                Superfunction gj = Superfunction::generator(gs, g.mono_gens()[m.factors[j].first]);
                for (unsigned r = 0; r < m.factors[j].second; ++r) before = before * gj;
            }
            Superfunction gi = Superfunction::generator(gs, g.mono_gens()[slot]);
            Superfunction mid = images[g.mono_gens()[slot]] * Rational(e);
            for (unsigned r = 0; r + 1 < e; ++r) mid = mid * gi;
            Superfunction after_part = Superfunction::constant(gs, Rational(1));
            for (size_t j = i + 1; j < m.factors.size(); ++j) {
                Superfunction gj = Superfunction::generator(gs, g.mono_gens()[m.factors[j].first]);
                for (unsigned r = 0; r < m.factors[j].second; ++r) after_part = after_part * gj;
            }
            int sign = (parity == Parity::Odd && odd_before % 2 != 0) ? -1 : 1;
            Superfunction contrib = before * mid * after_part;
            out = sign < 0 ? out - contrib : out + contrib;
            if (gen.parity == Parity::Odd) odd_before += static_cast<int>(e);
        }
    }
    if (f.cutoff()) out = out.truncated(*f.cutoff());
    return out;
}

bool is_aut2(const Substitution& a) {
    if (!a.source->same_shape(*a.target)) return false;
    for (size_t i = 0; i < a.images.size(); ++i) {
        Superfunction diff = a.images[i] - Superfunction::generator(a.target, i);
        int min_j = a.source->gen(i).parity == Parity::Odd ? 3 : 2;
        if (diff != diff.j_at_least(min_j)) return false;
    }
    return true;
}

Derivation log_automorphism(const Substitution& a) {
    if (!is_aut2(a))
        throw std::invalid_argument("logarithm requires an automorphism in Aut_(2)");
    const GenSetPtr& gs = a.target;
    size_t odd_total = 0;
    for (size_t s = 0; s < gs->mono_gens().size(); ++s)
        if (gs->mono_gen(s).parity == Parity::Odd) ++odd_total;
    size_t term_cap = odd_total + 2;

    Derivation d = Derivation::zero(gs, Parity::Even);
    for (size_t i = 0; i < gs->size(); ++i) {
        Superfunction gen = Superfunction::generator(gs, i);
        // power = (a - id)^m applied to the generator
        Superfunction power = a.apply(gen) - gen;
        Superfunction acc(gs);
        int sign = 1;
        for (size_t m = 1; !power.is_zero(); ++m) {
            if (m > term_cap)
                throw std::domain_error("logarithm series failed to terminate");
            acc = acc + power * Rational(Int(sign), Int(m));
            sign = -sign;
            power = a.apply(power) - power;
        }
        d.images[i] = acc;
    }
    return d;
}

Substitution exp_derivation(const Derivation& d, SubstMode mode, std::optional<int> cutoff) {
    const GenSetPtr& gs = d.gs;
    size_t odd_total = 0;
    for (size_t s = 0; s < gs->mono_gens().size(); ++s)
        if (gs->mono_gen(s).parity == Parity::Odd) ++odd_total;
    size_t term_cap = odd_total + (cutoff ? static_cast<size_t>(std::max(*cutoff, 0)) : 0) + 2;

    Substitution s;
    s.source = gs;
    s.target = gs;
    s.mode = mode;
    s.cutoff = cutoff;
    for (size_t i = 0; i < gs->size(); ++i) {
        Superfunction gen = Superfunction::generator(gs, i);
        Superfunction acc = gen;
        Superfunction power = d.apply(gen);
        Rational factorial(1);
        for (size_t m = 1; !power.is_zero(); ++m) {
            if (m > term_cap) throw std::domain_error("exponential series failed to terminate");
            factorial *= Rational(Int(m));
            acc = acc + power * (Rational(1) / factorial);
            power = d.apply(power);
        }
        if (cutoff) acc = acc.truncated(*cutoff);
        s.images.push_back(acc);
    }
    return s;
}

} // namespace supercover
