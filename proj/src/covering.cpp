#include "supercover/covering.hpp"

#include "supercover/expr.hpp"

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace supercover {

CoveringChart build_covering_chart(const Chart& super_chart, int degree) {
    if (super_chart.kind != ChartKind::Super)
        throw std::invalid_argument("coverings are built over super charts");
    if (degree < 0)
        throw std::invalid_argument("covering degree must be nonnegative");
    super_chart.validate();

    CoveringChart cc;
    cc.source = super_chart.gens;
    std::vector<Generator> gens;
    size_t even_pos = 0, odd_pos = 0;
    for (size_t i = 0; i < cc.source->size(); ++i) {
        const Generator& g = cc.source->gen(i);
        cc.towers.emplace_back();
        bool even = g.parity == Parity::Even;
        size_t pos = even ? ++even_pos : ++odd_pos;
        std::string stem = (even ? "y_" : "eta_") + std::to_string(pos) + "__";
        for (int w = even ? 0 : 1; w <= degree; w += 2) {
            cc.towers[i].push_back(gens.size());
            cc.origin.emplace_back(i, w);
            gens.push_back({stem + std::to_string(w), w, g.parity});
        }
    }
    cc.chart.id = super_chart.id;
    cc.chart.kind = ChartKind::Graded;
    cc.chart.degree = degree;
    cc.chart.gens = make_genset(std::move(gens));
    cc.chart.validate();
    return cc;
}

Substitution lift_substitution(const CoveringChart& cc) {
    Substitution s;
    s.source = cc.source;
    s.target = cc.chart.gens;
    // the lift mixes weights, so it is filtered rather than graded
    s.mode = SubstMode::Super;
    s.cutoff = cc.chart.degree;
    for (size_t i = 0; i < cc.source->size(); ++i) {
        Superfunction img(s.target, s.cutoff);
        for (size_t slot : cc.towers[i])
            img = img + Superfunction::generator(s.target, slot);
        s.images.push_back(img);
    }
    return s;
}

Superfunction lift_superfunction(const CoveringChart& cc, const Superfunction& f) {
    return lift_substitution(cc).apply(f);
}

TransitionMap lift_morphism(const CoveringChart& from_cc, const CoveringChart& to_cc,
                            const TransitionMap& psi) {
    if (from_cc.chart.degree != to_cc.chart.degree)
        throw std::invalid_argument("covering degrees disagree");
    if (!psi.sub.target->same_shape(*from_cc.source) ||
        !psi.sub.source->same_shape(*to_cc.source))
        throw std::invalid_argument("morphism charts do not match the coverings");

    Substitution lift_from = lift_substitution(from_cc);
    TransitionMap out;
    out.from = psi.from;
    out.to = psi.to;
    out.sub.source = to_cc.chart.gens;
    out.sub.target = from_cc.chart.gens;
    out.sub.mode = SubstMode::Graded;
    out.sub.cutoff = from_cc.chart.degree;

    // lift each source-chart image once, then project onto the towers
    std::vector<Superfunction> lifted;
    for (const Superfunction& img : psi.sub.images)
        lifted.push_back(lift_from.apply(img));
    for (size_t j = 0; j < to_cc.chart.gens->size(); ++j) {
        auto [src_gen, w] = to_cc.origin[j];
        out.sub.images.push_back(lifted[src_gen].pr(w).with_cutoff(out.sub.cutoff));
    }
    out.sub.validate();
    return out;
}

Atlas build_covering_atlas(const Atlas& a, int n) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("covering atlases are built over super atlases");
    a.validate();
    CocycleReport input = check_cocycle(a);
    if (!input.ok)
        throw std::invalid_argument("input atlas fails the cocycle check");

    Atlas out;
    out.kind = ChartKind::Graded;
    out.degree = n;
    std::map<std::string, CoveringChart> covers;
    for (const Chart& c : a.charts) {
        CoveringChart cc = build_covering_chart(c, n);
        out.charts.push_back(cc.chart);
        covers.emplace(c.id, std::move(cc));
    }
    for (const TransitionMap& t : a.transitions)
        out.transitions.push_back(lift_morphism(covers.at(t.from), covers.at(t.to), t));
    out.triples = a.triples;
    out.validate();
    CocycleReport check = check_cocycle(out);
    if (!check.ok)
        throw std::logic_error("covering atlas fails the cocycle check");
    return out;
}

InjectivityReport check_injectivity(const Atlas& a, int k) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("injectivity check expects a super atlas");
    InjectivityReport rep;
    rep.degree = k;
    for (const Chart& c : a.charts) {
        CoveringChart cc = build_covering_chart(c, k);
        Substitution lift = lift_substitution(cc);
        InjectivityReport::ChartResult res;
        res.id = c.id;
        size_t m = c.gens->mono_gens().size();
        for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
            SuperMonomial mono;
            for (size_t s = 0; s < m; ++s)
                if (mask & (size_t(1) << s)) mono.factors.emplace_back(s, 1u);
            Superfunction f(c.gens);
            f.add_term(mono, BaseFunction(Rational(1)));
            if (lift.apply(f).is_zero()) {
                res.injective = false;
                res.invisible.push_back(render_expr(f));
            }
        }
        if (!res.injective) rep.all_injective = false;
        rep.charts.push_back(std::move(res));
    }
    return rep;
}

namespace {

// chart of a degree-2 graded atlas sorted into towers
struct Odd2Shape {
    std::vector<size_t> w0, w1, w2;  // generator indices by weight
    GenSetPtr super_gens;
    // graded generator index -> reconstructed super generator index
    std::map<size_t, size_t> to_super;
};

std::string strip_weight_suffix(const std::string& name) {
    auto pos = name.rfind("__");
    if (pos == std::string::npos || pos + 2 >= name.size()) return name;
    for (size_t i = pos + 2; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
    return name.substr(0, pos);
}

Odd2Shape shape_of(const Chart& c) {
    Odd2Shape sh;
    for (size_t i = 0; i < c.gens->size(); ++i) {
        switch (c.gens->gen(i).weight) {
            case 0: sh.w0.push_back(i); break;
            case 1: sh.w1.push_back(i); break;
            case 2: sh.w2.push_back(i); break;
            default:
                throw std::invalid_argument("chart " + c.id + " is not of degree two");
        }
    }
    if (sh.w1.size() != 2)
        throw std::invalid_argument("chart " + c.id +
                                    " must have exactly two weight one generators");
    if (sh.w2.size() != sh.w0.size())
        throw std::invalid_argument("chart " + c.id +
                                    " must pair each weight zero generator with a weight "
                                    "two one");

    std::vector<Generator> gens;
    std::set<std::string> seen;
    auto add = [&](size_t gi, int weight, Parity parity) {
        std::string name = strip_weight_suffix(c.gens->gen(gi).name);
        if (!seen.insert(name).second)
            throw std::invalid_argument("chart " + c.id + ": generator name '" + name +
                                        "' collides after dropping the weight suffix");
        sh.to_super.emplace(gi, gens.size());
        gens.push_back({name, weight, parity});
    };
    for (size_t gi : sh.w0) add(gi, 0, Parity::Even);
    for (size_t gi : sh.w1) add(gi, 1, Parity::Odd);
    sh.super_gens = make_genset(std::move(gens));
    return sh;
}

} // namespace

Atlas reconstruct_odd2(const Atlas& g) {
    if (g.kind != ChartKind::Graded || g.degree != 2)
        throw std::invalid_argument("reconstruction expects a graded atlas of degree two");
    g.validate();

    Atlas out;
    out.kind = ChartKind::Super;
    std::map<std::string, Odd2Shape> shapes;
    for (const Chart& c : g.charts) {
        Odd2Shape sh = shape_of(c);
        Chart sc;
        sc.id = c.id;
        sc.kind = ChartKind::Super;
        sc.gens = sh.super_gens;
        sc.validate();
        out.charts.push_back(std::move(sc));
        shapes.emplace(c.id, std::move(sh));
    }

    for (const TransitionMap& t : g.transitions) {
        const Odd2Shape& from = shapes.at(t.from);
        const Odd2Shape& to = shapes.at(t.to);
        const GeneratorSet& fg = *g.chart(t.from).gens;

        // weight-1 generators of the from chart, as super generator images
        auto odd_image = [&](size_t graded_slot) {
            size_t gi = fg.mono_gens()[graded_slot];
            return Superfunction::generator(from.super_gens, from.to_super.at(gi));
        };

        TransitionMap st;
        st.from = t.from;
        st.to = t.to;
        st.sub.source = to.super_gens;
        st.sub.target = from.super_gens;
        st.sub.mode = SubstMode::Super;
        st.sub.images.resize(to.super_gens->size(), Superfunction(from.super_gens));

        // even coordinates: base part from the weight-0 image, theta-theta
        // part from the paired weight-2 image
        for (size_t a = 0; a < to.w0.size(); ++a) {
            BaseFunction X = t.sub.images[to.w0[a]].base_part();
            if (Superfunction::base(t.sub.target, X) != t.sub.images[to.w0[a]])
                throw std::invalid_argument("weight zero image is not a base function");
            Superfunction img = Superfunction::base(from.super_gens, X);

            std::vector<BaseFunction> jac(from.w2.size());
            for (const auto& [m, coef] : t.sub.images[to.w2[a]].terms()) {
                if (m.factors.size() == 1 && m.factors[0].second == 1) {
                    size_t gi = fg.mono_gens()[m.factors[0].first];
                    if (fg.gen(gi).weight != 2)
                        throw std::invalid_argument("unexpected weight two image term");
                    size_t b = 0;
                    while (from.w2[b] != gi) ++b;
                    jac[b] = coef;
                } else if (m.factors.size() == 2 && m.factors[0].second == 1 &&
                           m.factors[1].second == 1) {
                    img = img + odd_image(m.factors[0].first) * odd_image(m.factors[1].first) *
                                    coef;
                } else {
                    throw std::invalid_argument("unexpected weight two image term");
                }
            }
            // the linear part over the weight-2 tower must be the Jacobian of
            // the base change
            for (size_t b = 0; b < jac.size(); ++b)
                if (!(jac[b] == X.derivative(b)))
                    throw std::invalid_argument(
                        "weight two image disagrees with the Jacobian of the base change");
            st.sub.images[to.to_super.at(to.w0[a])] = img;
        }

        // odd coordinates: transport the linear coefficients
        for (size_t b = 0; b < to.w1.size(); ++b) {
            Superfunction img(from.super_gens);
            for (const auto& [m, coef] : t.sub.images[to.w1[b]].terms()) {
                if (m.factors.size() != 1 || m.factors[0].second != 1)
                    throw std::invalid_argument("unexpected weight one image term");
                img = img + odd_image(m.factors[0].first) * coef;
            }
            st.sub.images[to.to_super.at(to.w1[b])] = img;
        }
        st.sub.validate();
        out.transitions.push_back(std::move(st));
    }

    out.triples = g.triples;
    out.validate();
    CocycleReport check = check_cocycle(out);
    if (!check.ok)
        throw std::invalid_argument("reconstructed atlas fails the cocycle check");
    return out;
}

} // namespace supercover
