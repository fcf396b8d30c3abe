#include "supercover/obstruction.hpp"

#include "supercover/expr.hpp"

#include <map>
#include <span>
#include <stdexcept>

namespace supercover {

bool CechCocycle::identically_zero() const {
    for (const CechEntry& e : entries) {
        if (e.der && !e.der->is_zero()) return false;
        if (e.mat)
            for (const auto& row : *e.mat)
                for (const auto& v : row)
                    if (!v.is_zero()) return false;
    }
    return true;
}

const CechEntry* CechCocycle::entry(const std::string& from, const std::string& to) const {
    for (const CechEntry& e : entries)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

bool cech_equal(const CechCocycle& a, const CechCocycle& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (const CechEntry& ea : a.entries) {
        const CechEntry* eb = b.entry(ea.from, ea.to);
        if (!eb) return false;
        if (bool(ea.der) != bool(eb->der) || bool(ea.mat) != bool(eb->mat)) return false;
        if (ea.der && !(*ea.der == *eb->der)) return false;
        if (ea.mat) {
            if (ea.mat->size() != eb->mat->size()) return false;
            for (size_t r = 0; r < ea.mat->size(); ++r) {
                if ((*ea.mat)[r].size() != (*eb->mat)[r].size()) return false;
                for (size_t c = 0; c < (*ea.mat)[r].size(); ++c)
                    if (!((*ea.mat)[r][c] == (*eb->mat)[r][c])) return false;
            }
        }
    }
    return true;
}

nlohmann::json cech_to_json(const CechCocycle& c) {
    nlohmann::json out = nlohmann::json::object();
    for (const CechEntry& e : c.entries) {
        nlohmann::json je;
        je["from"] = e.from;
        je["to"] = e.to;
        if (e.der) {
            je["type"] = "derivation";
            nlohmann::json imgs = nlohmann::json::object();
            for (size_t i = 0; i < e.der->images.size(); ++i)
                if (!e.der->images[i].is_zero())
                    imgs[e.der->gs->gen(i).name] = render_expr(e.der->images[i]);
            je["images"] = std::move(imgs);
        } else if (e.mat) {
            je["type"] = "matrix";
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : *e.mat) {
                nlohmann::json jr = nlohmann::json::array();
                for (const auto& v : row) jr.push_back(render_base(v, *e.mat_coords));
                rows.push_back(std::move(jr));
            }
            je["entries"] = std::move(rows);
        }
        out["(" + e.from + "," + e.to + ")"] = std::move(je);
    }
    return out;
}

namespace {

/// retract of a single pullback: even images keep their odd-free part, odd
/// images their odd-linear part
Substitution gr_sub(const Substitution& s) {
    Substitution g = s;
    for (size_t i = 0; i < g.images.size(); ++i)
        g.images[i] = g.source->gen(i).parity == Parity::Even ? g.images[i].j_component(0)
                                                              : g.images[i].j_component(1);
    return g;
}

} // namespace

Substitution green_cocycle(const Atlas& a, const std::string& i, const std::string& j) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("green automorphisms are defined on super atlases");
    const TransitionMap* tij = a.transition(i, j);
    const TransitionMap* tji = a.transition(j, i);
    if (!tij || !tji)
        throw std::invalid_argument("overlap (" + i + "," + j + ") is not declared");
    Substitution g = tij->sub.after(gr_sub(tji->sub));
    if (!is_aut2(g))
        throw std::invalid_argument(
            "transitions do not close up to second filtration order on (" + i + "," + j + ")");
    return g;
}

CechCocycle omega2(const Atlas& a) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("the obstruction is computed on super atlases");
    a.validate();
    CechCocycle out;
    for (const TransitionMap& t : a.transitions) {
        Substitution g = green_cocycle(a, t.from, t.to);
        Derivation d = log_automorphism(g);
        Derivation norm = Derivation::zero(d.gs, Parity::Even);
        for (size_t k = 0; k < d.gs->size(); ++k)
            if (d.gs->gen(k).parity == Parity::Even)
                norm.images[k] = d.images[k].j_component(2);
        CechEntry e;
        e.from = t.from;
        e.to = t.to;
        e.der = std::move(norm);
        out.entries.push_back(std::move(e));
    }
    return out;
}

CechCocycle atiyah_cocycle_P2(const Atlas& a) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("the obstruction is computed on super atlases");
    a.validate();
    if (!check_cocycle(a).ok)
        throw std::invalid_argument("input atlas fails the cocycle check");

    std::map<std::string, CoveringChart> covers;
    for (const Chart& c : a.charts) covers.emplace(c.id, build_covering_chart(c, 2));

    // keep only the linear weight-2 tower terms of every weight-2 image
    auto jacobian_part = [](Substitution s) {
        for (size_t k = 0; k < s.images.size(); ++k) {
            if (s.source->gen(k).weight != 2) continue;
            Superfunction kept(s.target, s.images[k].cutoff());
            for (const auto& [m, c] : s.images[k].terms())
                if (m.factors.size() == 1 &&
                    s.target->mono_gen(m.factors[0].first).parity == Parity::Even)
                    kept.add_term(m, c);
            s.images[k] = std::move(kept);
        }
        return s;
    };

    CechCocycle out;
    for (const TransitionMap& t : a.transitions) {
        const CoveringChart& cf = covers.at(t.from);
        const CoveringChart& ct = covers.at(t.to);
        TransitionMap lifted = lift_morphism(cf, ct, t);
        TransitionMap lifted_rev = lift_morphism(ct, cf, *a.transition(t.to, t.from));
        Substitution h = lifted.sub.after(jacobian_part(lifted_rev.sub));

        const GenSetPtr& cgs = cf.chart.gens;
        Derivation norm = Derivation::zero(cf.source, Parity::Even);
        for (size_t k = 0; k < cgs->size(); ++k) {
            Superfunction diff = h.images[k] - Superfunction::generator(cgs, k);
            auto [src_gen, w] = cf.origin[k];
            if (w <= 1) {
                if (!diff.is_zero())
                    throw std::logic_error("covering composite moves a low-weight generator");
                continue;
            }
            Superfunction img(cf.source);
            for (const auto& [m, c] : diff.terms()) {
                if (m.factors.size() != 2 || m.factors[0].second != 1 ||
                    m.factors[1].second != 1)
                    throw std::logic_error("unexpected residual term in the covering composite");
                size_t o1 = cgs->mono_gens()[m.factors[0].first];
                size_t o2 = cgs->mono_gens()[m.factors[1].first];
                if (cgs->gen(o1).parity != Parity::Odd || cgs->gen(o2).parity != Parity::Odd)
                    throw std::logic_error("unexpected residual term in the covering composite");
                img = img + Superfunction::generator(cf.source, cf.origin[o1].first) *
                                Superfunction::generator(cf.source, cf.origin[o2].first) * c;
            }
            norm.images[src_gen] = std::move(img);
        }
        CechEntry e;
        e.from = t.from;
        e.to = t.to;
        e.der = std::move(norm);
        out.entries.push_back(std::move(e));
    }
    return out;
}

namespace {

using Matrix = std::vector<std::vector<BaseFunction>>;

Matrix compose_matrix(const Matrix& m, const std::vector<BaseFunction>& args) {
    Matrix out = m;
    for (auto& row : out)
        for (auto& v : row) v = v.compose(std::span<const BaseFunction>(args));
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    size_t n = a.size();
    Matrix out(n, std::vector<BaseFunction>(n));
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            BaseFunction acc;
            for (size_t s = 0; s < n; ++s) acc = acc + a[r][s] * b[s][c];
            out[r][c] = acc;
        }
    return out;
}

} // namespace

CechEntry donagi_witten_matrix(const Atlas& a, const std::string& i, const std::string& j) {
    if (a.kind != ChartKind::Super)
        throw std::invalid_argument("operator transitions are defined on super atlases");
    const TransitionMap* tij = a.transition(i, j);
    const TransitionMap* tji = a.transition(j, i);
    if (!tij || !tji)
        throw std::invalid_argument("overlap (" + i + "," + j + ") is not declared");
    const GenSetPtr& gi = a.chart(i).gens;
    const GenSetPtr& gj = a.chart(j).gens;
    size_t p = gi->base_vars().size();
    size_t q = gi->mono_gens().size();
    if (gj->base_vars().size() != p || gj->mono_gens().size() != q)
        throw std::invalid_argument("charts have different dimensions");
    if (q < 2) throw std::invalid_argument("at least two odd coordinates are required");

    // from-chart base coordinates as functions of the to-chart
    std::vector<BaseFunction> inv;
    for (size_t b = 0; b < p; ++b)
        inv.push_back(tji->sub.images[gi->base_vars()[b]].base_part());
    auto to_chart = [&](const BaseFunction& f) {
        return f.compose(std::span<const BaseFunction>(inv));
    };

    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t s1 = 0; s1 < q; ++s1)
        for (size_t s2 = s1 + 1; s2 < q; ++s2) pairs.emplace_back(s1, s2);
    size_t np = pairs.size();

    const Substitution& s = tij->sub;
    std::vector<BaseFunction> F(p);
    Matrix G(p, std::vector<BaseFunction>(np));
    Matrix H(q, std::vector<BaseFunction>(q));
    for (size_t c = 0; c < p; ++c) {
        const Superfunction& img = s.images[gj->base_vars()[c]];
        for (const auto& [m, coef] : img.terms()) {
            if (m.is_unit()) {
                F[c] = coef;
            } else if (m.factors.size() == 2 && m.factors[0].second == 1 &&
                       m.factors[1].second == 1) {
                size_t r = 0;
                while (pairs[r] != std::pair(m.factors[0].first, m.factors[1].first)) ++r;
                G[c][r] = coef;
            } else {
                throw std::invalid_argument("even image has terms beyond second odd degree");
            }
        }
    }
    for (size_t b = 0; b < q; ++b) {
        const Superfunction& img = s.images[gj->mono_gens()[b]];
        for (const auto& [m, coef] : img.terms()) {
            if (m.factors.size() != 1 || m.factors[0].second != 1)
                throw std::invalid_argument("odd image is not linear");
            H[b][m.factors[0].first] = coef;
        }
    }

    size_t n = p + np;
    Matrix M(n, std::vector<BaseFunction>(n));
    for (size_t b = 0; b < p; ++b)
        for (size_t c = 0; c < p; ++c) M[b][c] = to_chart(F[c].derivative(b));
    for (size_t r = 0; r < np; ++r)
        for (size_t c = 0; c < p; ++c) M[p + r][c] = to_chart(-G[c][r]);
    for (size_t r = 0; r < np; ++r)
        for (size_t c = 0; c < np; ++c) {
            auto [i1, i2] = pairs[r];
            auto [b1, b2] = pairs[c];
            M[p + r][p + c] = to_chart(H[b1][i1] * H[b2][i2] - H[b1][i2] * H[b2][i1]);
        }

    CechEntry e;
    e.from = i;
    e.to = j;
    e.mat = std::move(M);
    e.mat_coords = gj;
    return e;
}

CechCocycle donagi_witten_transitions(const Atlas& a) {
    a.validate();
    CechCocycle out;
    for (const TransitionMap& t : a.transitions)
        out.entries.push_back(donagi_witten_matrix(a, t.from, t.to));
    return out;
}

CocycleReport donagi_witten_check(const Atlas& a) {
    a.validate();
    CocycleReport rep;

    std::map<std::pair<std::string, std::string>, Matrix> mats;
    std::map<std::pair<std::string, std::string>, std::vector<BaseFunction>> base_imgs;
    for (const TransitionMap& t : a.transitions) {
        auto key = std::pair(t.from, t.to);
        mats.emplace(key, *donagi_witten_matrix(a, t.from, t.to).mat);
        std::vector<BaseFunction> f0;
        const GenSetPtr& gt = a.chart(t.to).gens;
        for (size_t b : gt->base_vars()) f0.push_back(t.sub.images[b].base_part());
        base_imgs.emplace(key, std::move(f0));
    }

    auto check_identity = [&](const Matrix& m, const std::string& where,
                              const GenSetPtr& coords) {
        for (size_t r = 0; r < m.size(); ++r)
            for (size_t c = 0; c < m.size(); ++c) {
                BaseFunction expect(r == c ? Rational(1) : Rational(0));
                BaseFunction residual = m[r][c] - expect;
                if (!residual.is_zero()) {
                    rep.ok = false;
                    rep.failures.push_back({where,
                                            "entry (" + std::to_string(r) + "," +
                                                std::to_string(c) + ")",
                                            render_base(residual, *coords)});
                }
            }
    };

    for (const TransitionMap& t : a.transitions) {
        const Matrix& mij = mats.at({t.from, t.to});
        const Matrix& mji = mats.at({t.to, t.from});
        Matrix prod = multiply(compose_matrix(mij, base_imgs.at({t.from, t.to})), mji);
        check_identity(prod, "(" + t.from + "," + t.to + ")", a.chart(t.from).gens);
    }
    for (const auto& tr : a.triples) {
        const auto& [i, j, k] = tr;
        Matrix mij = compose_matrix(mats.at({i, j}), base_imgs.at({i, j}));
        Matrix mjk = compose_matrix(compose_matrix(mats.at({j, k}), base_imgs.at({j, k})),
                                    base_imgs.at({i, j}));
        Matrix prod = multiply(multiply(mij, mjk), mats.at({k, i}));
        check_identity(prod, "(" + i + "," + j + "," + k + ")", a.chart(i).gens);
    }
    return rep;
}

CechCocycle dw_extension_data(const Atlas& a) {
    a.validate();
    CechCocycle out;
    for (const TransitionMap& t : a.transitions) {
        CechEntry m = donagi_witten_matrix(a, t.from, t.to);
        const GenSetPtr& gj = a.chart(t.to).gens;
        size_t p = gj->base_vars().size();
        if (gj->mono_gens().size() != 2)
            throw std::invalid_argument("extension data requires exactly two odd coordinates");
        const Matrix& M = *m.mat;
        BaseFunction det = M[p][p];
        Derivation der = Derivation::zero(gj, Parity::Even);
        for (size_t c = 0; c < p; ++c) {
            BaseFunction x = M[p][c] * det.reciprocal();
            if (x.is_zero()) continue;
            der.images[gj->base_vars()[c]] = Superfunction::generator(gj, gj->mono_gens()[0]) *
                                             Superfunction::generator(gj, gj->mono_gens()[1]) *
                                             x;
        }
        CechEntry e;
        e.from = t.from;
        e.to = t.to;
        e.der = std::move(der);
        out.entries.push_back(std::move(e));
    }
    return out;
}

} // namespace supercover
