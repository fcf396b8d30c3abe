#pragma once

#include "supercover/atlas.hpp"
#include "supercover/expr.hpp"

#include <random>

namespace testutil {

using namespace supercover;

inline Chart make_super_chart(const std::string& id, const std::vector<std::string>& evens,
                              const std::vector<std::string>& odds) {
    std::vector<Generator> gens;
    for (const auto& n : evens) gens.push_back({n, 0, Parity::Even});
    for (const auto& n : odds) gens.push_back({n, 1, Parity::Odd});
    Chart c;
    c.id = id;
    c.kind = ChartKind::Super;
    c.gens = make_genset(std::move(gens));
    return c;
}

inline TransitionMap make_transition(const Atlas& a, const std::string& from,
                                     const std::string& to,
                                     const std::vector<std::string>& images) {
    const Chart& cf = a.chart(from);
    const Chart& ct = a.chart(to);
    TransitionMap t;
    t.from = from;
    t.to = to;
    t.sub.source = ct.gens;
    t.sub.target = cf.gens;
    t.sub.mode = a.kind == ChartKind::Super ? SubstMode::Super : SubstMode::Graded;
    if (a.kind == ChartKind::Graded) t.sub.cutoff = a.degree;
    for (const auto& e : images) t.sub.images.push_back(parse_expr(e, cf.gens));
    return t;
}

/// Two charts (x, xi1, xi2) and (y, eta1, eta2) glued by
///   y = 1/x + (1/x^3) xi1 xi2,  eta_j = xi_j / x^2
/// and the symmetric inverse.
inline Atlas superquadric_atlas() {
    Atlas a;
    a.kind = ChartKind::Super;
    a.charts.push_back(make_super_chart("U0", {"x"}, {"xi1", "xi2"}));
    a.charts.push_back(make_super_chart("U1", {"y"}, {"eta1", "eta2"}));
    a.transitions.push_back(make_transition(
        a, "U0", "U1", {"1/x + (1/x^3)*xi1*xi2", "xi1/x^2", "xi2/x^2"}));
    a.transitions.push_back(make_transition(
        a, "U1", "U0", {"1/y + (1/y^3)*eta1*eta2", "eta1/y^2", "eta2/y^2"}));
    a.validate();
    return a;
}

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> den(1, 3);
    int d = den(rng);
    std::uniform_int_distribution<int> num(-3 * d, 3 * d);
    return Rational(Int(num(rng)), Int(d));
}

inline Rational random_nonzero_rational(std::mt19937& rng) {
    Rational r = random_rational(rng);
    while (r == 0) r = random_rational(rng);
    return r;
}

/// random polynomial in the first `vars` variables, total degree <= deg
inline Poly random_poly(std::mt19937& rng, size_t vars, int deg, double keep = 0.6) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Poly p;
    std::vector<unsigned> expo(vars, 0);
    // enumerate exponent tuples of total degree <= deg
    auto rec = [&](auto&& self, size_t v, int remaining) -> void {
        if (v == vars) {
            if (coin(rng) < keep) {
                Rational c = random_rational(rng);
                if (c != 0) {
                    PowerProduct pp;
                    pp.e = expo;
                    pp.trim();
                    p.add_term(pp, c);
                }
            }
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            expo[v] = static_cast<unsigned>(e);
            self(self, v + 1, remaining - e);
        }
        expo[v] = 0;
    };
    rec(rec, 0, deg);
    return p;
}

/// random superfunction with polynomial coefficients; parity filter optional
inline Superfunction random_superfunction(std::mt19937& rng, const GenSetPtr& gs,
                                          std::optional<Parity> parity = std::nullopt,
                                          int base_deg = 2) {
    size_t vars = gs->base_vars().size();
    size_t m = gs->mono_gens().size();
    Superfunction f(gs);
    // iterate subsets of the odd generators (square-free monomials)
    for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
        SuperMonomial mono;
        for (size_t s = 0; s < m; ++s)
            if (mask & (size_t(1) << s)) mono.factors.emplace_back(s, 1u);
        if (parity) {
            int oc = 0;
            for (const auto& [s, e] : mono.factors)
                if (gs->mono_gen(s).parity == Parity::Odd) oc += static_cast<int>(e);
            if ((oc % 2 == 0 ? Parity::Even : Parity::Odd) != *parity) continue;
        }
        Poly c = random_poly(rng, vars, base_deg, 0.4);
        if (!c.is_zero()) f.add_term(mono, BaseFunction(c));
    }
    return f;
}

/// random two-chart super atlas of odd dimension 2:
///   y_a = F_a(x) + W_a(x) xi1 xi2 (F affine invertible),
///   eta_i = sum_j H_ij(x) xi_j (H with nonzero determinant),
/// with the exact symbolic inverse derived from F^-1, H^-1.
inline Atlas random_odd2_atlas(std::mt19937& rng, size_t p, bool split) {
    // invertible affine F(x) = A x + b over p variables
    std::vector<std::vector<Rational>> A(p, std::vector<Rational>(p));
    Rational det;
    do {
        for (auto& row : A)
            for (auto& e : row) e = random_rational(rng);
        if (p == 1) {
            det = A[0][0];
        } else {
            det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        }
    } while (det == 0);
    std::vector<Rational> b(p);
    for (auto& e : b) e = random_rational(rng);

    if (p > 2) throw std::invalid_argument("random_odd2_atlas supports at most 2 even variables");
    // H: 2x2 polynomial matrix with nonzero determinant; keep it upper
    // triangular with nonzero rational diagonals so det = H00 * H11 != 0
    std::vector<std::vector<Poly>> H(2, std::vector<Poly>(2));
    H[0][0] = Poly::constant(random_nonzero_rational(rng));
    H[1][1] = Poly::constant(random_nonzero_rational(rng));
    H[0][1] = random_poly(rng, p, 1, 0.5);
    H[1][0] = Poly();

    std::vector<Poly> W(p);
    if (!split)
        for (auto& w : W) w = random_poly(rng, p, 2, 0.7);

    Atlas a;
    a.kind = ChartKind::Super;
    std::vector<std::string> ex, ox, ey, oy;
    for (size_t i = 1; i <= p; ++i) ex.push_back("x" + std::to_string(i));
    ox = {"xi1", "xi2"};
    for (size_t i = 1; i <= p; ++i) ey.push_back("y" + std::to_string(i));
    oy = {"eta1", "eta2"};
    a.charts.push_back(make_super_chart("U0", ex, ox));
    a.charts.push_back(make_super_chart("U1", ey, oy));
    const GenSetPtr& g0 = a.charts[0].gens;
    const GenSetPtr& g1 = a.charts[1].gens;

    auto base_var = [&](const GenSetPtr& gs, size_t slot) {
        return Superfunction::generator(gs, gs->base_vars()[slot]);
    };
    auto odd_gen = [&](const GenSetPtr& gs, size_t k) {
        // odd generators are the monomial generators here
        return Superfunction::generator(gs, gs->mono_gens()[k]);
    };

    // forward transition: images of chart-1 generators over chart-0
    TransitionMap t01;
    t01.from = "U0";
    t01.to = "U1";
    t01.sub.source = g1;
    t01.sub.target = g0;
    t01.sub.mode = SubstMode::Super;
    Superfunction xx0 = odd_gen(g0, 0) * odd_gen(g0, 1);
    for (size_t i = 0; i < p; ++i) {
        Superfunction img(g0);
        for (size_t j = 0; j < p; ++j) img = img + base_var(g0, j) * A[i][j];
        img = img + Superfunction::constant(g0, b[i]);
        img = img + xx0 * BaseFunction(W[i]);
        t01.sub.images.push_back(img);
    }
    for (size_t i = 0; i < 2; ++i) {
        Superfunction img(g0);
        for (size_t j = 0; j < 2; ++j)
            if (!H[i][j].is_zero()) img = img + odd_gen(g0, j) * BaseFunction(H[i][j]);
        t01.sub.images.push_back(img);
    }

    // exact inverse: x = G(y) + V(y) eta1 eta2, xi = K(y) eta with
    //   G = A^-1 (y - b), K = H(G)^-1, V = -A^-1 (W(G)) det K.
    std::vector<BaseFunction> G(p);
    {
        // A^-1 entries
        std::vector<std::vector<Rational>> Ainv(p, std::vector<Rational>(p));
        if (p == 1) {
            Ainv[0][0] = Rational(1) / det;
        } else {
            Ainv[0][0] = A[1][1] / det;
            Ainv[0][1] = -A[0][1] / det;
            Ainv[1][0] = -A[1][0] / det;
            Ainv[1][1] = A[0][0] / det;
        }
        for (size_t i = 0; i < p; ++i) {
            Poly gi;
            for (size_t j = 0; j < p; ++j) {
                Poly yj = Poly::variable(j);
                gi = gi + (yj - Poly::constant(b[j])) * Ainv[i][j];
            }
            G[i] = BaseFunction(gi);
        }
        // K = H(G)^-1 for lower-triangular H (H10 = 0):
        //   K00 = 1/H00(G), K11 = 1/H11(G), K01 = -H01(G)/(H00 H11)(G), K10 = 0
        std::span<const BaseFunction> gspan(G);
        BaseFunction h00 = BaseFunction(H[0][0]).compose(gspan);
        BaseFunction h11 = BaseFunction(H[1][1]).compose(gspan);
        BaseFunction h01 = BaseFunction(H[0][1]).compose(gspan);
        BaseFunction k00 = h00.reciprocal();
        BaseFunction k11 = h11.reciprocal();
        BaseFunction k01 = -(h01 * (h00 * h11).reciprocal());
        BaseFunction detK = k00 * k11;

        TransitionMap t10;
        t10.from = "U1";
        t10.to = "U0";
        t10.sub.source = g0;
        t10.sub.target = g1;
        t10.sub.mode = SubstMode::Super;
        Superfunction ee1 = odd_gen(g1, 0) * odd_gen(g1, 1);
        for (size_t i = 0; i < p; ++i) {
            BaseFunction vi;
            for (size_t j = 0; j < p; ++j) {
                BaseFunction wj = BaseFunction(W[j]).compose(gspan);
                vi = vi + wj * (-Ainv[i][j]);
            }
            vi = vi * detK;
            Superfunction img = Superfunction::base(g1, G[i]) + ee1 * vi;
            t10.sub.images.push_back(img);
        }
        std::vector<std::vector<BaseFunction>> K = {{k00, k01}, {BaseFunction(), k11}};
        for (size_t i = 0; i < 2; ++i) {
            Superfunction img(g1);
            for (size_t j = 0; j < 2; ++j)
                if (!K[i][j].is_zero()) img = img + odd_gen(g1, j) * K[i][j];
            t10.sub.images.push_back(img);
        }
        a.transitions.push_back(std::move(t01));
        a.transitions.push_back(std::move(t10));
    }
    a.validate();
    return a;
}

} // namespace testutil
