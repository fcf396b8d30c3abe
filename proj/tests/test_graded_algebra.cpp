#include "testutil.hpp"

#include "supercover/subst.hpp"

#include <doctest.h>

using namespace supercover;
using testutil::make_super_chart;

namespace {

GenSetPtr chart_1_2() {
    return make_super_chart("U", {"x"}, {"xi1", "xi2"}).gens;
}

Superfunction gen(const GenSetPtr& gs, const std::string& name) {
    return Superfunction::generator(gs, *gs->index_of(name));
}

} // namespace

TEST_CASE("polynomial arithmetic") {
    Poly x = Poly::variable(0);
    Poly y = Poly::variable(1);
    Poly lhs = (x + y) * (x + y);
    Poly rhs = x * x + x * y * Rational(2) + y * y;
    CHECK(lhs == rhs);

    CHECK((x * x * x * y).derivative(0) == x * x * y * Rational(3));
    CHECK((x * x - y * y).divide_exact(x - y) == x + y);
    CHECK_THROWS_AS((x * x + Poly::constant(Rational(1))).divide_exact(x - y),
                    std::domain_error);
}

TEST_CASE("polynomial term order puts higher powers first and constants last") {
    Poly p = Poly::variable(0) * Poly::variable(0) + Poly::variable(0) +
             Poly::constant(Rational(7));
    auto it = p.terms().begin();
    CHECK(it->first.exp(0) == 2);
    ++it;
    CHECK(it->first.exp(0) == 1);
    ++it;
    CHECK(it->first.is_unit());
}

TEST_CASE("base function equality is value equality") {
    Poly x = Poly::variable(0);
    Poly one = Poly::constant(Rational(1));
    BaseFunction a(x * x - one, x - one);  // (x^2-1)/(x-1)
    BaseFunction b(x + one);
    CHECK(a == b);

    BaseFunction third(Rational(Int(1), Int(3)));
    CHECK(BaseFunction(one, Poly::constant(Rational(3))) == third);
}

TEST_CASE("base function arithmetic and derivatives") {
    Poly x = Poly::variable(0);
    Poly y = Poly::variable(1);
    BaseFunction invx(Poly::constant(Rational(1)), x);
    BaseFunction invy(Poly::constant(Rational(1)), y);
    CHECK(invx + invy == BaseFunction(x + y, x * y));
    CHECK(invx * invy == BaseFunction(Poly::constant(Rational(1)), x * y));
    CHECK(invx.derivative(0) == BaseFunction(Poly::constant(Rational(-1)), x * x));
    CHECK(BaseFunction(x).reciprocal() == invx);
    CHECK_THROWS_AS(BaseFunction().reciprocal(), std::domain_error);
}

TEST_CASE("base function composition") {
    Poly x = Poly::variable(0);
    BaseFunction invx(Poly::constant(Rational(1)), x);
    // substitute x -> 1/y ; the result is y in variable slot 0
    std::vector<BaseFunction> args = {BaseFunction(Poly::constant(Rational(1)),
                                                   Poly::variable(0))};
    BaseFunction out = invx.compose(std::span<const BaseFunction>(args));
    CHECK(out == BaseFunction(Poly::variable(0)));
}

TEST_CASE("odd generators anticommute and square to zero") {
    auto gs = chart_1_2();
    Superfunction xi1 = gen(gs, "xi1");
    Superfunction xi2 = gen(gs, "xi2");
    CHECK(xi2 * xi1 == -(xi1 * xi2));
    CHECK((xi1 * xi1).is_zero());
    CHECK((xi1 * xi2 * xi1).is_zero());
}

TEST_CASE("supercommutativity, associativity, distributivity on random values") {
    auto gs = chart_1_2();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Parity pf = trial % 2 == 0 ? Parity::Even : Parity::Odd;
        Parity pg = trial % 3 == 0 ? Parity::Odd : Parity::Even;
        Superfunction f = testutil::random_superfunction(rng, gs, pf);
        Superfunction g = testutil::random_superfunction(rng, gs, pg);
        Superfunction h = testutil::random_superfunction(rng, gs);
        int sign = (pf == Parity::Odd && pg == Parity::Odd) ? -1 : 1;
        Superfunction rhs = g * f;
        CHECK(f * g == (sign < 0 ? -rhs : rhs));
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
    }
}

TEST_CASE("left derivative satisfies the graded Leibniz rule") {
    auto gs = chart_1_2();
    size_t xi1_index = *gs->index_of("xi1");
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Parity pf = trial % 2 == 0 ? Parity::Even : Parity::Odd;
        Superfunction f = testutil::random_superfunction(rng, gs, pf);
        Superfunction g = testutil::random_superfunction(rng, gs);
        Superfunction lhs = (f * g).left_derivative(xi1_index);
        Superfunction rhs = f.left_derivative(xi1_index) * g +
                            (pf == Parity::Odd ? -(f * g.left_derivative(xi1_index))
                                               : f * g.left_derivative(xi1_index));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("left derivative sign depends on preceding odd factors") {
    auto gs = chart_1_2();
    Superfunction xi1 = gen(gs, "xi1");
    Superfunction xi2 = gen(gs, "xi2");
    size_t i2 = *gs->index_of("xi2");
    // d/dxi2 (xi1 xi2) = -xi1
    CHECK((xi1 * xi2).left_derivative(i2) == -xi1);
    size_t i1 = *gs->index_of("xi1");
    CHECK((xi1 * xi2).left_derivative(i1) == xi2);
}

TEST_CASE("weight projections and truncation") {
    auto gs = chart_1_2();
    Superfunction f = gen(gs, "x") + gen(gs, "xi1") * gen(gs, "xi2");
    CHECK(f.pr(0) == gen(gs, "x"));
    CHECK(f.pr(2) == gen(gs, "xi1") * gen(gs, "xi2"));
    CHECK(f.pr(1).is_zero());
    CHECK(f.truncated(1) == gen(gs, "x").with_cutoff(1));
    CHECK(f.j_component(2) == gen(gs, "xi1") * gen(gs, "xi2"));
}

TEST_CASE("substitution expands rational coefficients around nilpotent shifts") {
    auto gs = chart_1_2();
    // a: x -> x + xi1 xi2, odd generators fixed
    Substitution a = Substitution::identity(gs);
    a.images[*gs->index_of("x")] = gen(gs, "x") + gen(gs, "xi1") * gen(gs, "xi2");
    a.validate();

    Poly x = Poly::variable(0);
    Superfunction invx = Superfunction::base(gs, BaseFunction(Poly::constant(Rational(1)), x));
    // 1/(x + nu) = 1/x - nu/x^2 for nu^2 = 0
    Superfunction expect = invx - gen(gs, "xi1") * gen(gs, "xi2") *
                                      BaseFunction(Poly::constant(Rational(1)), x * x);
    CHECK(a.apply(invx) == expect);
}

TEST_CASE("substitution handles several shifted variables") {
    auto gs = make_super_chart("U", {"x", "y"}, {"xi1", "xi2"}).gens;
    Substitution a = Substitution::identity(gs);
    Superfunction nu = gen(gs, "xi1") * gen(gs, "xi2");
    a.images[*gs->index_of("x")] = gen(gs, "x") + nu;
    a.images[*gs->index_of("y")] = gen(gs, "y") - nu;
    a.validate();

    Poly x = Poly::variable(0);
    Poly y = Poly::variable(1);
    BaseFunction f(Poly::constant(Rational(1)), x * y);
    Superfunction expect = Superfunction::base(gs, f) -
                           nu * BaseFunction(Poly::constant(Rational(1)), x * x * y) +
                           nu * BaseFunction(Poly::constant(Rational(1)), x * y * y);
    CHECK(a.apply(Superfunction::base(gs, f)) == expect);
}

TEST_CASE("graded substitution respects the weight cutoff") {
    std::vector<Generator> gens = {{"y0", 0, Parity::Even}, {"y2", 2, Parity::Even}};
    auto gs = make_genset(gens);
    std::vector<Generator> src = {{"x", 0, Parity::Even}};
    auto sgs = make_genset(src);

    Substitution s;
    s.source = sgs;
    s.target = gs;
    s.mode = SubstMode::Graded;
    s.cutoff = 4;
    s.images = {Superfunction::generator(gs, 0) + Superfunction::generator(gs, 1)};

    Superfunction x2 = Superfunction::generator(sgs, 0) * Superfunction::generator(sgs, 0);
    Superfunction y0 = Superfunction::generator(gs, 0);
    Superfunction y2 = Superfunction::generator(gs, 1);
    CHECK(s.apply(x2) == (y0 * y0 + y0 * y2 * Rational(2) + y2 * y2).with_cutoff(4));

    s.cutoff = 2;
    CHECK(s.apply(x2) == (y0 * y0 + y0 * y2 * Rational(2)).with_cutoff(2));

    s.cutoff = std::nullopt;
    CHECK_THROWS_AS(s.apply(Superfunction::base(
                        sgs, BaseFunction(Poly::constant(Rational(1)), Poly::variable(0)))),
                    std::domain_error);
}

TEST_CASE("substitution composition matches sequential application") {
    auto gs = chart_1_2();
    std::mt19937 rng(23);
    Substitution a = Substitution::identity(gs);
    a.images[*gs->index_of("x")] = gen(gs, "x") + gen(gs, "xi1") * gen(gs, "xi2");
    Substitution b = Substitution::identity(gs);
    b.images[*gs->index_of("xi1")] = gen(gs, "xi1") + gen(gs, "xi2");
    for (int trial = 0; trial < 10; ++trial) {
        Superfunction f = testutil::random_superfunction(rng, gs);
        CHECK(a.after(b).apply(f) == a.apply(b.apply(f)));
    }
}

TEST_CASE("derivation acts by the Leibniz rule") {
    auto gs = chart_1_2();
    Derivation d = Derivation::zero(gs);
    d.images[*gs->index_of("x")] = gen(gs, "xi1") * gen(gs, "xi2");

    Superfunction x = gen(gs, "x");
    CHECK(d.apply(x * x) == x * gen(gs, "xi1") * gen(gs, "xi2") * Rational(2));
    CHECK(d.apply(x * gen(gs, "xi1")).is_zero());  // xi1 xi2 xi1 = 0
    Poly xp = Poly::variable(0);
    Superfunction invx = Superfunction::base(gs, BaseFunction(Poly::constant(Rational(1)), xp));
    CHECK(d.apply(invx) ==
          -(gen(gs, "xi1") * gen(gs, "xi2") *
            BaseFunction(Poly::constant(Rational(1)), xp * xp)));
}

TEST_CASE("log of a second-filtration automorphism and its exponential") {
    auto gs = chart_1_2();
    Substitution a = Substitution::identity(gs);
    a.images[*gs->index_of("x")] = gen(gs, "x") + gen(gs, "xi1") * gen(gs, "xi2");
    REQUIRE(is_aut2(a));

    Derivation lambda = log_automorphism(a);
    CHECK(lambda.images[*gs->index_of("x")] == gen(gs, "xi1") * gen(gs, "xi2"));
    CHECK(lambda.images[*gs->index_of("xi1")].is_zero());

    Substitution back = exp_derivation(lambda, SubstMode::Super);
    CHECK(back == a);
}

TEST_CASE("log works when the shift has a rational coefficient") {
    auto gs = chart_1_2();
    Poly x = Poly::variable(0);
    Substitution a = Substitution::identity(gs);
    a.images[*gs->index_of("x")] =
        gen(gs, "x") - gen(gs, "xi1") * gen(gs, "xi2") *
                           BaseFunction(Poly::constant(Rational(1)), x);
    Derivation lambda = log_automorphism(a);
    // (a - id)^2 (x) vanishes because the shift is already top odd degree
    CHECK(lambda.images[*gs->index_of("x")] ==
          -(gen(gs, "xi1") * gen(gs, "xi2") *
            BaseFunction(Poly::constant(Rational(1)), x)));
    CHECK(exp_derivation(lambda, SubstMode::Super) == a);
}

TEST_CASE("log and exp round trip on random second-filtration automorphisms") {
    std::mt19937 rng(31);
    auto gs3 = make_super_chart("U", {"x"}, {"xi1", "xi2", "xi3"}).gens;
    for (int trial = 0; trial < 20; ++trial) {
        Substitution a = Substitution::identity(gs3);
        for (size_t i = 0; i < gs3->size(); ++i) {
            const Generator& g = gs3->gen(i);
            int min_j = g.parity == Parity::Odd ? 3 : 2;
            Superfunction shift = testutil::random_superfunction(rng, gs3, g.parity, 1);
            shift = shift.j_at_least(min_j);
            a.images[i] = a.images[i] + shift;
        }
        REQUIRE(is_aut2(a));
        Substitution back = exp_derivation(log_automorphism(a), SubstMode::Super);
        CHECK(back == a);
    }
}

TEST_CASE("substitution validation rejects parity and weight violations") {
    auto gs = chart_1_2();
    Substitution bad = Substitution::identity(gs);
    bad.images[*gs->index_of("x")] = gen(gs, "xi1");
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    std::vector<Generator> gens = {{"y0", 0, Parity::Even}, {"y2", 2, Parity::Even}};
    auto graded = make_genset(gens);
    Substitution s = Substitution::identity(graded, SubstMode::Graded, 2);
    s.images[1] = Superfunction::generator(graded, 0);  // weight 0 image for weight-2 gen
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
