#include "testutil.hpp"

#include <doctest.h>

using namespace supercover;
using testutil::make_super_chart;
using testutil::make_transition;
using testutil::superquadric_atlas;

TEST_CASE("composing the two superquadric transitions gives the identity") {
    Atlas a = superquadric_atlas();
    const TransitionMap* t01 = a.transition("U0", "U1");
    const TransitionMap* t10 = a.transition("U1", "U0");
    REQUIRE(t01);
    REQUIRE(t10);

    TransitionMap round = compose(*t01, *t10, a.kind);
    const GenSetPtr& g0 = a.chart("U0").gens;
    for (size_t i = 0; i < g0->size(); ++i)
        CHECK(round.sub.images[i] == Superfunction::generator(g0, i));
}

TEST_CASE("composing with the identity changes nothing") {
    Atlas a = superquadric_atlas();
    const TransitionMap* t01 = a.transition("U0", "U1");
    TransitionMap id1 = a.identity_transition("U1");
    TransitionMap left = compose(*t01, id1, a.kind);
    CHECK(left.sub == t01->sub);
}

TEST_CASE("cocycle check passes on the superquadric atlas") {
    Atlas a = superquadric_atlas();
    CocycleReport rep = check_cocycle(a);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());
}

TEST_CASE("cocycle check fails with a nonzero residual after a sign flip") {
    Atlas a = superquadric_atlas();
    // flip the sign of one odd image in T01
    for (TransitionMap& t : a.transitions)
        if (t.from == "U0") t.sub.images[1] = -t.sub.images[1];
    CocycleReport rep = check_cocycle(a);
    CHECK(!rep.ok);
    REQUIRE(!rep.failures.empty());
    bool has_residual = false;
    for (const auto& f : rep.failures)
        if (!f.residual.empty() && f.residual != "0") has_residual = true;
    CHECK(has_residual);
}

TEST_CASE("single-chart atlas passes vacuously") {
    Atlas a;
    a.kind = ChartKind::Super;
    a.charts.push_back(make_super_chart("U", {"x"}, {"xi"}));
    a.validate();
    CHECK(check_cocycle(a).ok);
}

TEST_CASE("composing linear odd changes multiplies their matrices") {
    // two 0|2 charts glued by xi'_i = sum_j M_ij xi_j
    Atlas a;
    a.kind = ChartKind::Super;
    a.charts.push_back(make_super_chart("A", {}, {"p1", "p2"}));
    a.charts.push_back(make_super_chart("B", {}, {"q1", "q2"}));
    a.charts.push_back(make_super_chart("C", {}, {"r1", "r2"}));
    // B over A: q = M xi with M = [[1,2],[0,1]]; C over B: r = N q, N = [[1,0],[3,1]]
    a.transitions.push_back(make_transition(a, "A", "B", {"p1 + 2*p2", "p2"}));
    a.transitions.push_back(make_transition(a, "B", "A", {"q1 - 2*q2", "q2"}));
    a.transitions.push_back(make_transition(a, "B", "C", {"q1", "3*q1 + q2"}));
    a.transitions.push_back(make_transition(a, "C", "B", {"r1", "-3*r1 + r2"}));
    a.validate();
    REQUIRE(check_cocycle(a).ok);

    TransitionMap ac = compose(*a.transition("A", "B"), *a.transition("B", "C"), a.kind);
    // N*M = [[1,2],[3,7]]
    const GenSetPtr& ga = a.chart("A").gens;
    CHECK(ac.sub.images[0] == parse_expr("p1 + 2*p2", ga));
    CHECK(ac.sub.images[1] == parse_expr("3*p1 + 7*p2", ga));
}

TEST_CASE("composition is associative") {
    Atlas a = superquadric_atlas();
    const TransitionMap& t01 = *a.transition("U0", "U1");
    const TransitionMap& t10 = *a.transition("U1", "U0");
    TransitionMap left = compose(compose(t01, t10, a.kind), t01, a.kind);
    TransitionMap right = compose(t01, compose(t10, t01, a.kind), a.kind);
    CHECK(left.sub == right.sub);
}

TEST_CASE("retract atlas drops higher odd terms") {
    Atlas a = superquadric_atlas();
    Atlas g = gr_atlas(a);
    const TransitionMap* t01 = g.transition("U0", "U1");
    const GenSetPtr& g0 = a.chart("U0").gens;
    CHECK(t01->sub.images[0] == parse_expr("1/x", g0));
    CHECK(t01->sub.images[1] == parse_expr("xi1/x^2", g0));
    CHECK(t01->sub.images[2] == parse_expr("xi2/x^2", g0));

    CHECK(check_cocycle(g).ok);

    // idempotent
    Atlas gg = gr_atlas(g);
    for (size_t t = 0; t < g.transitions.size(); ++t)
        CHECK(gg.transitions[t].sub == g.transitions[t].sub);
}

TEST_CASE("retract commutes with composition") {
    Atlas a = superquadric_atlas();
    Atlas g = gr_atlas(a);
    TransitionMap full = compose(*a.transition("U0", "U1"), *a.transition("U1", "U0"), a.kind);
    TransitionMap split = compose(*g.transition("U0", "U1"), *g.transition("U1", "U0"), g.kind);
    // both are the identity here; also check on a non-roundtrip composite
    CHECK(full.sub == split.sub);

    // gr of a composite equals the composite of the gr parts
    std::mt19937 rng(17);
    Atlas b = testutil::random_odd2_atlas(rng, 2, false);
    Atlas gb = gr_atlas(b);
    TransitionMap c1 = compose(*b.transition("U0", "U1"), *b.transition("U1", "U0"), b.kind);
    TransitionMap c2 = compose(*gb.transition("U0", "U1"), *gb.transition("U1", "U0"), gb.kind);
    for (size_t i = 0; i < c1.sub.images.size(); ++i) {
        const Generator& gen = c1.sub.source->gen(i);
        Superfunction proj = gen.parity == Parity::Even ? c1.sub.images[i].j_component(0)
                                                        : c1.sub.images[i].j_component(1);
        CHECK(proj == c2.sub.images[i]);
    }
}

TEST_CASE("random two-chart atlases pass the cocycle check") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        Atlas a = testutil::random_odd2_atlas(rng, trial % 2 + 1, trial % 3 == 0);
        CHECK(check_cocycle(a).ok);
    }
}

TEST_CASE("atlas json round trip") {
    Atlas a = superquadric_atlas();
    a.triples.push_back({"U0", "U1", "U0"});
    // a degenerate triple is rejected by validation (U0 -> U0 missing)
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
    a.triples.clear();

    nlohmann::json j = atlas_to_json(a);
    Atlas b = atlas_from_json(j);
    CHECK(atlas_to_json(b).dump(2) == j.dump(2));
    CHECK(b.transitions.size() == a.transitions.size());
    for (size_t t = 0; t < a.transitions.size(); ++t)
        CHECK(b.transitions[t].sub == a.transitions[t].sub);
}

TEST_CASE("atlas validation rejects broken inputs") {
    Atlas a = superquadric_atlas();
    a.transitions.pop_back();
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);

    Atlas dup = superquadric_atlas();
    dup.charts.push_back(dup.charts[0]);
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    nlohmann::json j = atlas_to_json(superquadric_atlas());
    j["transitions"][0]["images"].erase("y");
    CHECK_THROWS_AS(atlas_from_json(j), std::invalid_argument);
}
