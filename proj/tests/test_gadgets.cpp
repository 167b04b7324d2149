#include <doctest.h>

#include <climits>

#include "genfac/decide.hpp"
#include "genfac/errors.hpp"
#include "genfac/gadgets.hpp"
#include "genfac/oracle.hpp"
#include "helpers.hpp"

using namespace genfac;
using namespace genfac::testing;

TEST_CASE("realize_hw22") {
    // min B = 1: K2 split leaves two bare portals whose danglings are forced.
    Gadget g = realize_hw22(DegreeList{1, 4});
    CHECK(g.graph.num_vertices() == 2);
    CHECK(g.graph.num_edges() == 0);
    CHECK(g.arity() == 2);
    CHECK(verify_realization(g, hw_eq_relation(2, 2)).pass);
    auto rep = verify_realization(g, eq_relation(2));
    CHECK_FALSE(rep.pass);  // fails at D' = empty
    CHECK(rep.failures.size() == 1);
    CHECK(rep.failures[0].find("D'=0") != std::string::npos);

    // min B = 2: K3 with one edge split.
    Gadget g2 = realize_hw22(DegreeList{2, 5});
    CHECK(g2.graph.num_vertices() == 3);
    CHECK(g2.graph.num_edges() == 2);
    CHECK(g2.is_simple());
    CHECK(verify_realization(g2, hw_eq_relation(2, 2)).pass);

    CHECK_THROWS_AS(realize_hw22(DegreeList{0, 3}), precondition_error);
    CHECK_THROWS_AS(realize_hw22(DegreeList{1, 2}), precondition_error);  // maxgap 0
}

TEST_CASE("realize_eq across parity classes") {
    // mixed parity, odd k
    Gadget g = realize_eq(DegreeList{1, 4}, 3);
    CHECK(verify_realization(g, eq_relation(3)).pass);
    CHECK(g.is_simple());

    // even-only B, k = 2 via the clique-of-hubs construction
    Gadget g2 = realize_eq(DegreeList{2, 6}, 2);
    CHECK(verify_realization(g2, eq_relation(2)).pass);
    CHECK(g2.is_simple());

    // parity obstruction: odd-only B with odd k
    CHECK_THROWS_AS(realize_eq(DegreeList{1, 5}, 1), precondition_error);
    CHECK_THROWS_AS(realize_eq(DegreeList{2, 6}, 3), precondition_error);

    // mixed parity accepts k = 1 (trivial relation)
    Gadget g3 = realize_eq(DegreeList{1, 4}, 1);
    CHECK(verify_realization(g3, symmetric_relation(1, {0, 1})).pass);

    // single-parity even k, chained
    Gadget g4 = realize_eq(DegreeList{1, 5}, 4);
    CHECK(verify_realization(g4, eq_relation(4)).pass);

    Gadget g5 = realize_eq(DegreeList{1, 4}, 2);
    CHECK(verify_realization(g5, eq_relation(2)).pass);
}

TEST_CASE("realize_hw_eq1") {
    Gadget g = realize_hw_eq1(DegreeList{1, 5}, 2);
    CHECK(verify_realization(g, hw_eq_relation(2, 1)).pass);

    // even-only B demands a pair
    CHECK_THROWS_AS(realize_hw_eq1(DegreeList{2, 6}, 1), precondition_error);
    CHECK_THROWS_AS(realize_hw_eq1(DegreeList{1, 5}, 2, 1), precondition_error);  // superfluous

    // chained construction beyond the base arities
    Gadget g6 = realize_hw_eq1(DegreeList{1, 4}, 6);
    CHECK(verify_realization(g6, hw_eq_relation(6, 1)).pass);

    // the even-only pair realizes the product relation
    Gadget gp = realize_hw_eq1(DegreeList{2, 6}, 2, 1);
    CHECK(verify_realization(gp, hw1_pair_relation(2, 1)).pass);
}

TEST_CASE("realize_even_relation") {
    DegreeList b{1, 4};
    CHECK(verify_realization(realize_even_relation(b, eq_relation(2)), eq_relation(2)).pass);

    Gadget g = realize_even_relation(b, hw_eq_relation(4, 2));
    CHECK(g.arity() == 4);
    CHECK(g.is_simple());
    // portal vertices pairwise distinct
    {
        std::set<int> pv(g.dangling.begin(), g.dangling.end());
        CHECK(pv.size() == 4);
    }
    CHECK(verify_realization(g, hw_eq_relation(4, 2)).pass);

    CHECK_THROWS_AS(realize_even_relation(b, Relation(3, {0b001})), precondition_error);

    // empty relation: unsatisfiable for every dangling subset
    Gadget poison = realize_even_relation(b, Relation(2, {}));
    CHECK(verify_realization(poison, Relation(2, {})).pass);

    // arity-0 relation accepting the empty tuple
    Gadget unit = realize_even_relation(b, Relation(0, {0}));
    CHECK(verify_realization(unit, Relation(0, {0})).pass);
}

TEST_CASE("insert_gadget arithmetic and errors") {
    // host: path 0-1-2 with the middle vertex complex
    Instance host;
    host.graph = mk_graph(3, {{0, 1}, {1, 2}});
    host.constraints = {Constraint(DegreeList{0, 1}),
                        Constraint(RelConstraint{eq_relation(2), {0, 1}}),
                        Constraint(DegreeList{0, 1})};
    Gadget g = realize_eq(DegreeList{1, 4}, 2);
    Instance composed = insert_gadget(host, 1, g);
    CHECK(composed.graph.num_vertices() == 2 + g.graph.num_vertices());
    CHECK(composed.graph.num_edges() == g.graph.num_edges() + 2);
    // solvable: both path edges out (ends at 0) or both in (ends at 1)
    CHECK(decide_solvable(composed));

    Gadget hw = realize_hw22(DegreeList{1, 4});
    CHECK_THROWS_AS(insert_gadget(host, 0, hw), precondition_error);  // arity mismatch
}

TEST_CASE("insertion preserves existence on random relation hosts") {
    std::mt19937 rng(59);
    DegreeList b{1, 4};
    int done = 0;
    while (done < 20) {
        MultiGraph g = random_multigraph(rng, 5, 7);
        // pick a vertex of degree 1..3 to carry an even relation
        int v = -1;
        for (int x = 0; x < g.num_vertices(); ++x)
            if (g.degree(x) >= 1 && g.degree(x) <= 3) { v = x; break; }
        if (v < 0) continue;
        auto inc = g.incident(v);
        int a = static_cast<int>(inc.size());
        std::vector<uint32_t> acc;
        std::uniform_int_distribution<int> bit(0, 1);
        for (uint32_t mask = 0; mask < (uint32_t(1) << a); ++mask)
            if (std::popcount(mask) % 2 == 0 && bit(rng)) acc.push_back(mask);
        Relation r(a, acc);
        Instance host;
        host.graph = g;
        for (int x = 0; x < g.num_vertices(); ++x) {
            if (x == v)
                host.constraints.emplace_back(RelConstraint{r, inc});
            else
                host.constraints.emplace_back(b);
        }
        bool host_solvable = profile_summary(brute_force_profile(host)).decide;
        Instance composed = insert_gadget(host, v, realize_even_relation(b, r));
        CHECK(decide_solvable(composed) == host_solvable);
        ++done;
    }
}

TEST_CASE("girth computation") {
    CHECK(girth_of(complete_graph(4)) == 3);
    CHECK(girth_of(cycle_graph(6)) == 6);
    CHECK(girth_of(path_graph(5)) == INT_MAX);
    MultiGraph dbl(2);
    dbl.add_edge(0, 1);
    dbl.add_edge(0, 1);
    CHECK(girth_of(dbl) == 2);
}

TEST_CASE("high_girth_regular") {
    auto c = high_girth_regular(2, 7);
    CHECK(c.girth >= 7);

    auto k4 = high_girth_regular(3, 3);
    CHECK(k4.graph.num_vertices() == 4);

    auto pet = high_girth_regular(3, 5);
    CHECK(pet.girth >= 5);
    CHECK(pet.graph.num_vertices() <= 4860);  // 4 * 5 * 3^5

    auto c19 = high_girth_regular(4, 5);
    CHECK(c19.girth >= 5);

    auto r34 = high_girth_regular(3, 4);
    CHECK(r34.girth >= 4);

    // beyond the deterministic library: random + repair, still certified
    auto r55 = high_girth_regular(5, 5);
    CHECK(r55.girth >= 5);
    for (int v = 0; v < r55.graph.num_vertices(); ++v) CHECK(r55.graph.degree(v) == 5);

    // cubic cages for girth 7 and 8
    auto r37 = high_girth_regular(3, 7);
    CHECK(r37.girth >= 7);
    CHECK(r37.graph.num_vertices() == 24);
    auto r38 = high_girth_regular(3, 8);
    CHECK(r38.girth >= 8);
    CHECK(r38.graph.num_vertices() == 30);

    CHECK_THROWS_AS(high_girth_regular(7, 3), precondition_error);
    CHECK_THROWS_AS(high_girth_regular(3, 9), precondition_error);
}

TEST_CASE("penalized hw22") {
    for (int beta : {3, 4}) {
        Gadget g = realize_hw22_penalized(DegreeList{0, 3}, beta);
        CHECK(g.kind == Gadget::Kind::Penalized);
        CHECK(verify_penalized(g, hw_eq_relation(2, 2)).pass);
        auto rep = verify_penalized(g, eq_relation(2));
        CHECK_FALSE(rep.pass);
    }
    CHECK_THROWS_AS(realize_hw22_penalized(DegreeList{0, 1, 2}, 3), precondition_error);
}

TEST_CASE("penalized internal EQ(d+1)") {
    // a = 0: the bare-vertex degenerate case
    Gadget g = realize_eq_penalized_internal(DegreeList{0, 3}, 3);
    CHECK(g.internal_count);
    CHECK(verify_penalized(g, eq_relation(3)).pass);

    // a = 2: two penalized clusters, checked in internal counting mode
    Gadget g2 = realize_eq_penalized_internal(DegreeList{0, 2, 5}, 1);
    CHECK(g2.arity() == 3);
    CHECK(verify_penalized(g2, eq_relation(3)).pass);
}

TEST_CASE("portal groups") {
    Gadget g = realize_eq(DegreeList{1, 4}, 3);
    auto groups = g.portal_groups();
    int total = 0;
    for (auto [v, c] : groups) total += c;
    CHECK(total == 3);
}

TEST_CASE("even-relation gadget sizes respect the documented polynomial") {
    // Soft bound: vertices <= 2 * (|R|+1) * (e+2) * (max B + 1)^3. The worst
    // observed family member (B={2,5}, arity 4, |R|=4) sits under half of it.
    for (const auto& b : std::vector<DegreeList>{{1, 4}, {2, 5}, {1, 5}, {2, 6}, {3, 7}}) {
        for (int e : {2, 4}) {
            std::vector<uint32_t> acc;
            for (uint32_t mask = 0; mask < (uint32_t(1) << e) && acc.size() < 4; ++mask)
                if (std::popcount(mask) % 2 == 0) acc.push_back(mask);
            Relation r(e, acc);
            Gadget g = realize_even_relation(b, r);
            int64_t bound = 2LL * (static_cast<int64_t>(r.size()) + 1) * (e + 2) *
                            (b.max() + 1) * (b.max() + 1) * (b.max() + 1);
            CHECK(g.graph.num_vertices() <= bound);
        }
    }
}
