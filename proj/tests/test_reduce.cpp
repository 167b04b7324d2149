#include <doctest.h>

#include "genfac/decide.hpp"
#include "genfac/errors.hpp"
#include "genfac/oracle.hpp"
#include "genfac/reduce.hpp"
#include "helpers.hpp"

using namespace genfac;
using namespace genfac::testing;

namespace {

CnfFormula mk_cnf(int n, std::vector<std::vector<int>> clauses) {
    CnfFormula cnf;
    cnf.num_vars = n;
    cnf.clauses = std::move(clauses);
    return cnf;
}

}  // namespace

TEST_CASE("grid counts match #SAT") {
    auto bfr1 = cnf_to_bfr(mk_cnf(1, {{1}}));
    CHECK(brute_force_profile(bfr1.inst).total() == BigUint(1));

    auto bfr2 = cnf_to_bfr(mk_cnf(2, {{1, -2}}));
    CHECK(brute_force_profile(bfr2.inst).total() == BigUint(3));

    auto bfr3 = cnf_to_bfr(mk_cnf(2, {}));
    CHECK(brute_force_profile(bfr3.inst).total() == BigUint(4));

    // tautological and duplicated literals
    auto taut = cnf_to_bfr(mk_cnf(1, {{1, -1}}));
    CHECK(brute_force_profile(taut.inst).total() == BigUint(2));
    auto dup = cnf_to_bfr(mk_cnf(2, {{2, 2}}));
    CHECK(brute_force_profile(dup.inst).total() == BigUint(2));

    // empty clause: unsatisfiable
    auto falsum = cnf_to_bfr(mk_cnf(1, {{}}));
    CHECK(brute_force_profile(falsum.inst).total().is_zero());
}

TEST_CASE("grid relations are even; normalization makes them constant") {
    auto big = cnf_to_bfr(mk_cnf(2, {{1, 2}, {-1}}));
    CHECK(big.all_relations_even());
    CHECK_FALSE(big.def_violations().empty());  // spreads {w, w+2} present pre-padding
    CHECK(normalize_parity(big).def_violations().empty());

    // counts preserved through padding, oracle on both sides (small enough grid)
    auto bfr = cnf_to_bfr(mk_cnf(1, {{1}, {-1, 1}}));
    auto norm = normalize_parity(bfr);
    CHECK(norm.all_relations_even());
    CHECK(brute_force_profile(norm.inst, 28).total() ==
          brute_force_profile(bfr.inst).total());
}

TEST_CASE("normalize_parity on a toy spread-2 relation") {
    // C4 where every vertex takes 0 or 2 of its incident edges; the two
    // solutions (nothing / everything) must survive the padding.
    Instance inst;
    inst.graph = mk_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    inst.constraints = {
        Constraint(RelConstraint{symmetric_relation(2, {0, 2}), {0, 3}}),
        Constraint(RelConstraint{symmetric_relation(2, {0, 2}), {0, 1}}),
        Constraint(RelConstraint{symmetric_relation(2, {0, 2}), {1, 2}}),
        Constraint(RelConstraint{symmetric_relation(2, {0, 2}), {2, 3}}),
    };
    BfrInstance bfr;
    bfr.inst = inst;
    for (int i = 0; i < 4; ++i) bfr.layout.order.push_back(i);

    auto before = brute_force_profile(inst);
    auto norm = normalize_parity(bfr);
    CHECK(norm.def_violations().empty());
    auto after = brute_force_profile(norm.inst);
    CHECK(after.total() == before.total());  // 2 solutions: all or nothing

    // already-constant relations pass through untouched
    auto again = normalize_parity(norm);
    CHECK(again.inst.graph.num_edges() == norm.inst.graph.num_edges());

    // spreads other than {w, w+2} are rejected
    Instance bad;
    bad.graph = mk_graph(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}});
    bad.constraints = {
        Constraint(RelConstraint{symmetric_relation(6, {2, 6}), {0, 1, 2, 3, 4, 5}}),
        Constraint(RelConstraint{symmetric_relation(6, {2, 6}), {0, 1, 2, 3, 4, 5}}),
    };
    BfrInstance badb;
    badb.inst = bad;
    badb.layout.order = {0, 1};
    CHECK_THROWS_AS(normalize_parity(badb), precondition_error);
}

TEST_CASE("layout certificate stays within n + c_impl") {
    for (auto cnf : {mk_cnf(1, {{1}}), mk_cnf(2, {{1, 2}, {-1, -2}}), mk_cnf(2, {{-2}, {1}})}) {
        auto bfr = cnf_to_bfr(cnf);
        int cw = cutwidth_of_layout(bfr.inst.graph, bfr.layout);
        CHECK(cw <= cnf.num_vars + 10);
        auto norm = normalize_parity(bfr);
        int cwn = cutwidth_of_layout(norm.inst.graph, norm.layout);
        CHECK(cwn <= cnf.num_vars + 10);
    }
}

TEST_CASE("bfr_to_bfactor decides satisfiability") {
    DegreeList b{1, 4};
    auto sat = cnf_to_bfr(mk_cnf(1, {{1}}));
    auto [inst1, layout1] = bfr_to_bfactor(sat, b);
    CHECK(inst1.all_lists());
    CHECK(layout1.order.size() == size_t(inst1.graph.num_vertices()));
    CHECK(decide_solvable(inst1));

    auto unsat = cnf_to_bfr(mk_cnf(1, {{1}, {-1}}));
    auto [inst2, layout2] = bfr_to_bfactor(unsat, b);
    CHECK_FALSE(decide_solvable(inst2));

    CHECK_THROWS_AS(bfr_to_bfactor(sat, DegreeList{0, 3}), precondition_error);
}

TEST_CASE("cnf_to_bfr preconditions") {
    CHECK_THROWS_AS(cnf_to_bfr(mk_cnf(0, {})), precondition_error);
    CHECK_THROWS_AS(cnf_to_bfr(mk_cnf(1, {{2}})), precondition_error);
}

TEST_CASE("three-variable grids exercise the interior parity chain") {
    // With n = 3 the boundary columns contain a middle vertex carrying the
    // arity-3 interior relation (row, up, down); n <= 2 never produces it.
    auto clauseless = cnf_to_bfr(mk_cnf(3, {}));
    CHECK(brute_force_profile(clauseless.inst).total() == BigUint(8));

    // all sign patterns of single clauses over subsets of {x1, x2, x3}
    for (uint32_t vars = 1; vars < 8; ++vars) {
        for (uint32_t signs = 0; signs < 8; ++signs) {
            std::vector<int> clause;
            for (int v = 0; v < 3; ++v) {
                if (!(vars >> v & 1)) continue;
                clause.push_back((signs >> v & 1) ? -(v + 1) : v + 1);
            }
            CnfFormula cnf = mk_cnf(3, {clause});
            auto bfr = cnf_to_bfr(cnf);
            CHECK(brute_force_profile(bfr.inst).total() == brute_force_sat(cnf));
        }
    }
}
