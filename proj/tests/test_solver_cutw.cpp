#include <doctest.h>

#include "genfac/errors.hpp"
#include "genfac/oracle.hpp"
#include "genfac/solver_cutw.hpp"
#include "genfac/solver_tw.hpp"
#include "helpers.hpp"

using namespace genfac;
using namespace genfac::testing;

namespace {

LinearLayout identity_layout(int n) {
    LinearLayout l;
    for (int i = 0; i < n; ++i) l.order.push_back(i);
    return l;
}

}  // namespace

TEST_CASE("count_cutw on the closed-form instances") {
    auto k3 = homogeneous_instance(complete_graph(3), DegreeList{2});
    auto p = count_cutw(k3, identity_layout(3), StepMode::Naive);
    CHECK(p.counts[3] == BigUint(1));
    CHECK(p.total() == BigUint(1));
    CHECK(p == count_cutw(k3, identity_layout(3), StepMode::Fast));
    // must match the treewidth solver on the same instance
    CHECK(p == count_tw(k3, make_nice(k3.graph, heuristic_td(k3.graph)), JoinMode::Naive));

    auto k4 = homogeneous_instance(complete_graph(4), DegreeList{1});
    auto q = count_cutw(k4, identity_layout(4), StepMode::Fast);
    CHECK(q.counts[2] == BigUint(3));
    CHECK(q.total() == BigUint(3));

    // P3 with B={1} everywhere: the middle vertex can never be happy.
    auto p3 = homogeneous_instance(path_graph(3), DegreeList{1});
    auto r = count_cutw(p3, identity_layout(3), StepMode::Naive);
    CHECK(r == brute_force_profile(p3));
    CHECK(r.total().is_zero());
}

TEST_CASE("isolated vertices pass through or annihilate") {
    MultiGraph g(3);
    g.add_edge(0, 1);  // vertex 2 isolated
    Instance inst = homogeneous_instance(g, DegreeList{0, 1});
    auto p = count_cutw(inst, identity_layout(3), StepMode::Fast);
    CHECK(p.counts[0] == BigUint(1));
    CHECK(p.counts[1] == BigUint(1));

    inst.constraints[2] = DegreeList{1};  // 0 not allowed at the isolated vertex
    auto q = count_cutw(inst, identity_layout(3), StepMode::Fast);
    CHECK(q.total().is_zero());
}

TEST_CASE("improved step equals naive step position by position") {
    std::mt19937 rng(41);
    for (int iter = 0; iter < 50; ++iter) {
        Instance inst = random_list_instance(rng, 6, 10, 4);
        LinearLayout l = random_layout(rng, inst.graph);
        const int n = inst.graph.num_vertices();
        CutState naive_state, fast_state;
        naive_state.max_size = fast_state.max_size = inst.graph.num_edges();
        naive_state.table.assign(inst.graph.num_edges() + 1, BigUint());
        naive_state.table[0] = BigUint(1);
        fast_state.table = naive_state.table;
        for (int i = 1; i <= n; ++i) {
            naive_state = step_naive(naive_state, inst, l, i);
            fast_state = step_improved(fast_state, inst, l, i);
            CHECK(naive_state.cut_edges == fast_state.cut_edges);
            CHECK(naive_state.table == fast_state.table);
        }
    }
}

TEST_CASE("cutwidth guard") {
    auto k6 = homogeneous_instance(complete_graph(6), DegreeList{1});
    CHECK_THROWS_AS(count_cutw(k6, identity_layout(6), StepMode::Fast, 5), precondition_error);
}

TEST_CASE("random layouts agree with the treewidth solver and the oracle") {
    std::mt19937 rng(43);
    for (int iter = 0; iter < 25; ++iter) {
        Instance inst = random_list_instance(rng, 6, 10, 3);
        LinearLayout l = random_layout(rng, inst.graph);
        auto cw = count_cutw(inst, l, StepMode::Fast);
        CHECK(cw == count_cutw(inst, l, StepMode::Naive));
        CHECK(cw == brute_force_profile(inst));
    }
}
