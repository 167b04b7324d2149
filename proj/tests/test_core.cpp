#include <doctest.h>

#include "genfac/core.hpp"
#include "genfac/errors.hpp"
#include "helpers.hpp"

using namespace genfac;
using namespace genfac::testing;

TEST_CASE("maxgap on known sets") {
    CHECK(maxgap(DegreeList{1, 5, 6, 8}) == 3);
    CHECK(maxgap(DegreeList{0, 1, 2, 3}) == 0);
    CHECK(maxgap(DegreeList{0, 3}) == 2);
    CHECK(maxgap(DegreeList{}) == 0);
    CHECK(maxgap(DegreeList{7}) == 0);
}

TEST_CASE("maxgap closed form agrees with the definition search exhaustively") {
    for (int mask = 0; mask < (1 << 11); ++mask) {
        std::vector<int> vals;
        for (int x = 0; x <= 10; ++x)
            if (mask >> x & 1) vals.push_back(x);
        DegreeList b(vals);
        CHECK(maxgap(b) == maxgap_reference(b));
    }
}

TEST_CASE("maxgap witness") {
    CHECK(maxgap_witness(DegreeList{1, 5, 6, 8}) == 1);
    CHECK(maxgap_witness(DegreeList{0, 3}) == 0);
    CHECK_THROWS_AS(maxgap_witness(DegreeList{1, 2}), precondition_error);
}

TEST_CASE("symmetric_relation special cases") {
    Relation eq2 = symmetric_relation(2, {0, 2});
    CHECK(eq2.accepted() == std::vector<uint32_t>{0b00, 0b11});
    CHECK(eq2 == eq_relation(2));

    Relation hw31 = symmetric_relation(3, {1});
    CHECK(hw31.accepted() == std::vector<uint32_t>{0b001, 0b010, 0b100});
    CHECK(hw31 == hw_eq_relation(3, 1));

    Relation eq4 = symmetric_relation(4, {0, 4});
    CHECK(eq4.accepted() == std::vector<uint32_t>{0b0000, 0b1111});
}

TEST_CASE("symmetric relations are closed under coordinate permutations") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        std::uniform_int_distribution<int> ad(1, 6);
        int d = ad(rng);
        std::set<int> s;
        std::uniform_int_distribution<int> wd(0, d);
        for (int i = 0; i < 3; ++i) s.insert(wd(rng));
        Relation r = symmetric_relation(d, s);
        std::vector<int> perm(d);
        for (int i = 0; i < d; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(r.permuted(perm) == r);
        CHECK(r.is_symmetric());
    }
}

TEST_CASE("relation helpers") {
    Relation r(3, {0b011, 0b110});
    CHECK(r.is_even());
    CHECK(r.constant_weight() == 2);
    CHECK_FALSE(r.is_symmetric());
    Relation mixed(3, {0b001, 0b011});
    CHECK_FALSE(mixed.is_even());
    CHECK_FALSE(mixed.constant_weight().has_value());
    CHECK(mixed.weights() == std::vector<int>{1, 2});
    CHECK(Relation(3, {}).is_even());
}

TEST_CASE("profile_summary") {
    SizeProfile p;
    p.counts = {BigUint(1), BigUint(0), BigUint(0), BigUint(0), BigUint(1)};
    auto s = profile_summary(p);
    CHECK(s.decide);
    CHECK(*s.min_size == 0);
    CHECK(*s.max_size == 4);
    CHECK(s.total == BigUint(2));

    p.counts = {BigUint(0), BigUint(0), BigUint(0)};
    s = profile_summary(p);
    CHECK_FALSE(s.decide);
    CHECK_FALSE(s.min_size.has_value());
    CHECK_FALSE(s.max_size.has_value());
    CHECK(s.total.is_zero());

    p.counts = {BigUint(0), BigUint(0), BigUint(3)};
    s = profile_summary(p);
    CHECK(s.decide);
    CHECK(*s.min_size == 2);
    CHECK(*s.max_size == 2);
    CHECK(s.total == BigUint(3));
}

TEST_CASE("multigraph invariants") {
    MultiGraph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), precondition_error);
    CHECK_THROWS_AS(g.add_edge(0, 3), precondition_error);
    CHECK(g.add_edge(0, 1) == 0);
    CHECK(g.add_edge(0, 1) == 1);  // parallel edges are distinct
    CHECK(g.add_edge(1, 2) == 2);
    CHECK(g.degree(1) == 3);
    CHECK(g.incident(0) == std::vector<int>{0, 1});
}

TEST_CASE("instance validation") {
    Instance inst;
    inst.graph = mk_graph(2, {{0, 1}});
    inst.constraints = {Constraint(DegreeList{1}), Constraint(DegreeList{1})};
    inst.validate();
    CHECK(inst.all_lists());
    CHECK(inst.max_list_value() == 1);

    inst.constraints[0] = RelConstraint{Relation(2, {0b11}), {0, 0}};
    CHECK_THROWS_AS(inst.validate(), precondition_error);  // arity != degree
    inst.constraints[0] = RelConstraint{Relation(1, {0b1}), {0}};
    inst.validate();
    CHECK_FALSE(inst.all_lists());
}

TEST_CASE("biguint arithmetic against machine words") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<uint64_t> d(0, uint64_t(1) << 31);
    for (int i = 0; i < 200; ++i) {
        uint64_t a = d(rng), b = d(rng);
        CHECK((BigUint(a) + BigUint(b)).to_string() == std::to_string(a + b));
        CHECK((BigUint(a) * BigUint(b)).to_string() == std::to_string(a * b));
        if (a >= b) CHECK((BigUint(a) - BigUint(b)).to_string() == std::to_string(a - b));
        CHECK(BigUint::from_string(std::to_string(a)) == BigUint(a));
        CHECK((BigUint(a) < BigUint(b)) == (a < b));
    }
    // carries across limbs
    BigUint big = BigUint::pow2(130);
    BigUint x = big - BigUint(1);
    x += 1;
    CHECK(x == big);
    CHECK(BigUint::pow2(64).to_string() == "18446744073709551616");
}
