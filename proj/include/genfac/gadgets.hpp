#ifndef GENFAC_GADGETS_HPP
#define GENFAC_GADGETS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"

namespace genfac {

// B-homogeneous graph with ordered dangling edges. dangling[i] is the portal
// vertex of dangling edge d_{i+1}; a portal vertex may carry several
// dangling edges (portal multiplicity).
struct Gadget {
    enum class Kind { Decision, Penalized };

    MultiGraph graph;
    DegreeList b;
    std::vector<int> dangling;
    Kind kind = Kind::Decision;
    int64_t alpha = 0;          // penalized: target solution size
    int beta = 0;               // penalized: penalty
    bool internal_count = false;  // count |S \ D| instead of |S|

    int arity() const { return static_cast<int>(dangling.size()); }
    // Consecutive (vertex, multiplicity) runs of the dangling sequence.
    std::vector<std::pair<int, int>> portal_groups() const;
    // No parallel edges; loops are impossible by construction.
    bool is_simple() const;
};

// Decision realizations (all require 0 not in B and maxgap(B) > 1).

// HW=2 on 2 danglings: split edge of K_{min B + 1}. Accepted = {11}.
Gadget realize_hw22(const DegreeList& b);

// EQ(k): accepted = {all-zero, all-one}. k must be even when B is
// single-parity (parity obstruction otherwise); any k >= 1 for mixed B.
Gadget realize_eq(const DegreeList& b, int k);

// HW=1 on k danglings; for even-only B a paired second component HW=1 on
// paired_l danglings is mandatory (and forbidden otherwise). The pair
// realizes the product relation: exactly one of the first k and exactly one
// of the last paired_l danglings.
Gadget realize_hw_eq1(const DegreeList& b, int k, std::optional<int> paired_l = {});

// Realization of an arbitrary even relation (arity <= 10).
// Portal vertices are pairwise distinct.
Gadget realize_even_relation(const DegreeList& b, const Relation& r);

// The relation realized by realize_hw_eq1 with a pair (k, l).
Relation hw1_pair_relation(int k, int l);

// r-regular graph with BFS-certified girth >= g. Deterministic library for
// small cases, randomized pairing + girth-repair switches otherwise.
struct GirthGraph {
    MultiGraph graph;
    int degree = 0;
    int girth = 0;  // certified lower bound: actual shortest cycle length
};
GirthGraph high_girth_regular(int r, int g);
// Shortest cycle length; INT_MAX if acyclic (forest).
int girth_of(const MultiGraph& g);

// Penalized realizations (maxgap(B) > 1; 0 in B allowed).

// HW=2 on 2 danglings with penalty beta: split edge of an (a+d+1)-regular
// graph of girth >= max(beta, 3).
Gadget realize_hw22_penalized(const DegreeList& b, int beta);

// Internal realization (sizes count |S \ D|) of EQ(d+1) with penalty beta.
Gadget realize_eq_penalized_internal(const DegreeList& b, int beta);

// Inserting a gadget at vertex v per the insertion definition: v is removed,
// its incident edges (ascending edge id) are rewired to the gadget danglings
// in portal order; gadget vertices carry list B. Host edge ids are preserved;
// gadget-internal edges are appended. If layout is given, the gadget's
// vertices are spliced in at v's position.
Instance insert_gadget(const Instance& host, int v, const Gadget& g,
                       LinearLayout* layout = nullptr);

struct VerifyReport {
    bool pass = false;
    int arity = 0;
    std::vector<std::string> failures;  // one line per violated dangling subset
};

// Exhaustively checks the realization contract: for every dangling subset D',
// the internal instance (portal lists shifted down by selected-dangling
// counts) is solvable iff D' is accepted. Oracle when small, feasibility DPs
// otherwise.
VerifyReport verify_realization(const Gadget& g, const Relation& r, int oracle_budget = 25);

// Penalized contract: accepted subsets attain size alpha exactly; rejected
// subsets reach at most alpha - beta (vacuously when unsolvable).
VerifyReport verify_penalized(const Gadget& g, const Relation& r, int oracle_budget = 25);

// Internal instance for one dangling subset (exposed for tests).
Instance gadget_internal_instance(const Gadget& g, uint32_t selected);

}  // namespace genfac

#endif
