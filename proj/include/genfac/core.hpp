#ifndef GENFAC_CORE_HPP
#define GENFAC_CORE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "genfac/bigint.hpp"

namespace genfac {

// Undirected multigraph. No loops; parallel edges are distinct first-class
// edges with dense, stable indices 0..m-1 in construction order.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n) : n_(n) {}

    int add_edge(int u, int v);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    std::pair<int, int> edge(int e) const { return edges_[e]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int degree(int v) const;
    // Incident edge ids, ascending.
    std::vector<int> incident(int v) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

// Finite ascending set of allowed degrees. May be empty (forces zero solutions).
class DegreeList {
public:
    DegreeList() = default;
    explicit DegreeList(std::vector<int> allowed);
    DegreeList(std::initializer_list<int> allowed)
        : DegreeList(std::vector<int>(allowed)) {}

    const std::vector<int>& values() const { return allowed_; }
    bool empty() const { return allowed_.empty(); }
    bool contains(int d) const;
    int max() const { return allowed_.empty() ? -1 : allowed_.back(); }
    int min() const { return allowed_.empty() ? -1 : allowed_.front(); }

    bool operator==(const DegreeList& o) const { return allowed_ == o.allowed_; }

    // True if every element is even (resp. odd). Empty list is both.
    bool all_even() const;
    bool all_odd() const;

private:
    std::vector<int> allowed_;
};

// Largest d >= 0 such that [a, a+d+1] meets B exactly in {a, a+d+1} for some
// a in B; 0 when |B| <= 1. Closed form: max over consecutive pairs of
// (b_{i+1} - b_i - 1).
int maxgap(const DegreeList& b);
// Smallest witness a of the maximal gap; requires maxgap(b) >= 1.
int maxgap_witness(const DegreeList& b);

// Boolean relation of arity d <= 24; accepted subsets of {0..d-1} stored as
// sorted d-bit masks.
class Relation {
public:
    static constexpr int kMaxArity = 24;

    Relation() = default;
    Relation(int arity, std::vector<uint32_t> accepted);

    int arity() const { return arity_; }
    const std::vector<uint32_t>& accepted() const { return accepted_; }
    bool accepts(uint32_t mask) const;
    size_t size() const { return accepted_.size(); }

    bool is_symmetric() const;
    // All accepted masks have even popcount.
    bool is_even() const;
    // Popcount shared by all accepted masks, if any.
    std::optional<int> constant_weight() const;
    // Sorted set of popcounts over accepted masks.
    std::vector<int> weights() const;

    // Relation over the coordinate permutation: new coordinate i is old
    // coordinate perm[i].
    Relation permuted(const std::vector<int>& perm) const;

    bool operator==(const Relation& o) const {
        return arity_ == o.arity_ && accepted_ == o.accepted_;
    }

private:
    int arity_ = 0;
    std::vector<uint32_t> accepted_;
};

// All d-bit masks with popcount in S.
Relation symmetric_relation(int arity, const std::set<int>& s);
Relation eq_relation(int arity);                // S = {0, arity}
Relation hw_eq_relation(int arity, int weight); // S = {weight}

// Per-vertex constraint: a degree list, or a relation over the vertex's
// incident edges with an explicit edge-coordinate order.
struct RelConstraint {
    Relation rel;
    std::vector<int> edge_order;  // global edge ids, coordinate i <-> edge_order[i]
};
using Constraint = std::variant<DegreeList, RelConstraint>;

struct Instance {
    MultiGraph graph;
    std::vector<Constraint> constraints;  // size == graph.num_vertices()

    bool all_lists() const;
    const DegreeList& list_at(int v) const;
    const RelConstraint& rel_at(int v) const;
    bool is_rel(int v) const;
    // Max over list maxima; requires all_lists().
    int max_list_value() const;

    // Throws precondition_error on any structural violation
    // (sizes, relation arity vs degree, edge_order validity).
    void validate() const;
};

Instance homogeneous_instance(MultiGraph g, const DegreeList& b);

// Exact solution counts indexed by solution size 0..m.
struct SizeProfile {
    std::vector<BigUint> counts;

    BigUint total() const;
    bool operator==(const SizeProfile& o) const { return counts == o.counts; }
};

struct ProfileSummary {
    bool decide = false;
    std::optional<int> min_size;
    std::optional<int> max_size;
    BigUint total;
};

ProfileSummary profile_summary(const SizeProfile& p);

}  // namespace genfac

#endif
