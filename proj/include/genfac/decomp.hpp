#ifndef GENFAC_DECOMP_HPP
#define GENFAC_DECOMP_HPP

#include <vector>

#include "genfac/core.hpp"

namespace genfac {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;          // per tree node, sorted vertex ids
    std::vector<std::pair<int, int>> tree_edges; // undirected tree edges over node ids

    int num_nodes() const { return static_cast<int>(bags.size()); }
    int width() const;
};

// Checks the three tree-decomposition conditions plus tree shape; returns the
// width. Throws precondition_error naming the first violated condition with a
// witness vertex/edge/node.
int validate_td(const MultiGraph& g, const TreeDecomposition& td);

enum class NiceKind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    int vertex = -1;     // IntroduceVertex / Forget
    int edge = -1;       // IntroduceEdge (global edge id)
    int left = -1;       // children node ids
    int right = -1;
    std::vector<int> bag;  // sorted
};

struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    // Node ids in a bottom-up (children before parents) order.
    std::vector<int> topo_order() const;
};

// Kloks-style transformation: root bag empty, leaf bags empty, binary joins
// with equal bags, every edge index introduced exactly once immediately below
// the forget of its earlier-forgotten endpoint. Width never increases.
NiceDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td);

// Re-validates every NiceDecomposition invariant against g; throws on failure.
void validate_nice(const MultiGraph& g, const NiceDecomposition& nd);

struct LinearLayout {
    std::vector<int> order;  // order[i] = vertex at position i
};

// max_i |C_i| where C_i is the set of edges with exactly one endpoint among
// the first i vertices. Throws if order is not a permutation of V(g).
int cutwidth_of_layout(const MultiGraph& g, const LinearLayout& l);

// Min-fill elimination ordering; valid decomposition, no width guarantee.
TreeDecomposition heuristic_td(const MultiGraph& g);

// Tree decomposition from an explicit elimination order (used for randomized
// valid decompositions in tests).
TreeDecomposition td_from_elimination_order(const MultiGraph& g, const std::vector<int>& order);

// Greedy min-cut-growth layout seeded at a minimum-degree vertex.
LinearLayout heuristic_layout(const MultiGraph& g);

}  // namespace genfac

#endif
