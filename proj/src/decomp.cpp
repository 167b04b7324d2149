#include "genfac/decomp.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "genfac/errors.hpp"

namespace genfac {

int TreeDecomposition::width() const {
    size_t mx = 0;
    for (const auto& b : bags) mx = std::max(mx, b.size());
    return static_cast<int>(mx) - 1;
}

int validate_td(const MultiGraph& g, const TreeDecomposition& td) {
    const int nn = td.num_nodes();
    require(nn >= 1, "tree decomposition has no nodes");
    require(static_cast<int>(td.tree_edges.size()) == nn - 1,
            "tree has " + std::to_string(td.tree_edges.size()) + " edges, expected " +
                std::to_string(nn - 1));
    // Tree shape: nn-1 edges + connected.
    std::vector<std::vector<int>> adj(nn);
    for (auto [a, b] : td.tree_edges) {
        require(a >= 0 && a < nn && b >= 0 && b < nn && a != b, "bad tree edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    {
        std::vector<char> seen(nn, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (!seen[y]) { seen[y] = 1; ++cnt; q.push(y); }
        }
        require(cnt == nn, "tree is disconnected");
    }
    for (const auto& b : td.bags) {
        for (int v : b)
            require(v >= 0 && v < g.num_vertices(), "bag vertex out of range: " + std::to_string(v));
        require(std::is_sorted(b.begin(), b.end()) &&
                    std::adjacent_find(b.begin(), b.end()) == b.end(),
                "bag not sorted/unique");
    }
    // (i) every vertex in some bag.
    std::vector<char> covered(g.num_vertices(), 0);
    for (const auto& b : td.bags)
        for (int v : b) covered[v] = 1;
    for (int v = 0; v < g.num_vertices(); ++v)
        require(covered[v], "vertex " + std::to_string(v) + " is in no bag");
    // (ii) every edge covered by some bag.
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        bool ok = false;
        for (const auto& b : td.bags) {
            if (std::binary_search(b.begin(), b.end(), u) &&
                std::binary_search(b.begin(), b.end(), v)) { ok = true; break; }
        }
        require(ok, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") uncovered");
    }
    // (iii) occurrences of each vertex induce a connected subtree.
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<char> has(nn, 0);
        int total = 0, start = -1;
        for (int t = 0; t < nn; ++t)
            if (std::binary_search(td.bags[t].begin(), td.bags[t].end(), v)) {
                has[t] = 1;
                ++total;
                start = t;
            }
        std::vector<char> seen(nn, 0);
        std::queue<int> q;
        q.push(start);
        seen[start] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (has[y] && !seen[y]) { seen[y] = 1; ++cnt; q.push(y); }
        }
        require(cnt == total,
                "occurrences of vertex " + std::to_string(v) + " are not connected in the tree");
    }
    return td.width();
}

int NiceDecomposition::width() const {
    size_t mx = 0;
    for (const auto& n : nodes) mx = std::max(mx, n.bag.size());
    return static_cast<int>(mx) - 1;
}

std::vector<int> NiceDecomposition::topo_order() const {
    std::vector<int> order;
    order.reserve(nodes.size());
    // Iterative post-order from the root.
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [id, state] = stack.back();
        const NiceNode& nd = nodes[id];
        if (state == 0) {
            state = 1;
            if (nd.left >= 0) stack.emplace_back(nd.left, 0);
        } else if (state == 1) {
            state = 2;
            if (nd.right >= 0) stack.emplace_back(nd.right, 0);
        } else {
            order.push_back(id);
            stack.pop_back();
        }
    }
    return order;
}

namespace {

struct NiceBuilder {
    std::vector<NiceNode> nodes;

    int add(NiceKind k, std::vector<int> bag, int left = -1, int right = -1, int vertex = -1,
            int edge = -1) {
        NiceNode n;
        n.kind = k;
        n.bag = std::move(bag);
        n.left = left;
        n.right = right;
        n.vertex = vertex;
        n.edge = edge;
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    // Chain from bag `from` (node id `below`) to bag `to`: forgets then introduces.
    int transition(int below, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        int top = below;
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            top = add(NiceKind::Forget, cur, top, -1, v);
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            top = add(NiceKind::IntroduceVertex, cur, top, -1, v);
        }
        return top;
    }

    // Leaf-up chain that introduces every vertex of `bag`.
    int build_leaf(const std::vector<int>& bag) {
        int top = add(NiceKind::Leaf, {});
        std::vector<int> cur;
        for (int v : bag) {
            cur.push_back(v);
            top = add(NiceKind::IntroduceVertex, cur, top, -1, v);
        }
        return top;
    }
};

}  // namespace

NiceDecomposition make_nice(const MultiGraph& g, const TreeDecomposition& td) {
    validate_td(g, td);
    const int nn = td.num_nodes();
    std::vector<std::vector<int>> adj(nn);
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // Root at node 0; order children deterministically by subtree minimum node id.
    std::vector<int> parent(nn, -2);
    std::vector<std::vector<int>> children(nn);
    std::vector<int> sub_min(nn);
    {
        std::vector<int> order;
        std::vector<int> stack{0};
        parent[0] = -1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            order.push_back(x);
            for (int y : adj[x])
                if (parent[y] == -2) {
                    parent[y] = x;
                    children[x].push_back(y);
                    stack.push_back(y);
                }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int x = *it;
            sub_min[x] = x;
            for (int c : children[x]) sub_min[x] = std::min(sub_min[x], sub_min[c]);
        }
        for (int x = 0; x < nn; ++x)
            std::sort(children[x].begin(), children[x].end(),
                      [&](int a, int b) { return sub_min[a] < sub_min[b]; });
    }

    NiceBuilder nb;
    // build(t) returns a nice node id whose bag equals td.bags[t].
    std::vector<int> built(nn, -1);
    {
        // Post-order over the rooted td.
        std::vector<std::pair<int, size_t>> stack{{0, 0}};
        while (!stack.empty()) {
            auto& [t, ci] = stack.back();
            if (ci < children[t].size()) {
                int c = children[t][ci++];
                stack.emplace_back(c, 0);
                continue;
            }
            const auto& bag = td.bags[t];
            if (children[t].empty()) {
                built[t] = nb.build_leaf(bag);
            } else {
                std::vector<int> tops;
                for (int c : children[t])
                    tops.push_back(nb.transition(built[c], td.bags[c], bag));
                int acc = tops[0];
                for (size_t i = 1; i < tops.size(); ++i)
                    acc = nb.add(NiceKind::Join, bag, acc, tops[i]);
                built[t] = acc;
            }
            stack.pop_back();
        }
    }
    int root = nb.transition(built[0], td.bags[0], {});

    // Place IntroduceEdge nodes. For each vertex, its forget node is unique
    // (root bag is empty so every vertex gets forgotten exactly once).
    std::vector<int> forget_of(g.num_vertices(), -1);
    std::vector<int> depth(nb.nodes.size(), 0);
    {
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            const auto& n = nb.nodes[x];
            if (n.kind == NiceKind::Forget) {
                check_internal(forget_of[n.vertex] == -1, "vertex forgotten twice");
                forget_of[n.vertex] = x;
            }
            for (int c : {n.left, n.right})
                if (c >= 0) {
                    depth[c] = depth[x] + 1;
                    stack.push_back(c);
                }
        }
        for (int v = 0; v < g.num_vertices(); ++v)
            check_internal(forget_of[v] >= 0, "vertex never forgotten");
    }
    // Group edges by insertion point: below the deeper of the two forgets.
    std::vector<std::vector<int>> edges_below(nb.nodes.size());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        int fu = forget_of[u], fv = forget_of[v];
        int at = depth[fu] > depth[fv] ? fu : fv;
        edges_below[at].push_back(e);
    }
    for (size_t f = 0; f < edges_below.size(); ++f) {
        if (edges_below[f].empty()) continue;
        std::sort(edges_below[f].begin(), edges_below[f].end());
        int child = nb.nodes[f].left;
        const std::vector<int> bag = nb.nodes[child].bag;  // nodes reallocate below
        int top = child;
        for (int e : edges_below[f]) top = nb.add(NiceKind::IntroduceEdge, bag, top, -1, -1, e);
        nb.nodes[f].left = top;
    }

    NiceDecomposition nd;
    nd.nodes = std::move(nb.nodes);
    nd.root = root;
    validate_nice(g, nd);
    return nd;
}

void validate_nice(const MultiGraph& g, const NiceDecomposition& nd) {
    check_internal(nd.root >= 0 && nd.root < static_cast<int>(nd.nodes.size()),
                   "nice decomposition: bad root");
    check_internal(nd.nodes[nd.root].bag.empty(), "nice decomposition: root bag not empty");
    std::vector<int> edge_count(g.num_edges(), 0);
    auto order = nd.topo_order();
    check_internal(order.size() == nd.nodes.size(), "nice decomposition: not a tree");
    for (int id : order) {
        const NiceNode& n = nd.nodes[id];
        check_internal(std::is_sorted(n.bag.begin(), n.bag.end()), "bag not sorted");
        auto has = [&](const std::vector<int>& bag, int v) {
            return std::binary_search(bag.begin(), bag.end(), v);
        };
        switch (n.kind) {
            case NiceKind::Leaf:
                check_internal(n.bag.empty() && n.left < 0 && n.right < 0, "bad leaf node");
                break;
            case NiceKind::IntroduceVertex: {
                check_internal(n.left >= 0 && n.right < 0, "introduce-vertex arity");
                const auto& cb = nd.nodes[n.left].bag;
                check_internal(!has(cb, n.vertex) && has(n.bag, n.vertex) &&
                                   n.bag.size() == cb.size() + 1,
                               "introduce-vertex bag mismatch");
                break;
            }
            case NiceKind::IntroduceEdge: {
                check_internal(n.left >= 0 && n.right < 0, "introduce-edge arity");
                check_internal(n.bag == nd.nodes[n.left].bag, "introduce-edge bag mismatch");
                auto [u, v] = g.edge(n.edge);
                check_internal(has(n.bag, u) && has(n.bag, v),
                               "introduce-edge endpoints not in bag");
                edge_count[n.edge]++;
                break;
            }
            case NiceKind::Forget: {
                check_internal(n.left >= 0 && n.right < 0, "forget arity");
                const auto& cb = nd.nodes[n.left].bag;
                check_internal(has(cb, n.vertex) && !has(n.bag, n.vertex) &&
                                   n.bag.size() + 1 == cb.size(),
                               "forget bag mismatch");
                break;
            }
            case NiceKind::Join:
                check_internal(n.left >= 0 && n.right >= 0, "join arity");
                check_internal(n.bag == nd.nodes[n.left].bag && n.bag == nd.nodes[n.right].bag,
                               "join children bags differ");
                break;
        }
    }
    for (int e = 0; e < g.num_edges(); ++e)
        check_internal(edge_count[e] == 1, "edge " + std::to_string(e) + " introduced " +
                                               std::to_string(edge_count[e]) + " times");
    // The underlying (tree, bags) must still be a valid tree decomposition.
    TreeDecomposition td;
    td.bags.reserve(nd.nodes.size());
    for (const auto& n : nd.nodes) td.bags.push_back(n.bag);
    for (size_t i = 0; i < nd.nodes.size(); ++i)
        for (int c : {nd.nodes[i].left, nd.nodes[i].right})
            if (c >= 0) td.tree_edges.emplace_back(static_cast<int>(i), c);
    validate_td(g, td);
}

int cutwidth_of_layout(const MultiGraph& g, const LinearLayout& l) {
    const int n = g.num_vertices();
    require(static_cast<int>(l.order.size()) == n, "layout size != vertex count");
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = l.order[i];
        require(v >= 0 && v < n && pos[v] == -1, "layout is not a permutation");
        pos[v] = i;
    }
    std::vector<int> delta(n + 1, 0);
    for (const auto& [u, v] : g.edges()) {
        int a = std::min(pos[u], pos[v]), b = std::max(pos[u], pos[v]);
        delta[a + 1]++;
        delta[b + 1]--;
    }
    int cur = 0, mx = 0;
    for (int i = 1; i <= n; ++i) {
        cur += delta[i];
        mx = std::max(mx, cur);
    }
    return mx;
}

TreeDecomposition td_from_elimination_order(const MultiGraph& g, const std::vector<int>& order) {
    const int n = g.num_vertices();
    if (n == 0) {
        TreeDecomposition td;
        td.bags.push_back({});
        return td;
    }
    require(static_cast<int>(order.size()) == n, "elimination order size != n");
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    // Simple-graph view of the multigraph, then eliminate along the order.
    std::vector<std::set<int>> adj(n);
    for (const auto& [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    TreeDecomposition td;
    td.bags.assign(n, {});
    std::vector<int> node_of(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        node_of[v] = i;
        std::vector<int> later;
        for (int w : adj[v])
            if (pos[w] > i) later.push_back(w);
        td.bags[i] = later;
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
        for (int a : later)
            for (int b : later)
                if (a != b) adj[a].insert(b);
        for (int w : later) adj[w].erase(v);
    }
    // Parent: node of the earliest-eliminated later neighbor; stitch roots of
    // separate components into a chain (bags are disjoint there, so safe).
    int prev_root = -1;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        int best = -1;
        for (int w : td.bags[i])
            if (w != v && (best == -1 || pos[w] < pos[best])) best = w;
        if (best != -1) {
            td.tree_edges.emplace_back(i, node_of[best]);
        } else {
            if (prev_root != -1) td.tree_edges.emplace_back(prev_root, i);
            prev_root = i;
        }
    }
    return td;
}

TreeDecomposition heuristic_td(const MultiGraph& g) {
    const int n = g.num_vertices();
    if (n == 0) {
        TreeDecomposition td;
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> adj(n);
    for (const auto& [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    auto fill_of = [&](int v) {
        long f = 0;
        std::vector<int> nb(adj[v].begin(), adj[v].end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) ++f;
        return f;
    };
    std::vector<char> done(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = 0;
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            long f = fill_of(v);
            if (best == -1 || f < best_fill) {
                best = v;
                best_fill = f;
            }
        }
        done[best] = 1;
        order.push_back(best);
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (int w : nb) adj[w].erase(best);
        adj[best].clear();
    }
    return td_from_elimination_order(g, order);
}

LinearLayout heuristic_layout(const MultiGraph& g) {
    const int n = g.num_vertices();
    LinearLayout l;
    if (n == 0) return l;
    std::vector<std::vector<int>> nbrs(n);  // with multiplicity
    std::vector<int> deg(n, 0);
    for (const auto& [u, v] : g.edges()) {
        nbrs[u].push_back(v);
        nbrs[v].push_back(u);
        deg[u]++;
        deg[v]++;
    }
    std::vector<char> placed(n, 0);
    std::vector<int> to_placed(n, 0);  // edges from v into the placed prefix
    for (int step = 0; step < n; ++step) {
        int best = -1;
        bool best_adjacent = false;
        int best_delta = 0;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            bool adjacent = to_placed[v] > 0;
            // Cut growth if v is placed next; for the seed, minimal degree.
            int delta = step == 0 ? deg[v] : deg[v] - 2 * to_placed[v];
            // Prefer vertices touching the prefix; among them minimal cut
            // growth; ties by vertex id.
            if (best == -1 || (adjacent && !best_adjacent) ||
                (adjacent == best_adjacent && delta < best_delta)) {
                best = v;
                best_adjacent = adjacent;
                best_delta = delta;
            }
        }
        placed[best] = 1;
        l.order.push_back(best);
        for (int w : nbrs[best])
            if (!placed[w]) to_placed[w]++;
    }
    return l;
}

}  // namespace genfac
