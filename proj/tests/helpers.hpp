#ifndef GENFAC_TESTS_HELPERS_HPP
#define GENFAC_TESTS_HELPERS_HPP

#include <random>
#include <set>
#include <vector>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"
#include "genfac/solver_tw.hpp"

namespace genfac::testing {

inline MultiGraph mk_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    MultiGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline MultiGraph path_graph(int n) {
    MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline MultiGraph cycle_graph(int n) {
    MultiGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline MultiGraph complete_graph(int n) {
    MultiGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

// Independent maxgap oracle: the literal Def 2.3 search.
inline int maxgap_reference(const DegreeList& b) {
    int best = 0;
    for (int a : b.values())
        for (int d = 0; d <= 64; ++d) {
            bool ok = b.contains(a) && b.contains(a + d + 1);
            for (int x = a + 1; ok && x <= a + d; ++x)
                if (b.contains(x)) ok = false;
            if (ok) best = std::max(best, d);
        }
    return best;
}

// Random multigraph with parallel edges allowed.
inline MultiGraph random_multigraph(std::mt19937& rng, int max_n, int max_m) {
    std::uniform_int_distribution<int> nd(2, max_n);
    int n = nd(rng);
    std::uniform_int_distribution<int> md(0, max_m);
    int m = md(rng);
    MultiGraph g(n);
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int e = 0; e < m; ++e) {
        int u = vd(rng), v = vd(rng);
        if (u == v) v = (v + 1) % n;
        g.add_edge(u, v);
    }
    return g;
}

// Random lists within [0, max_value]; roughly one vertex in 20 gets an empty
// list so the zero-profile short circuit stays exercised.
inline Instance random_list_instance(std::mt19937& rng, int max_n, int max_m, int max_value) {
    MultiGraph g = random_multigraph(rng, max_n, max_m);
    Instance inst;
    std::uniform_int_distribution<int> coin(0, 19);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<int> vals;
        if (coin(rng) != 0) {
            for (int x = 0; x <= max_value; ++x)
                if (bit(rng)) vals.push_back(x);
            if (vals.empty()) vals.push_back(bit(rng) ? 1 : 0);
        }
        inst.constraints.emplace_back(DegreeList(vals));
    }
    inst.graph = std::move(g);
    return inst;
}

// Random valid tree decomposition from a random elimination order.
inline TreeDecomposition random_td(std::mt19937& rng, const MultiGraph& g) {
    std::vector<int> order(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    return td_from_elimination_order(g, order);
}

inline LinearLayout random_layout(std::mt19937& rng, const MultiGraph& g) {
    LinearLayout l;
    l.order.resize(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) l.order[i] = i;
    std::shuffle(l.order.begin(), l.order.end(), rng);
    return l;
}

// Schoolbook reference for join tables: the quadruple loop over entry pairs.
inline DpTable join_reference(const DpTable& a, const DpTable& b) {
    DpTable out;
    out.bag = a.bag;
    out.max_degree = a.max_degree;
    out.max_size = a.max_size;
    for (const auto& [ka, va] : a.entries)
        for (const auto& [kb, vb] : b.entries) {
            auto [fa, sa] = a.decode(ka);
            auto [fb, sb] = b.decode(kb);
            std::vector<int> fsum(fa.size());
            bool ok = sa + sb <= a.max_size;
            for (size_t i = 0; ok && i < fa.size(); ++i) {
                fsum[i] = fa[i] + fb[i];
                if (fsum[i] > a.max_degree) ok = false;
            }
            if (!ok) continue;
            out.entries[out.encode(fsum, sa + sb)] += va * vb;
        }
    return out;
}

inline DpTable random_table(std::mt19937& rng, const std::vector<int>& bag, int max_degree,
                            int max_size, int fill) {
    DpTable t;
    t.bag = bag;
    t.max_degree = max_degree;
    t.max_size = max_size;
    std::uniform_int_distribution<uint64_t> val(0, 1000000);
    std::uniform_int_distribution<int> deg(0, max_degree), sz(0, max_size);
    for (int i = 0; i < fill; ++i) {
        std::vector<int> fvec(bag.size());
        for (auto& x : fvec) x = deg(rng);
        uint64_t v = val(rng);
        if (v) t.entries[t.encode(fvec, sz(rng))] = BigUint(v);
    }
    return t;
}

}  // namespace genfac::testing

#endif
