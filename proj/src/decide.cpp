#include "genfac/decide.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <unordered_map>

#include "genfac/errors.hpp"
#include "genfac/oracle.hpp"

namespace genfac {

namespace {

// Shared skeleton for the cut-mask DPs: value per cut mask, -1 = infeasible,
// otherwise the best (max) partial solution size. Existence is the special
// case that only distinguishes -1 from >= 0.
std::vector<int> cutw_sweep(const Instance& inst, const LinearLayout& l, int cut_guard) {
    inst.validate();
    require(inst.all_lists(), "cut sweep requires list constraints");
    const MultiGraph& g = inst.graph;
    const int n = g.num_vertices();
    require(static_cast<int>(l.order.size()) == n, "layout size != vertex count");
    require(cutwidth_of_layout(g, l) <= cut_guard,
            "cut guard: layout width exceeds " + std::to_string(cut_guard));

    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[l.order[i]] = i;

    auto cut_after = [&](int i) {
        std::vector<int> cut;
        for (int e = 0; e < g.num_edges(); ++e) {
            auto [u, v] = g.edge(e);
            if ((pos[u] < i) != (pos[v] < i)) cut.push_back(e);
        }
        return cut;
    };

    std::vector<int> prev_cut;
    std::vector<int> table{0};  // mask -> max size, -1 infeasible; position 0: empty cut
    for (int i = 1; i <= n; ++i) {
        int vi = l.order[i - 1];
        auto cur_cut = cut_after(i);
        auto touches = [&](int e) {
            auto [u, v] = g.edge(e);
            return u == vi || v == vi;
        };
        std::vector<int> hat_prev, hat_cur, back_bits, fwd_bits;
        for (size_t b = 0; b < prev_cut.size(); ++b)
            (touches(prev_cut[b]) ? back_bits : hat_prev).push_back(static_cast<int>(b));
        for (size_t b = 0; b < cur_cut.size(); ++b)
            (touches(cur_cut[b]) ? fwd_bits : hat_cur).push_back(static_cast<int>(b));
        check_internal(hat_prev.size() == hat_cur.size(), "cut bookkeeping mismatch");
        const DegreeList& bv = inst.list_at(vi);
        std::vector<int> next(size_t(1) << cur_cut.size(), -1);
        for (uint64_t hi = 0; hi < (uint64_t(1) << hat_prev.size()); ++hi) {
            uint32_t hp = 0, hc = 0;
            for (size_t j = 0; j < hat_prev.size(); ++j)
                if (hi >> j & 1) {
                    hp |= uint32_t(1) << hat_prev[j];
                    hc |= uint32_t(1) << hat_cur[j];
                }
            // best over back selections per count
            std::vector<int> best(back_bits.size() + 1, -1);
            for (uint64_t bi = 0; bi < (uint64_t(1) << back_bits.size()); ++bi) {
                uint32_t bm = 0;
                for (size_t j = 0; j < back_bits.size(); ++j)
                    if (bi >> j & 1) bm |= uint32_t(1) << back_bits[j];
                int val = table[hp | bm];
                if (val < 0) continue;
                int c = std::popcount(bi);
                best[c] = std::max(best[c], val + c);
            }
            for (uint64_t fi = 0; fi < (uint64_t(1) << fwd_bits.size()); ++fi) {
                int fc = std::popcount(fi);
                uint32_t fm = 0;
                for (size_t j = 0; j < fwd_bits.size(); ++j)
                    if (fi >> j & 1) fm |= uint32_t(1) << fwd_bits[j];
                int acc = -1;
                for (size_t bc = 0; bc < best.size(); ++bc)
                    if (best[bc] >= 0 && bv.contains(static_cast<int>(bc) + fc))
                        acc = std::max(acc, best[bc]);
                next[hc | fm] = acc;
            }
        }
        table = std::move(next);
        prev_cut = std::move(cur_cut);
    }
    check_internal(prev_cut.empty() || n == 0, "final cut not empty");
    return table;
}

}  // namespace

bool feasible_cutw(const Instance& inst, const LinearLayout& l, int cut_guard) {
    return cutw_sweep(inst, l, cut_guard)[0] >= 0;
}

std::optional<int> max_size_cutw(const Instance& inst, const LinearLayout& l, int cut_guard) {
    int v = cutw_sweep(inst, l, cut_guard)[0];
    if (v < 0) return std::nullopt;
    return v;
}

namespace {

// Min-degree elimination ordering: cheap and effective on the blob-tree
// graphs gadget verification produces.
std::vector<int> min_degree_order(const MultiGraph& g) {
    const int n = g.num_vertices();
    std::vector<std::set<int>> adj(n);
    for (const auto& [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> done(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            if (best == -1 || adj[v].size() < adj[best].size()) best = v;
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
    return order;
}

// Sparse degree-vector DP over a nice decomposition: map from reachable
// f-codes (mixed radix base M+1 over the sorted bag) to the max partial
// size. Reachable state sets stay tiny on the composed gadget graphs even
// though the dense space would not.
using SparseTable = std::unordered_map<uint64_t, int>;

std::vector<uint64_t> bag_powers(size_t bag_size, int M) {
    std::vector<uint64_t> pw(bag_size + 1, 1);
    for (size_t i = 0; i < bag_size; ++i) pw[i + 1] = pw[i] * (M + 1);
    return pw;
}

SparseTable tw_sweep_sparse(const Instance& inst, const NiceDecomposition& nd,
                            uint64_t work_guard) {
    inst.validate();
    require(inst.all_lists(), "tw sweep requires list constraints");
    const int M = inst.max_list_value();
    for (int v = 0; v < inst.graph.num_vertices(); ++v)
        if (inst.list_at(v).empty()) return {};
    require(nd.width() < 20, "tw sweep width guard");

    std::vector<SparseTable> tables(nd.nodes.size());
    uint64_t work = 0;
    auto charge = [&](uint64_t units) {
        work += units;
        require(work <= work_guard, "tw sweep work guard exceeded");
    };
    for (int id : nd.topo_order()) {
        const NiceNode& node = nd.nodes[id];
        auto pw = bag_powers(node.bag.size(), M);
        auto idx_of = [&](int v) {
            return static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), v) -
                                    node.bag.begin());
        };
        SparseTable t;
        switch (node.kind) {
            case NiceKind::Leaf:
                t[0] = 0;
                break;
            case NiceKind::IntroduceVertex: {
                auto& c = tables[node.left];
                charge(c.size());
                int pos = idx_of(node.vertex);
                uint64_t lo = pw[pos];
                t.reserve(c.size());
                for (auto [code, val] : c) {
                    uint64_t high = code / lo, low = code % lo;
                    t.emplace(high * lo * (M + 1) + low, val);
                }
                break;
            }
            case NiceKind::IntroduceEdge: {
                auto& c = tables[node.left];
                charge(2 * c.size());
                auto [u, w] = inst.graph.edge(node.edge);
                uint64_t pu = pw[idx_of(u)], pwv = pw[idx_of(w)];
                t = c;
                for (auto [code, val] : c) {
                    int du = static_cast<int>(code / pu % (M + 1));
                    int dw = static_cast<int>(code / pwv % (M + 1));
                    if (du + 1 > M || dw + 1 > M) continue;
                    auto [it, fresh] = t.emplace(code + pu + pwv, val + 1);
                    if (!fresh) it->second = std::max(it->second, val + 1);
                }
                break;
            }
            case NiceKind::Forget: {
                auto& c = tables[node.left];
                charge(c.size());
                const DegreeList& bv = inst.list_at(node.vertex);
                const auto& cbag = nd.nodes[node.left].bag;
                int pos = static_cast<int>(std::lower_bound(cbag.begin(), cbag.end(),
                                                            node.vertex) -
                                           cbag.begin());
                uint64_t lo = pw[pos];  // same power in the child bag up to pos
                for (auto [code, val] : c) {
                    int d = static_cast<int>(code / lo % (M + 1));
                    if (!bv.contains(d)) continue;
                    uint64_t high = code / (lo * (M + 1)), rest = code % lo;
                    uint64_t nc = high * lo + rest;
                    auto [it, fresh] = t.emplace(nc, val);
                    if (!fresh) it->second = std::max(it->second, val);
                }
                break;
            }
            case NiceKind::Join: {
                auto& a = tables[node.left];
                auto& b = tables[node.right];
                charge(uint64_t(a.size()) * std::max<uint64_t>(b.size(), 1));
                const size_t k = node.bag.size();
                for (auto [ca, va] : a)
                    for (auto [cb, vb] : b) {
                        uint64_t sum = ca + cb;
                        bool ok = true;
                        for (size_t d = 0; d < k && ok; ++d) {
                            int da = static_cast<int>(ca / pw[d] % (M + 1));
                            int db = static_cast<int>(cb / pw[d] % (M + 1));
                            if (da + db > M) ok = false;
                        }
                        if (!ok) continue;
                        auto [it, fresh] = t.emplace(sum, va + vb);
                        if (!fresh) it->second = std::max(it->second, va + vb);
                    }
                break;
            }
        }
        if (node.left >= 0) tables[node.left] = SparseTable{};
        if (node.right >= 0) tables[node.right] = SparseTable{};
        tables[id] = std::move(t);
    }
    return tables[nd.root];
}

}  // namespace

NiceDecomposition verifier_decomposition(const MultiGraph& g) {
    auto td = td_from_elimination_order(g, min_degree_order(g));
    return make_nice(g, td);
}

bool feasible_tw(const Instance& inst, const NiceDecomposition& nd, uint64_t state_guard) {
    SparseTable root = tw_sweep_sparse(inst, nd, state_guard);
    return root.count(0) > 0;
}

std::optional<int> max_size_tw(const Instance& inst, const NiceDecomposition& nd,
                               uint64_t state_guard) {
    SparseTable root = tw_sweep_sparse(inst, nd, state_guard);
    auto it = root.find(0);
    if (it == root.end()) return std::nullopt;
    return it->second;
}

bool decide_solvable(const Instance& inst, int oracle_budget) {
    return max_solution_size(inst, oracle_budget).has_value();
}

std::optional<int> max_solution_size(const Instance& inst, int oracle_budget) {
    if (inst.graph.num_edges() <= oracle_budget) {
        auto s = profile_summary(brute_force_profile(inst, oracle_budget));
        return s.max_size;
    }
    try {
        return max_size_tw(inst, verifier_decomposition(inst.graph));
    } catch (const precondition_error&) {
        // fall through to the cut-mask sweep
    }
    auto l = heuristic_layout(inst.graph);
    return max_size_cutw(inst, l, 22);
}

}  // namespace genfac
