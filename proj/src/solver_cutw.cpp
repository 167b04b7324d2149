#include "genfac/solver_cutw.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "genfac/errors.hpp"

namespace genfac {

namespace {

std::vector<int> cut_after(const MultiGraph& g, const std::vector<int>& pos, int i) {
    std::vector<int> cut;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        if ((pos[u] < i) != (pos[v] < i)) cut.push_back(e);
    }
    return cut;
}

struct StepPlan {
    int vertex = 0;
    std::vector<std::pair<int, int>> hat;  // shared edges: (bit in prev cut, bit in cur cut)
    std::vector<int> back_bits;            // delta^- bit positions in prev cut
    std::vector<int> fwd_bits;             // delta^+ bit positions in cur cut
};

StepPlan plan_step(const CutState& prev, const Instance& inst, const LinearLayout& l, int i,
                   const std::vector<int>& cur_cut) {
    StepPlan plan;
    plan.vertex = l.order[i - 1];
    const MultiGraph& g = inst.graph;
    auto touches = [&](int e) {
        auto [u, v] = g.edge(e);
        return u == plan.vertex || v == plan.vertex;
    };
    std::vector<int> hat_prev, hat_cur;
    for (size_t b = 0; b < prev.cut_edges.size(); ++b) {
        if (touches(prev.cut_edges[b]))
            plan.back_bits.push_back(static_cast<int>(b));
        else
            hat_prev.push_back(static_cast<int>(b));
    }
    for (size_t b = 0; b < cur_cut.size(); ++b) {
        if (touches(cur_cut[b]))
            plan.fwd_bits.push_back(static_cast<int>(b));
        else
            hat_cur.push_back(static_cast<int>(b));
    }
    check_internal(hat_prev.size() == hat_cur.size(), "cut bookkeeping mismatch at position " +
                                                          std::to_string(i));
    for (size_t j = 0; j < hat_prev.size(); ++j) {
        // Same edge must sit behind both bit positions.
        check_internal(prev.cut_edges[hat_prev[j]] == cur_cut[hat_cur[j]],
                       "cut edge identity mismatch at position " + std::to_string(i));
        plan.hat.emplace_back(hat_prev[j], hat_cur[j]);
    }
    return plan;
}

CutState fresh_state(const CutState& prev, std::vector<int> cur_cut, int i) {
    CutState cur;
    cur.position = i;
    cur.cut_edges = std::move(cur_cut);
    cur.max_size = prev.max_size;
    cur.table.assign((uint64_t(1) << cur.cut_edges.size()) * (prev.max_size + 1), BigUint());
    return cur;
}

}  // namespace

CutState step_naive(const CutState& prev, const Instance& inst, const LinearLayout& l, int i) {
    std::vector<int> pos(inst.graph.num_vertices());
    for (size_t k = 0; k < l.order.size(); ++k) pos[l.order[k]] = static_cast<int>(k);
    auto cur_cut = cut_after(inst.graph, pos, i);
    StepPlan plan = plan_step(prev, inst, l, i, cur_cut);
    CutState cur = fresh_state(prev, cur_cut, i);
    const DegreeList& bv = inst.list_at(plan.vertex);
    const int m = prev.max_size;

    const size_t hat_n = plan.hat.size();
    for (uint64_t hi = 0; hi < (uint64_t(1) << hat_n); ++hi) {
        uint32_t hat_prev_mask = 0, hat_cur_mask = 0;
        for (size_t j = 0; j < hat_n; ++j) {
            if (hi >> j & 1) {
                hat_prev_mask |= uint32_t(1) << plan.hat[j].first;
                hat_cur_mask |= uint32_t(1) << plan.hat[j].second;
            }
        }
        for (uint64_t fi = 0; fi < (uint64_t(1) << plan.fwd_bits.size()); ++fi) {
            uint32_t fwd_mask = 0;
            int fwd_count = std::popcount(fi);
            for (size_t j = 0; j < plan.fwd_bits.size(); ++j)
                if (fi >> j & 1) fwd_mask |= uint32_t(1) << plan.fwd_bits[j];
            for (uint64_t bi = 0; bi < (uint64_t(1) << plan.back_bits.size()); ++bi) {
                int back_count = std::popcount(bi);
                if (!bv.contains(back_count + fwd_count)) continue;
                uint32_t back_mask = 0;
                for (size_t j = 0; j < plan.back_bits.size(); ++j)
                    if (bi >> j & 1) back_mask |= uint32_t(1) << plan.back_bits[j];
                for (int s = back_count; s <= m; ++s) {
                    const BigUint& src = prev.at(hat_prev_mask | back_mask, s - back_count);
                    if (src.is_zero()) continue;
                    cur.at(hat_cur_mask | fwd_mask, s) += src;
                }
            }
        }
    }
    return cur;
}

CutState step_improved(const CutState& prev, const Instance& inst, const LinearLayout& l, int i) {
    std::vector<int> pos(inst.graph.num_vertices());
    for (size_t k = 0; k < l.order.size(); ++k) pos[l.order[k]] = static_cast<int>(k);
    auto cur_cut = cut_after(inst.graph, pos, i);
    StepPlan plan = plan_step(prev, inst, l, i, cur_cut);
    CutState cur = fresh_state(prev, cur_cut, i);
    const DegreeList& bv = inst.list_at(plan.vertex);
    const int m = prev.max_size;
    const int max_l = std::min(static_cast<int>(plan.fwd_bits.size()),
                               bv.empty() ? -1 : bv.max());

    const size_t hat_n = plan.hat.size();
    std::vector<BigUint> h;  // (l, s) for one hat selection
    for (uint64_t hi = 0; hi < (uint64_t(1) << hat_n); ++hi) {
        uint32_t hat_prev_mask = 0, hat_cur_mask = 0;
        for (size_t j = 0; j < hat_n; ++j) {
            if (hi >> j & 1) {
                hat_prev_mask |= uint32_t(1) << plan.hat[j].first;
                hat_cur_mask |= uint32_t(1) << plan.hat[j].second;
            }
        }
        h.assign(size_t(max_l + 1) * (m + 1), BigUint());
        for (uint64_t bi = 0; bi < (uint64_t(1) << plan.back_bits.size()); ++bi) {
            int back_count = std::popcount(bi);
            uint32_t back_mask = 0;
            for (size_t j = 0; j < plan.back_bits.size(); ++j)
                if (bi >> j & 1) back_mask |= uint32_t(1) << plan.back_bits[j];
            for (int lv = 0; lv <= max_l; ++lv) {
                if (!bv.contains(back_count + lv)) continue;
                for (int s = back_count; s <= m; ++s) {
                    const BigUint& src = prev.at(hat_prev_mask | back_mask, s - back_count);
                    if (src.is_zero()) continue;
                    h[size_t(lv) * (m + 1) + s] += src;
                }
            }
        }
        for (uint64_t fi = 0; fi < (uint64_t(1) << plan.fwd_bits.size()); ++fi) {
            int fwd_count = std::popcount(fi);
            if (fwd_count > max_l) continue;  // no list value can absorb it
            uint32_t fwd_mask = 0;
            for (size_t j = 0; j < plan.fwd_bits.size(); ++j)
                if (fi >> j & 1) fwd_mask |= uint32_t(1) << plan.fwd_bits[j];
            for (int s = 0; s <= m; ++s) {
                const BigUint& src = h[size_t(fwd_count) * (m + 1) + s];
                if (!src.is_zero()) cur.at(hat_cur_mask | fwd_mask, s) = src;
            }
        }
    }
    return cur;
}

SizeProfile count_cutw(const Instance& inst, const LinearLayout& l, StepMode mode, int cut_guard) {
    inst.validate();
    require(inst.all_lists(), "count_cutw requires list constraints at every vertex");
    const MultiGraph& g = inst.graph;
    const int n = g.num_vertices();
    const int m = g.num_edges();
    require(static_cast<int>(l.order.size()) == n, "layout size != vertex count");
    {
        std::vector<char> seen(n, 0);
        for (int v : l.order) {
            require(v >= 0 && v < n && !seen[v], "layout is not a permutation");
            seen[v] = 1;
        }
    }
    require(cutwidth_of_layout(g, l) <= cut_guard,
            "cutwidth guard: layout width " + std::to_string(cutwidth_of_layout(g, l)) +
                " exceeds " + std::to_string(cut_guard));

    CutState state;
    state.position = 0;
    state.max_size = m;
    state.table.assign(m + 1, BigUint());
    state.table[0] = BigUint(1);  // c[0, empty, 0] = 1

    for (int i = 1; i <= n; ++i)
        state = mode == StepMode::Fast ? step_improved(state, inst, l, i)
                                       : step_naive(state, inst, l, i);

    check_internal(state.cut_edges.empty(), "final cut not empty");
    SizeProfile profile;
    profile.counts.assign(m + 1, BigUint());
    for (int s = 0; s <= m; ++s) profile.counts[s] = state.at(0, s);
    return profile;
}

}  // namespace genfac
