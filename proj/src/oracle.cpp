#include "genfac/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

#include "genfac/errors.hpp"

namespace genfac {

namespace {

struct VertexCheck {
    // list vertices: satisfied iff degree bit set; relation vertices:
    // satisfied iff accept[local coordinate mask].
    bool is_rel = false;
    uint64_t degree_bits = 0;        // bit d: degree d allowed (lists)
    std::vector<char> accept;        // index: local mask (relations)
};

struct EdgeHook {
    int u, v;
    uint32_t u_coord_bit = 0;  // local coordinate bit at u if u is a relation vertex
    uint32_t v_coord_bit = 0;
};

} // namespace

SizeProfile brute_force_profile(const Instance& inst, int edge_budget, int workers) {
    inst.validate();
    const MultiGraph& g = inst.graph;
    const int n = g.num_vertices();
    const int m = g.num_edges();
    require(m <= edge_budget, "oracle edge budget exceeded: m = " + std::to_string(m) +
                                  " > " + std::to_string(edge_budget));
    require(m < 63, "oracle cannot enumerate 2^m subsets for m >= 63");

    std::vector<VertexCheck> checks(n);
    for (int v = 0; v < n; ++v) {
        if (inst.is_rel(v)) {
            const auto& rc = inst.rel_at(v);
            require(rc.rel.arity() <= 22, "oracle relation lookup cap (arity 22) exceeded");
            checks[v].is_rel = true;
            checks[v].accept.assign(size_t(1) << rc.rel.arity(), 0);
            for (uint32_t mask : rc.rel.accepted()) checks[v].accept[mask] = 1;
        } else {
            for (int d : inst.list_at(v).values())
                if (d < 64) checks[v].degree_bits |= uint64_t(1) << d;
        }
    }
    std::vector<EdgeHook> hooks(m);
    for (int e = 0; e < m; ++e) {
        auto [u, v] = g.edge(e);
        hooks[e] = {u, v, 0, 0};
        if (inst.is_rel(u)) {
            const auto& eo = inst.rel_at(u).edge_order;
            int c = static_cast<int>(std::find(eo.begin(), eo.end(), e) - eo.begin());
            hooks[e].u_coord_bit = uint32_t(1) << c;
        }
        if (inst.is_rel(v)) {
            const auto& eo = inst.rel_at(v).edge_order;
            int c = static_cast<int>(std::find(eo.begin(), eo.end(), e) - eo.begin());
            hooks[e].v_coord_bit = uint32_t(1) << c;
        }
    }

    const uint64_t total = uint64_t(1) << m;
    workers = std::max(1, std::min<int>(workers, 64));
    if (total < 1024) workers = 1;

    auto run_range = [&](uint64_t lo, uint64_t hi, std::vector<uint64_t>& counts) {
        std::vector<int> deg(n, 0);
        std::vector<uint32_t> relmask(n, 0);
        int unsat = 0;
        std::vector<char> sat(n, 0);
        auto vsat = [&](int v) {
            return checks[v].is_rel ? bool(checks[v].accept[relmask[v]])
                                    : bool(checks[v].degree_bits >> deg[v] & 1);
        };
        auto flip_edge = [&](int e, int dir) {
            const EdgeHook& h = hooks[e];
            for (int side = 0; side < 2; ++side) {
                int v = side ? h.v : h.u;
                uint32_t cb = side ? h.v_coord_bit : h.u_coord_bit;
                if (checks[v].is_rel)
                    relmask[v] ^= cb;
                else
                    deg[v] += dir;
                bool now = vsat(v);
                if (now != bool(sat[v])) {
                    unsat += now ? -1 : 1;
                    sat[v] = now;
                }
            }
        };
        // Initialize at the Gray code of lo.
        uint64_t cur = lo ^ (lo >> 1);
        int size = std::popcount(cur);
        for (int v = 0; v < n; ++v) sat[v] = 0;
        for (int e = 0; e < m; ++e)
            if (cur >> e & 1) {
                const EdgeHook& h = hooks[e];
                if (checks[h.u].is_rel) relmask[h.u] ^= h.u_coord_bit; else deg[h.u]++;
                if (checks[h.v].is_rel) relmask[h.v] ^= h.v_coord_bit; else deg[h.v]++;
            }
        unsat = 0;
        for (int v = 0; v < n; ++v) {
            sat[v] = vsat(v);
            if (!sat[v]) ++unsat;
        }
        for (uint64_t idx = lo;;) {
            if (unsat == 0) counts[size]++;
            if (++idx >= hi) break;
            // gray(idx) differs from gray(idx-1) exactly at the lowest set bit of idx
            int e = std::countr_zero(idx);
            bool was = cur >> e & 1;
            cur ^= uint64_t(1) << e;
            size += was ? -1 : 1;
            flip_edge(e, was ? -1 : 1);
        }
    };

    std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(m + 1, 0));
    if (workers == 1) {
        run_range(0, total, partial[0]);
    } else {
        std::vector<std::thread> threads;
        uint64_t chunk = total / workers;
        for (int w = 0; w < workers; ++w) {
            uint64_t lo = w * chunk;
            uint64_t hi = w + 1 == workers ? total : lo + chunk;
            threads.emplace_back([&, lo, hi, w] { run_range(lo, hi, partial[w]); });
        }
        for (auto& t : threads) t.join();
    }

    SizeProfile profile;
    profile.counts.assign(m + 1, BigUint());
    for (int w = 0; w < workers; ++w)
        for (int s = 0; s <= m; ++s) profile.counts[s] += partial[w][s];
    return profile;
}

BigUint brute_force_sat(const CnfFormula& cnf, int var_budget) {
    require(cnf.num_vars >= 0, "negative variable count");
    require(cnf.num_vars <= var_budget, "oracle variable budget exceeded: n = " +
                                            std::to_string(cnf.num_vars) + " > " +
                                            std::to_string(var_budget));
    for (const auto& cl : cnf.clauses)
        for (int lit : cl)
            require(lit != 0 && std::abs(lit) <= cnf.num_vars,
                    "literal out of range: " + std::to_string(lit));
    uint64_t count = 0;
    const uint64_t total = uint64_t(1) << cnf.num_vars;
    for (uint64_t a = 0; a < total; ++a) {
        bool ok = true;
        for (const auto& cl : cnf.clauses) {
            bool clause_sat = false;
            for (int lit : cl) {
                bool val = a >> (std::abs(lit) - 1) & 1;
                if (lit > 0 ? val : !val) { clause_sat = true; break; }
            }
            if (!clause_sat) { ok = false; break; }
        }
        if (ok) ++count;
    }
    return BigUint(count);
}

}  // namespace genfac
