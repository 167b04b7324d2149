#include "genfac/solver_tw.hpp"

#include <algorithm>
#include <string>

#include "genfac/errors.hpp"

namespace genfac {

uint64_t DpTable::encode(const std::vector<int>& f, int s) const {
    uint64_t code = 0;
    for (size_t i = bag.size(); i-- > 0;) code = code * (max_degree + 1) + f[i];
    return code * (max_size + 1) + s;
}

std::pair<std::vector<int>, int> DpTable::decode(uint64_t key) const {
    int s = static_cast<int>(key % (max_size + 1));
    uint64_t code = key / (max_size + 1);
    std::vector<int> f(bag.size());
    for (size_t i = 0; i < bag.size(); ++i) {
        f[i] = static_cast<int>(code % (max_degree + 1));
        code /= (max_degree + 1);
    }
    return {std::move(f), s};
}

void DpTable::add(uint64_t key, const BigUint& v) {
    if (v.is_zero()) return;
    entries[key] += v;
}

DpTable join_naive(const DpTable& a, const DpTable& b) {
    require(a.same_shape(b), "join: bag mismatch");
    DpTable out;
    out.bag = a.bag;
    out.max_degree = a.max_degree;
    out.max_size = a.max_size;
    struct Entry {
        std::vector<int> f;
        int s;
        const BigUint* v;
    };
    auto flatten = [&](const DpTable& t) {
        std::vector<Entry> es;
        es.reserve(t.entries.size());
        for (const auto& [k, v] : t.entries) {
            auto [f, s] = t.decode(k);
            es.push_back({std::move(f), s, &v});
        }
        return es;
    };
    auto ea = flatten(a), eb = flatten(b);
    std::vector<int> f(a.bag.size());
    for (const auto& x : ea) {
        for (const auto& y : eb) {
            int s = x.s + y.s;
            if (s > a.max_size) continue;
            bool ok = true;
            for (size_t i = 0; i < f.size(); ++i) {
                f[i] = x.f[i] + y.f[i];
                if (f[i] > a.max_degree) { ok = false; break; }
            }
            if (!ok) continue;
            out.add(out.encode(f, s), *x.v * *y.v);
        }
    }
    return out;
}

namespace {

struct TableSupport {
    int max_norm = 0;  // largest |f|_1 over entries
    int max_s = 0;     // largest s over entries
};

TableSupport support_of(const DpTable& t) {
    TableSupport sup;
    for (const auto& [k, v] : t.entries) {
        auto [f, s] = t.decode(k);
        int norm = 0;
        for (int x : f) norm += x;
        sup.max_norm = std::max(sup.max_norm, norm);
        sup.max_s = std::max(sup.max_s, s);
    }
    return sup;
}

// Dense lift of a table to (f, F=|f|_1, s) residues mod p.
std::vector<uint64_t> lift_mod_p(const DpTable& t, uint64_t p, uint64_t f_space, int f_range,
                                 int s_range) {
    std::vector<uint64_t> dense(f_space * f_range * s_range, 0);
    for (const auto& [k, v] : t.entries) {
        auto [f, s] = t.decode(k);
        int norm = 0;
        for (int x : f) norm += x;
        uint64_t f_code = k / (t.max_size + 1);
        dense[(f_code * uint64_t(f_range) + norm) * s_range + s] = v.mod_u64(p);
    }
    return dense;
}

}  // namespace

DpTable join_fast(const DpTable& a, const DpTable& b, const PrimeBasis& basis) {
    require(a.same_shape(b), "join: bag mismatch");
    const int k1 = static_cast<int>(a.bag.size());
    const int M = a.max_degree;
    uint64_t f_space = 1;
    for (int i = 0; i < k1; ++i) f_space *= M + 1;

    // Basis must reconstruct subset counts up to 2^m uniquely.
    require(basis.product() > BigUint::pow2(a.max_size),
            "prime basis product too small for 2^m count bound");

    DpTable out;
    out.bag = a.bag;
    out.max_degree = M;
    out.max_size = a.max_size;
    if (a.entries.empty() || b.entries.empty()) return out;

    // Dimension ranges from the actual supports: index sums of nonzero cells
    // stay below the range, so no anti-aliasing headroom is needed anywhere.
    TableSupport sa = support_of(a), sb = support_of(b);
    const int f_range = sa.max_norm + sb.max_norm + 1;
    const int s_range = sa.max_s + sb.max_s + 1;

    std::vector<ConvDim> dims;
    for (int i = 0; i < k1; ++i) dims.push_back({M + 1, true, false});
    dims.push_back({f_range, false, true});
    dims.push_back({s_range, false, true});

    std::vector<std::vector<uint64_t>> per_prime;
    per_prime.reserve(basis.primes.size());
    for (const auto& bp : basis.primes) {
        auto fa = lift_mod_p(a, bp.p, f_space, f_range, s_range);
        auto fb = lift_mod_p(b, bp.p, f_space, f_range, s_range);
        per_prime.push_back(multidim_convolution(fa, fb, dims, bp));
    }

    std::vector<uint64_t> residues(basis.primes.size());
    std::vector<int> f(k1, 0);
    for (uint64_t f_code = 0; f_code < f_space; ++f_code) {
        int norm = 0;
        for (int x : f) norm += x;
        if (norm < f_range) {
            int s_hi = std::min(s_range - 1, a.max_size);
            for (int s = 0; s <= s_hi; ++s) {
                size_t pos = (f_code * uint64_t(f_range) + norm) * s_range + s;
                bool nonzero = false;
                for (size_t i = 0; i < per_prime.size(); ++i) {
                    residues[i] = per_prime[i][pos];
                    nonzero |= residues[i] != 0;
                }
                if (!nonzero) continue;
                BigUint v = crt_reconstruct(residues, basis);
                if (!v.is_zero())
                    out.entries[f_code * uint64_t(a.max_size + 1) + s] = std::move(v);
            }
        }
        for (int i = 0; i < k1; ++i) {  // increment mixed-radix counter, low digit first
            if (++f[i] <= M) break;
            f[i] = 0;
        }
    }
    return out;
}

namespace {

int bag_index(const std::vector<int>& bag, int v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

}  // namespace

SizeProfile count_tw(const Instance& inst, const NiceDecomposition& nd, JoinMode mode,
                     uint64_t mem_budget) {
    inst.validate();
    require(inst.all_lists(), "count_tw requires list constraints at every vertex");
    validate_nice(inst.graph, nd);
    const int m = inst.graph.num_edges();
    SizeProfile zero;
    zero.counts.assign(m + 1, BigUint());
    for (int v = 0; v < inst.graph.num_vertices(); ++v)
        if (inst.list_at(v).empty()) return zero;

    const int M = inst.max_list_value();
    const int width = nd.width();
    PrimeBasis basis;
    if (mode == JoinMode::Fast) {
        // Width guard on the convolution cell count.
        uint64_t cells = 1;
        bool overflow = false;
        for (int i = 0; i <= width; ++i) {
            cells *= M + 1;
            if (cells > (uint64_t(1) << 62)) { overflow = true; break; }
        }
        uint64_t bound = overflow ? UINT64_MAX
                                  : cells * uint64_t((width + 1) * M + 1) * uint64_t(m + 1);
        require(!overflow && bound <= mem_budget,
                "fast-join memory guard: (M+1)^(width+1)*((width+1)M+1)*(m+1) = " +
                    (overflow ? std::string("overflow") : std::to_string(bound)) +
                    " exceeds budget " + std::to_string(mem_budget));
        int f_pad = 1;  // upper bounds for the support-driven join dimensions
        while (f_pad < 2 * ((width + 1) * M + 1) - 1) f_pad <<= 1;
        int s_pad = 1;
        while (s_pad < 2 * (m + 1) - 1) s_pad <<= 1;
        basis = PrimeBasis::build(M, m, std::max(f_pad, s_pad));
    }

    std::vector<DpTable> tables(nd.nodes.size());
    auto order = nd.topo_order();
    for (int id : order) {
        const NiceNode& node = nd.nodes[id];
        DpTable t;
        t.bag = node.bag;
        t.max_degree = M;
        t.max_size = m;
        switch (node.kind) {
            case NiceKind::Leaf:
                t.entries[0] = BigUint(1);
                break;
            case NiceKind::IntroduceVertex: {
                DpTable& c = tables[node.left];
                int pos = bag_index(t.bag, node.vertex);
                for (const auto& [k, v] : c.entries) {
                    auto [f, s] = c.decode(k);
                    f.insert(f.begin() + pos, 0);
                    t.entries[t.encode(f, s)] = v;
                }
                break;
            }
            case NiceKind::IntroduceEdge: {
                DpTable& c = tables[node.left];
                auto [u, w] = inst.graph.edge(node.edge);
                int pu = bag_index(t.bag, u), pw = bag_index(t.bag, w);
                t.entries = c.entries;  // not taking the edge
                for (const auto& [k, v] : c.entries) {
                    auto [f, s] = c.decode(k);
                    // take: degrees above M can never reach any list value
                    if (f[pu] + 1 > M || f[pw] + 1 > M) continue;
                    f[pu]++;
                    f[pw]++;
                    t.add(t.encode(f, s + 1), v);
                }
                break;
            }
            case NiceKind::Forget: {
                DpTable& c = tables[node.left];
                const DegreeList& bv = inst.list_at(node.vertex);
                int pos = bag_index(c.bag, node.vertex);
                for (const auto& [k, v] : c.entries) {
                    auto [f, s] = c.decode(k);
                    if (!bv.contains(f[pos])) continue;
                    f.erase(f.begin() + pos);
                    t.add(t.encode(f, s), v);
                }
                break;
            }
            case NiceKind::Join: {
                DpTable& a = tables[node.left];
                DpTable& b = tables[node.right];
                t = mode == JoinMode::Fast ? join_fast(a, b, basis) : join_naive(a, b);
                break;
            }
        }
        if (node.left >= 0) tables[node.left] = DpTable{};
        if (node.right >= 0) tables[node.right] = DpTable{};
        tables[id] = std::move(t);
    }

    const DpTable& root = tables[nd.root];
    SizeProfile profile;
    profile.counts.assign(m + 1, BigUint());
    for (const auto& [k, v] : root.entries) {
        auto [f, s] = root.decode(k);
        check_internal(f.empty(), "root table has nonempty degree vector");
        profile.counts[s] = v;
    }
    return profile;
}

SizeProfile count_tw_auto(const Instance& inst, JoinMode mode, uint64_t mem_budget) {
    auto td = heuristic_td(inst.graph);
    auto nd = make_nice(inst.graph, td);
    return count_tw(inst, nd, mode, mem_budget);
}

}  // namespace genfac
