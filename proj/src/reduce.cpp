#include "genfac/reduce.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "genfac/errors.hpp"
#include "genfac/gadgets.hpp"

namespace genfac {

std::vector<std::string> BfrInstance::def_violations() const {
    std::vector<std::string> out;
    for (int v = 0; v < inst.graph.num_vertices(); ++v) {
        if (!inst.is_rel(v)) continue;
        const Relation& r = inst.rel_at(v).rel;
        auto w = r.constant_weight();
        if (!w)
            out.push_back("vertex " + std::to_string(v) + ": accepted weights not constant");
        else if (*w == 0 || *w % 2 != 0)
            out.push_back("vertex " + std::to_string(v) + ": weight " + std::to_string(*w) +
                          " not a positive even number");
    }
    return out;
}

bool BfrInstance::all_relations_even() const {
    for (int v = 0; v < inst.graph.num_vertices(); ++v)
        if (inst.is_rel(v) && !inst.rel_at(v).rel.is_even()) return false;
    return true;
}

namespace {

// Accepted masks of the grid relation at r_i^j over the coordinate order
// (left, right, top, negated-top, bottom, negated-bottom). The bottom edge
// is selected iff the top edge is, or the row state triggers the clause.
Relation grid_relation(bool positive, bool negative) {
    std::vector<uint32_t> acc;
    for (int row = 0; row < 2; ++row) {
        for (int top = 0; top < 2; ++top) {
            int trig = (positive && row) || (negative && !row);
            int bot = top | trig;
            uint32_t mask = 0;
            if (row) mask |= 0b11;                  // left, right
            mask |= (top ? 1u : 2u) << 2;           // top / negated-top
            mask |= (bot ? 1u : 2u) << 4;           // bottom / negated-bottom
            acc.push_back(mask);
        }
    }
    return Relation(6, std::move(acc));
}

}  // namespace

BfrInstance cnf_to_bfr(const CnfFormula& cnf) {
    const int n = cnf.num_vars;
    const int m = static_cast<int>(cnf.clauses.size());
    require(n >= 1, "cnf_to_bfr: formula needs at least one variable");
    for (const auto& cl : cnf.clauses)
        for (int lit : cl)
            require(lit != 0 && std::abs(lit) <= n, "cnf_to_bfr: literal out of range");

    // Column-major vertex layout: left boundary column, then per clause the
    // merged boundary node r^j followed by its column, then the right
    // boundary column. The identity order is the layout certificate.
    std::vector<int> left(n + 1), right(n + 1), merged(m + 1);
    std::vector<std::vector<int>> grid(n + 1, std::vector<int>(m + 1, -1));
    int next_id = 0;
    for (int i = 1; i <= n; ++i) left[i] = next_id++;
    for (int j = 1; j <= m; ++j) {
        merged[j] = next_id++;
        for (int i = 1; i <= n; ++i) grid[i][j] = next_id++;
    }
    for (int i = 1; i <= n; ++i) right[i] = next_id++;

    MultiGraph g(next_id);
    // Row edges: (i, j) spans column j to column j+1, j in [0, m].
    std::vector<std::vector<int>> row_edge(n + 1, std::vector<int>(m + 1, -1));
    auto row_vertex = [&](int i, int j) {
        if (j == 0) return left[i];
        if (j == m + 1) return right[i];
        return grid[i][j];
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= m; ++j)
            row_edge[i][j] = g.add_edge(row_vertex(i, j), row_vertex(i, j + 1));
    // Clause-column verticals, positive and negated, segment i in [0, n].
    std::vector<std::vector<int>> vpos(m + 1, std::vector<int>(n + 1, -1));
    std::vector<std::vector<int>> vneg(m + 1, std::vector<int>(n + 1, -1));
    for (int j = 1; j <= m; ++j)
        for (int i = 0; i <= n; ++i) {
            int a = i == 0 ? merged[j] : grid[i][j];
            int b = i == n ? merged[j] : grid[i + 1][j];
            vpos[j][i] = g.add_edge(a, b);
            vneg[j][i] = g.add_edge(a, b);
        }
    // Boundary parity chains and the closing edge balancing the row parities
    // bookkeeping (present in the completeness proof only).
    std::vector<int> bvl(n, -1), bvr(n, -1);
    for (int i = 1; i < n; ++i) {
        bvl[i] = g.add_edge(left[i], left[i + 1]);
        bvr[i] = g.add_edge(right[i], right[i + 1]);
    }
    int closing = g.add_edge(left[n], right[n]);

    Instance inst;
    inst.graph = g;
    inst.constraints.assign(next_id, Constraint(DegreeList{}));
    auto set_rel = [&](int v, Relation r, std::vector<int> order) {
        inst.constraints[v] = RelConstraint{std::move(r), std::move(order)};
    };
    for (int i = 1; i <= n; ++i) {
        std::vector<int> lorder{row_edge[i][0]};
        std::vector<int> rorder{row_edge[i][m]};
        if (i >= 2) {
            lorder.push_back(bvl[i - 1]);
            rorder.push_back(bvr[i - 1]);
        }
        if (i <= n - 1) {
            lorder.push_back(bvl[i]);
            rorder.push_back(bvr[i]);
        }
        if (i == n) {
            lorder.push_back(closing);
            rorder.push_back(closing);
        }
        const int la = static_cast<int>(lorder.size());
        const int ra = static_cast<int>(rorder.size());
        set_rel(left[i], symmetric_relation(la, {0, 2}), std::move(lorder));
        set_rel(right[i], symmetric_relation(ra, {0, 2}), std::move(rorder));
    }
    for (int j = 1; j <= m; ++j) {
        std::vector<char> pos_occ(n + 1, 0), neg_occ(n + 1, 0);
        for (int lit : cnf.clauses[j - 1])
            (lit > 0 ? pos_occ : neg_occ)[std::abs(lit)] = 1;
        for (int i = 1; i <= n; ++i) {
            set_rel(grid[i][j], grid_relation(pos_occ[i], neg_occ[i]),
                    {row_edge[i][j - 1], row_edge[i][j], vpos[j][i - 1], vneg[j][i - 1],
                     vpos[j][i], vneg[j][i]});
        }
        // Merged r^j: the clause starts unsatisfied (negated top-segment edge
        // selected) and must end satisfied (positive bottom-segment edge).
        set_rel(merged[j], Relation(4, {0b0110}),
                {vpos[j][0], vneg[j][0], vpos[j][n], vneg[j][n]});
    }

    BfrInstance bfr;
    bfr.inst = std::move(inst);
    bfr.cnf_vars = n;
    bfr.layout.order.resize(next_id);
    for (int v = 0; v < next_id; ++v) bfr.layout.order[v] = v;
    bfr.inst.validate();
    return bfr;
}

BfrInstance normalize_parity(const BfrInstance& bfr) {
    BfrInstance out = bfr;
    Instance& inst = out.inst;
    const int base_n = inst.graph.num_vertices();
    // Collect deficient vertices first; the graph grows as widgets land.
    std::vector<int> deficient;
    for (int v = 0; v < base_n; ++v) {
        if (!inst.is_rel(v)) continue;
        auto ws = inst.rel_at(v).rel.weights();
        require(!ws.empty(), "normalize_parity: relation with no accepted masks at vertex " +
                                 std::to_string(v));
        if (ws.size() == 1) continue;
        require(ws.size() == 2 && ws[1] - ws[0] == 2,
                "normalize_parity: weight spread other than {w, w+2} at vertex " +
                    std::to_string(v));
        deficient.push_back(v);
    }
    std::vector<std::vector<int>> splice_after(base_n);
    MultiGraph g = inst.graph;
    for (int v : deficient) {
        int w1 = g.num_vertices();
        int w2 = w1 + 1;
        {
            MultiGraph grown(g.num_vertices() + 2);
            for (const auto& [x, y] : g.edges()) grown.add_edge(x, y);
            g = std::move(grown);
        }
        int p1 = g.add_edge(v, w1);
        int p2 = g.add_edge(v, w2);
        int f1 = g.add_edge(w1, w2);
        int f2 = g.add_edge(w1, w2);
        // Host relation: low-weight masks select both pads.
        const auto& rc = inst.rel_at(v);
        auto ws = rc.rel.weights();
        int low = ws[0];
        int arity = rc.rel.arity();
        std::vector<uint32_t> acc;
        for (uint32_t x : rc.rel.accepted())
            acc.push_back(std::popcount(x) == low ? x | (3u << arity) : x);
        auto order = rc.edge_order;
        order.push_back(p1);
        order.push_back(p2);
        inst.constraints[v] = RelConstraint{Relation(arity + 2, std::move(acc)), std::move(order)};
        // Widget: f1 always selected, f2 complements the pad.
        inst.constraints.emplace_back(RelConstraint{Relation(3, {0b011, 0b110}), {p1, f1, f2}});
        inst.constraints.emplace_back(RelConstraint{Relation(3, {0b011, 0b110}), {p2, f1, f2}});
        splice_after[v] = {w1, w2};
    }
    inst.graph = std::move(g);
    std::vector<int> order;
    for (int v : bfr.layout.order) {
        order.push_back(v);
        for (int w : splice_after[v]) order.push_back(w);
    }
    out.layout.order = std::move(order);
    inst.validate();
    check_internal(out.def_violations().empty(), "normalize_parity: output not constant-weight");
    return out;
}

std::pair<Instance, LinearLayout> bfr_to_bfactor(const BfrInstance& bfr, const DegreeList& b) {
    require(!b.empty() && b.min() != 0, "bfr_to_bfactor: 0 in B");
    require(maxgap(b) > 1, "bfr_to_bfactor: maxgap(B) <= 1");
    require(bfr.all_relations_even(), "bfr_to_bfactor: relation with odd-weight accepted mask");

    Instance inst = bfr.inst;
    LinearLayout layout = bfr.layout;
    for (;;) {
        int v = -1;
        for (int x = 0; x < inst.graph.num_vertices(); ++x)
            if (inst.is_rel(x)) { v = x; break; }
        if (v < 0) break;
        const auto& rc = inst.rel_at(v);
        // Insertion wires host edges in ascending edge id; permute the
        // relation coordinates to match.
        auto sorted = rc.edge_order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> perm(sorted.size());
        for (size_t k = 0; k < sorted.size(); ++k)
            perm[k] = static_cast<int>(std::find(rc.edge_order.begin(), rc.edge_order.end(),
                                                 sorted[k]) -
                                       rc.edge_order.begin());
        Gadget gad = realize_even_relation(b, rc.rel.permuted(perm));
        inst = insert_gadget(inst, v, gad, &layout);
    }
    return {std::move(inst), std::move(layout)};
}

}  // namespace genfac
