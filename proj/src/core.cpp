#include "genfac/core.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "genfac/errors.hpp"

namespace genfac {

int MultiGraph::add_edge(int u, int v) {
    require(u != v, "loops are not allowed (vertex " + std::to_string(u) + ")");
    require(u >= 0 && u < n_ && v >= 0 && v < n_,
            "edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    return static_cast<int>(edges_.size()) - 1;
}

int MultiGraph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges_) d += (a == v) + (b == v);
    return d;
}

std::vector<int> MultiGraph::incident(int v) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e].first == v || edges_[e].second == v) out.push_back(e);
    return out;
}

DegreeList::DegreeList(std::vector<int> allowed) : allowed_(std::move(allowed)) {
    for (int d : allowed_) require(d >= 0, "negative degree in list");
    std::sort(allowed_.begin(), allowed_.end());
    allowed_.erase(std::unique(allowed_.begin(), allowed_.end()), allowed_.end());
}

bool DegreeList::contains(int d) const {
    return std::binary_search(allowed_.begin(), allowed_.end(), d);
}

bool DegreeList::all_even() const {
    return std::all_of(allowed_.begin(), allowed_.end(), [](int d) { return d % 2 == 0; });
}

bool DegreeList::all_odd() const {
    return std::all_of(allowed_.begin(), allowed_.end(), [](int d) { return d % 2 == 1; });
}

int maxgap(const DegreeList& b) {
    const auto& v = b.values();
    int g = 0;
    for (size_t i = 0; i + 1 < v.size(); ++i) g = std::max(g, v[i + 1] - v[i] - 1);
    return g;
}

int maxgap_witness(const DegreeList& b) {
    int d = maxgap(b);
    require(d >= 1, "maxgap_witness: set has no gap");
    const auto& v = b.values();
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] - 1 == d) return v[i];
    throw internal_error("maxgap_witness: unreachable");
}

Relation::Relation(int arity, std::vector<uint32_t> accepted)
    : arity_(arity), accepted_(std::move(accepted)) {
    require(arity >= 0 && arity <= kMaxArity,
            "relation arity out of range: " + std::to_string(arity));
    std::sort(accepted_.begin(), accepted_.end());
    accepted_.erase(std::unique(accepted_.begin(), accepted_.end()), accepted_.end());
    for (uint32_t m : accepted_)
        require(arity == 32 || m < (uint32_t(1) << arity), "accepted mask exceeds arity");
}

bool Relation::accepts(uint32_t mask) const {
    return std::binary_search(accepted_.begin(), accepted_.end(), mask);
}

bool Relation::is_symmetric() const {
    // Symmetric iff for each weight present, all masks of that weight are present.
    std::vector<uint64_t> count_by_weight(arity_ + 1, 0);
    for (uint32_t m : accepted_) count_by_weight[std::popcount(m)]++;
    auto binom = [&](int n, int k) {
        uint64_t r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int w = 0; w <= arity_; ++w)
        if (count_by_weight[w] != 0 && count_by_weight[w] != binom(arity_, w)) return false;
    return true;
}

bool Relation::is_even() const {
    return std::all_of(accepted_.begin(), accepted_.end(),
                       [](uint32_t m) { return std::popcount(m) % 2 == 0; });
}

std::optional<int> Relation::constant_weight() const {
    if (accepted_.empty()) return std::nullopt;
    int w = std::popcount(accepted_[0]);
    for (uint32_t m : accepted_)
        if (std::popcount(m) != w) return std::nullopt;
    return w;
}

std::vector<int> Relation::weights() const {
    std::set<int> ws;
    for (uint32_t m : accepted_) ws.insert(std::popcount(m));
    return {ws.begin(), ws.end()};
}

Relation Relation::permuted(const std::vector<int>& perm) const {
    require(static_cast<int>(perm.size()) == arity_, "permutation size != arity");
    std::vector<uint32_t> out;
    out.reserve(accepted_.size());
    for (uint32_t m : accepted_) {
        uint32_t p = 0;
        for (int i = 0; i < arity_; ++i)
            if (m >> perm[i] & 1) p |= uint32_t(1) << i;
        out.push_back(p);
    }
    return Relation(arity_, std::move(out));
}

Relation symmetric_relation(int arity, const std::set<int>& s) {
    require(arity >= 0 && arity <= Relation::kMaxArity, "symmetric_relation: arity cap is 24");
    std::vector<uint32_t> acc;
    for (uint32_t m = 0; m < (uint32_t(1) << arity); ++m)
        if (s.count(std::popcount(m))) acc.push_back(m);
    return Relation(arity, std::move(acc));
}

Relation eq_relation(int arity) { return symmetric_relation(arity, {0, arity}); }

Relation hw_eq_relation(int arity, int weight) {
    return symmetric_relation(arity, {weight});
}

bool Instance::all_lists() const {
    return std::all_of(constraints.begin(), constraints.end(), [](const Constraint& c) {
        return std::holds_alternative<DegreeList>(c);
    });
}

const DegreeList& Instance::list_at(int v) const { return std::get<DegreeList>(constraints[v]); }
const RelConstraint& Instance::rel_at(int v) const { return std::get<RelConstraint>(constraints[v]); }
bool Instance::is_rel(int v) const { return std::holds_alternative<RelConstraint>(constraints[v]); }

int Instance::max_list_value() const {
    int m = 0;
    for (const auto& c : constraints) m = std::max(m, std::get<DegreeList>(c).max());
    return std::max(m, 0);
}

void Instance::validate() const {
    require(static_cast<int>(constraints.size()) == graph.num_vertices(),
            "constraint count != vertex count");
    for (int v = 0; v < graph.num_vertices(); ++v) {
        if (!is_rel(v)) continue;
        const auto& rc = rel_at(v);
        auto inc = graph.incident(v);
        require(rc.rel.arity() == static_cast<int>(inc.size()),
                "relation arity != degree at vertex " + std::to_string(v));
        require(rc.edge_order.size() == inc.size(),
                "edge_order size != degree at vertex " + std::to_string(v));
        auto sorted = rc.edge_order;
        std::sort(sorted.begin(), sorted.end());
        require(sorted == inc, "edge_order is not a permutation of incident edges at vertex " +
                                   std::to_string(v));
    }
}

Instance homogeneous_instance(MultiGraph g, const DegreeList& b) {
    Instance inst;
    inst.constraints.assign(g.num_vertices(), Constraint(b));
    inst.graph = std::move(g);
    return inst;
}

BigUint SizeProfile::total() const {
    BigUint t;
    for (const auto& c : counts) t += c;
    return t;
}

ProfileSummary profile_summary(const SizeProfile& p) {
    ProfileSummary s;
    for (size_t i = 0; i < p.counts.size(); ++i) {
        if (p.counts[i].is_zero()) continue;
        s.decide = true;
        if (!s.min_size) s.min_size = static_cast<int>(i);
        s.max_size = static_cast<int>(i);
        s.total += p.counts[i];
    }
    return s;
}

}  // namespace genfac
