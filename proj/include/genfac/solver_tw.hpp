#ifndef GENFAC_SOLVER_TW_HPP
#define GENFAC_SOLVER_TW_HPP

#include <cstdint>
#include <unordered_map>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"
#include "genfac/modular.hpp"

namespace genfac {

enum class JoinMode { Naive, Fast };

// DP table at one decomposition node: exact counts indexed by
// (degree vector f in [0,M]^bag, partial solution size s in [0,m]).
// Sparse; key = mixed-radix code of f (base M+1 over the sorted bag),
// times (m+1), plus s.
struct DpTable {
    std::vector<int> bag;  // sorted vertex ids
    int max_degree = 0;    // M
    int max_size = 0;      // m
    std::unordered_map<uint64_t, BigUint> entries;

    uint64_t encode(const std::vector<int>& f, int s) const;
    std::pair<std::vector<int>, int> decode(uint64_t key) const;
    void add(uint64_t key, const BigUint& v);

    bool same_shape(const DpTable& o) const {
        return bag == o.bag && max_degree == o.max_degree && max_size == o.max_size;
    }
};

// Schoolbook join: c[f,s] = sum over f1+f2=f (componentwise, no modulus),
// s1+s2=s of a[f1,s1]*b[f2,s2]; degree sums above M contribute to no cell.
DpTable join_naive(const DpTable& a, const DpTable& b);

// Convolution join: lifts tables to (f, F=|f|_1, s), convolves cyclically
// mod M+1 per degree coordinate and non-cyclically in F and s, reads out at
// F=|f|_1, CRT-reconstructs exact values. Elementwise equal to join_naive.
DpTable join_fast(const DpTable& a, const DpTable& b, const PrimeBasis& basis);

// Default memory budget for the fast path, in field elements (2^31):
// (M+1)^(width+1) * ((width+1)M+1) * (m+1) must not exceed it.
// Overridable via the GENFAC_MEM_BUDGET environment variable in the CLI.
constexpr uint64_t kDefaultMemBudget = uint64_t(1) << 31;

// Counts solutions of every size by dynamic programming over the nice
// decomposition. Requires all-list constraints.
SizeProfile count_tw(const Instance& inst, const NiceDecomposition& nd, JoinMode mode,
                     uint64_t mem_budget = kDefaultMemBudget);

// Convenience: heuristic decomposition + count.
SizeProfile count_tw_auto(const Instance& inst, JoinMode mode,
                          uint64_t mem_budget = kDefaultMemBudget);

}  // namespace genfac

#endif
