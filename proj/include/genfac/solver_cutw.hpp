#ifndef GENFAC_SOLVER_CUTW_HPP
#define GENFAC_SOLVER_CUTW_HPP

#include <cstdint>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"

namespace genfac {

enum class StepMode { Naive, Fast };

// DP state after layout position i: for every subset of the cut edges C_i
// and every size s, the number of ways to extend that cut selection to a
// partial solution on the first i vertices.
struct CutState {
    int position = 0;
    std::vector<int> cut_edges;     // global edge ids, ascending
    std::vector<BigUint> table;     // index = mask * (m+1) + s
    int max_size = 0;

    BigUint& at(uint32_t mask, int s) { return table[uint64_t(mask) * (max_size + 1) + s]; }
    const BigUint& at(uint32_t mask, int s) const {
        return table[uint64_t(mask) * (max_size + 1) + s];
    }
};

// One DP step with the improved h-table recurrence; elementwise equal to the
// naive step. Exposed for the step-equivalence property tests.
CutState step_improved(const CutState& prev, const Instance& inst, const LinearLayout& l, int i);
CutState step_naive(const CutState& prev, const Instance& inst, const LinearLayout& l, int i);

// Counts solutions of every size along the layout. Requires all-list
// constraints; refuses cuts wider than the guard (default 25).
SizeProfile count_cutw(const Instance& inst, const LinearLayout& l, StepMode mode,
                       int cut_guard = 25);

}  // namespace genfac

#endif
