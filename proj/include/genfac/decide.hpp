#ifndef GENFAC_DECIDE_HPP
#define GENFAC_DECIDE_HPP

#include <optional>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"

namespace genfac {

// Existence / largest-solution-size queries that drop the size-profile
// dimension where it is not needed. Used as the fallback behind gadget
// verification when instances outgrow the oracle budget: oracle first,
// then a cut-mask DP over a heuristic layout, then a boolean degree-vector
// DP over a heuristic tree decomposition.

bool feasible_cutw(const Instance& inst, const LinearLayout& l, int cut_guard = 22);
std::optional<int> max_size_cutw(const Instance& inst, const LinearLayout& l, int cut_guard = 22);

bool feasible_tw(const Instance& inst, const NiceDecomposition& nd,
                 uint64_t work_guard = uint64_t(1) << 27);
std::optional<int> max_size_tw(const Instance& inst, const NiceDecomposition& nd,
                               uint64_t work_guard = uint64_t(1) << 27);

// Nice decomposition from a min-degree elimination order; the verification
// workhorse (computed once per gadget graph, reused across dangling subsets).
NiceDecomposition verifier_decomposition(const MultiGraph& g);

// Strategy dispatchers. oracle_budget bounds the exact-enumeration path.
bool decide_solvable(const Instance& inst, int oracle_budget = 25);
std::optional<int> max_solution_size(const Instance& inst, int oracle_budget = 25);

}  // namespace genfac

#endif
