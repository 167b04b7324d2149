#ifndef GENFAC_ORACLE_HPP
#define GENFAC_ORACLE_HPP

#include "genfac/core.hpp"

namespace genfac {

struct CnfFormula {
    int num_vars = 0;
    // Clauses as signed 1-based literals; +v = variable v, -v = its negation.
    std::vector<std::vector<int>> clauses;
};

// Ground truth: iterates all 2^m edge subsets (Gray code, incremental degree
// and relation-coordinate updates) and tallies exact counts by size.
// Handles list and relation constraints. workers > 1 partitions the subset
// range; output is deterministic regardless.
SizeProfile brute_force_profile(const Instance& inst, int edge_budget = 25, int workers = 1);

// Number of satisfying assignments by enumeration.
BigUint brute_force_sat(const CnfFormula& cnf, int var_budget = 20);

}  // namespace genfac

#endif
