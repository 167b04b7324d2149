#ifndef GENFAC_REDUCE_HPP
#define GENFAC_REDUCE_HPP

#include <string>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"
#include "genfac/oracle.hpp"

namespace genfac {

// A B-Factor-with-relations instance bundled with its layout certificate.
// Complex vertices carry relations over their incident edges; simple
// vertices (none in the grid construction, gadget vertices after padding
// stay complex too) carry lists.
struct BfrInstance {
    Instance inst;
    LinearLayout layout;
    int cnf_vars = 0;

    // Violations of the relation conditions: every complex relation must
    // have a constant even weight c_v > 0. Empty = certified.
    std::vector<std::string> def_violations() const;
    // Weaker check used by the decision pipeline: every accepted mask of
    // every complex relation has even weight.
    bool all_relations_even() const;
};

// The grid construction: one row per variable, one column per clause,
// relations R0/R+/R- with negated column edges, boundary parity chains with
// the closing edge, clause boundary nodes merged into r^j. Solution count
// equals the number of satisfying assignments (parsimonious). Relation
// weights may still spread over {w, w+2}; normalize_parity establishes the
// constant-weight form.
BfrInstance cnf_to_bfr(const CnfFormula& cnf);

// Loop-free parity padding: every relation whose
// accepted weights are {w, w+2} gains two pad coordinates, selected exactly
// on the low-weight masks, wired to a fresh two-vertex widget (parallel edge
// pair inside) whose relations have constant weight 2. Solution count is
// unchanged; all relations end up constant-weight.
BfrInstance normalize_parity(const BfrInstance& bfr);

// Replaces every complex vertex by a B-realization of its relation
// (existence-preserving, not parsimonious). Returns the B-homogeneous
// instance and the extended layout (gadget vertices spliced at the replaced
// vertex's position).
std::pair<Instance, LinearLayout> bfr_to_bfactor(const BfrInstance& bfr, const DegreeList& b);

}  // namespace genfac

#endif
