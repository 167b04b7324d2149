#ifndef GENFAC_IO_HPP
#define GENFAC_IO_HPP

#include <string>

#include "genfac/core.hpp"
#include "genfac/decomp.hpp"
#include "genfac/gadgets.hpp"
#include "genfac/oracle.hpp"

namespace genfac {

// Line-oriented instance format, 1-based ids in files:
//   p genfac <n> <m>
//   e <id> <u> <v>
//   v <id> list <b1,b2,...>        (empty list: "-")
//   v <id> rel <arity> <hex,...> order <edge ids...>
//   portal <vertex> <count>        (gadget files, dangling order)
//   penalized <alpha> <beta> <internal 0|1>
//   c <comment>
std::string emit_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string emit_gadget(const Gadget& g);
Gadget parse_gadget(const std::string& text);

// PACE-2017 tree decomposition format.
std::string emit_td(const TreeDecomposition& td, int graph_n);
TreeDecomposition parse_td(const std::string& text);

// Single line of whitespace-separated 1-based vertex ids.
std::string emit_layout(const LinearLayout& l);
LinearLayout parse_layout(const std::string& text);

// DIMACS CNF.
std::string emit_dimacs(const CnfFormula& cnf);
CnfFormula parse_dimacs(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace genfac

#endif
