#pragma once

#include <iosfwd>
#include <string>

#include "fairslice/allocation.hpp"
#include "fairslice/discrete.hpp"
#include "fairslice/gadgets.hpp"
#include "fairslice/valuation.hpp"

namespace fairslice {

// JSON formats. Rationals travel as "p/q" strings; agent indices are 1-based
// on the wire and 0-based in memory.
//
//   cake instance   {"type":"cake", "agents":[{"blocks":[["l","r","h"],...]},...]}
//   cake allocation {"type":"cake-allocation", "cuts":["p/q",...], "order":[1,...]}
//   item instance   {"type":"items", "items":m, "agents":[["v",...],...]}
//   item allocation {"type":"items-allocation", "cuts":[c,...], "order":[1,...]}
//
// Writers emit 2-space-indented JSON with keys in the order above, so output
// is byte-for-byte reproducible.

std::string cake_instance_to_json(const CakeInstance& inst);
CakeInstance cake_instance_from_json(const std::string& text);

std::string cake_allocation_to_json(const ContiguousAllocation& alloc);
ContiguousAllocation cake_allocation_from_json(const std::string& text);

std::string discrete_instance_to_json(const DiscreteInstance& inst);
DiscreteInstance discrete_instance_from_json(const std::string& text);

std::string discrete_allocation_to_json(const DiscreteAllocation& alloc);
DiscreteAllocation discrete_allocation_from_json(const std::string& text);

// DIMACS CNF with exactly three (not necessarily distinct) literals per
// clause. Comment lines, the "p cnf V C" header, 0-terminated clauses.
Formula3SAT formula_from_dimacs(std::istream& in);
std::string formula_to_dimacs(const Formula3SAT& f);

std::string read_file(const std::string& path);     // throws on failure
void write_file(const std::string& path, const std::string& text);

}  // namespace fairslice
