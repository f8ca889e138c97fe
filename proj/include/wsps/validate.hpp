#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wsps/model.hpp"

namespace wsps {

struct Violation {
  std::string code;  // e.g. "flow-outside-FxC", "c13", "sa"
  std::string message;
};

struct Report {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
  std::string summary() const;  // one violation per line
};

using ValidationReport = Report;
using FeasibilityReport = Report;

// Instance invariants: contiguous node ids, square non-negative distances with
// zero diagonal, flows only on factory->customer pairs, positive capacities and
// non-negative costs.
ValidationReport validate_instance(const Instance& inst);

// Checks the solution against the model constraints, one violation per
// breach. Codes: "structure", "c2" coverage, "c3" warehouse capacity, "c4"
// visits, "c5" one vehicle per (node, warehouse), "c7"/"c8" commodity and
// sub-node consistency, "c9" route kind, "c10" warehouse on a tour, "c13"
// vehicle capacity, "sa" and "wi" variant restrictions. Flow conservation
// holds by construction of closed routes.
FeasibilityReport validate_solution(const Instance& inst, const Solution& sol, const VariantConfig& cfg);

}  // namespace wsps
