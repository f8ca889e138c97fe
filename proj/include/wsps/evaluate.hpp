#pragma once

#include <vector>

#include "wsps/model.hpp"

namespace wsps {

// Total network cost: variable cost at each commodity's collection warehouse,
// beta-weighted tour lengths (both depot arcs included), and alpha-weighted
// transfer cost between collection and delivery warehouses.
// Throws ModelError when the solution names nodes or commodities the instance
// does not have.
CostBreakdown evaluate_objective(const Instance& inst, const Solution& sol);

// Collection routes: load carried after each visit (prefix sums).
// Delivery routes: load carried just before each visit (suffix sums).
// Throws ModelError if a visit carries commodities foreign to the instance.
std::vector<double> route_load_profile(const Instance& inst, const Route& route, const Solution& sol);

double subnode_load(const Instance& inst, const SubNode& sub);

// Physical nodes served through two or more distinct warehouses.
int count_multi_allocation_nodes(const Solution& sol);

// Warehouse ids with at least one route, ascending.
std::vector<NodeId> used_warehouses(const Solution& sol);

}  // namespace wsps
