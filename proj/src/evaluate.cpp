#include "wsps/evaluate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "wsps/error.hpp"

namespace wsps {

namespace {

void require_node(const Instance& inst, NodeId id, const char* where) {
  if (!inst.contains(id)) throw ModelError(std::string(where) + " references node " + std::to_string(id) + " absent from the instance");
}

}  // namespace

double subnode_load(const Instance& inst, const SubNode& sub) {
  double load = 0.0;
  for (CommodityId k : sub.commodities) {
    if (k < 0 || static_cast<std::size_t>(k) >= inst.commodities().size()) {
      throw ModelError("sub-node of node " + std::to_string(sub.node) + " carries unknown commodity " + std::to_string(k));
    }
    load += inst.commodity(k).quantity;
  }
  return load;
}

CostBreakdown evaluate_objective(const Instance& inst, const Solution& sol) {
  CostBreakdown cost;
  const auto commodities = inst.commodities();
  if (sol.assignment.size() > commodities.size()) {
    throw ModelError("assignment lists more commodities than the instance has");
  }
  for (std::size_t k = 0; k < sol.assignment.size(); ++k) {
    const WarehousePair& p = sol.assignment[k];
    if (p.collection == kNoNode && p.delivery == kNoNode) continue;
    require_node(inst, p.collection, "assignment");
    require_node(inst, p.delivery, "assignment");
    const int slot = inst.warehouse_slot(p.collection);
    if (slot < 0) throw ModelError("collection node " + std::to_string(p.collection) + " is not a warehouse");
    const double q = commodities[k].quantity;
    cost.variable_cost += inst.warehouse(slot).unit_cost * q;
    cost.inter_warehouse_cost += inst.data().alpha * inst.distance(p.collection, p.delivery) * q;
  }
  double length = 0.0;
  for (const Route& r : sol.routes) {
    require_node(inst, r.warehouse, "route");
    NodeId prev = r.warehouse;
    for (const SubNode& s : r.visits) {
      require_node(inst, s.node, "route visit");
      length += inst.distance(prev, s.node);
      prev = s.node;
    }
    if (!r.visits.empty()) length += inst.distance(prev, r.warehouse);
  }
  cost.local_tour_cost = inst.data().beta * length;
  cost.total = cost.variable_cost + cost.local_tour_cost + cost.inter_warehouse_cost;
  return cost;
}

std::vector<double> route_load_profile(const Instance& inst, const Route& route, const Solution& /*sol*/) {
  std::vector<double> loads;
  loads.reserve(route.visits.size());
  const bool collecting = route.kind == RouteKind::Collection;
  for (const SubNode& s : route.visits) {
    loads.push_back(subnode_load(inst, s));
    for (CommodityId k : s.commodities) {
      const Commodity& c = inst.commodity(k);
      if ((collecting ? c.factory : c.customer) != s.node) {
        throw ModelError("visit to node " + std::to_string(s.node) + " carries commodity (" + std::to_string(c.factory) +
                         "," + std::to_string(c.customer) + ") that does not start or end there");
      }
    }
  }
  std::vector<double> profile(loads.size());
  if (collecting) {
    double acc = 0.0;
    for (std::size_t i = 0; i < loads.size(); ++i) profile[i] = acc += loads[i];
  } else {
    double acc = 0.0;
    for (std::size_t i = loads.size(); i-- > 0;) profile[i] = acc += loads[i];
  }
  return profile;
}

int count_multi_allocation_nodes(const Solution& sol) {
  std::map<NodeId, std::set<NodeId>> warehouses_of;
  for (const Route& r : sol.routes) {
    for (const SubNode& s : r.visits) warehouses_of[s.node].insert(s.warehouse);
  }
  return static_cast<int>(std::count_if(warehouses_of.begin(), warehouses_of.end(),
                                        [](const auto& entry) { return entry.second.size() >= 2; }));
}

std::vector<NodeId> used_warehouses(const Solution& sol) {
  std::set<NodeId> used;
  for (const Route& r : sol.routes) {
    if (!r.visits.empty()) used.insert(r.warehouse);
  }
  return {used.begin(), used.end()};
}

}  // namespace wsps
