#include "wsps/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace wsps {

bool Report::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

std::string Report::summary() const {
  std::ostringstream out;
  for (const Violation& v : violations) out << v.code << ": " << v.message << "\n";
  return out.str();
}

namespace {

std::string str(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  Report report;
  auto fail = [&](std::string code, std::string message) { report.violations.push_back({std::move(code), std::move(message)}); };
  const InstanceData& d = inst.data();
  const std::size_t n = d.nodes.size();

  for (std::size_t k = 0; k < n; ++k) {
    if (d.nodes[k].id != static_cast<NodeId>(k)) {
      fail("node-ids", "node at position " + std::to_string(k) + " has id " + std::to_string(d.nodes[k].id) +
                           "; ids must be 0..n-1 in order");
    }
  }
  if (d.distance.size() != n * n) {
    fail("distance-shape", "distance has " + std::to_string(d.distance.size()) + " entries, expected " + std::to_string(n * n));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = d.distance[i * n + j];
        if (!std::isfinite(c) || c < 0.0) {
          fail("distance-negative", "distance(" + std::to_string(i) + "," + std::to_string(j) + ") = " + str(c));
        } else if (i == j && c != 0.0) {
          fail("distance-diagonal", "distance(" + std::to_string(i) + "," + std::to_string(i) + ") = " + str(c) + " must be 0");
        }
      }
    }
  }

  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Flow& f : d.flows) {
    const std::string tag = "(" + std::to_string(f.from) + "," + std::to_string(f.to) + ")";
    if (!std::isfinite(f.quantity) || f.quantity < 0.0) {
      fail("flow-negative", "flow " + tag + " = " + str(f.quantity));
      continue;
    }
    if (!inst.contains(f.from) || !inst.contains(f.to)) {
      fail("flow-node", "flow " + tag + " references an unknown node");
      continue;
    }
    if (f.quantity > 0.0 && (inst.role(f.from) != Role::Factory || inst.role(f.to) != Role::Customer)) {
      fail("flow-outside-FxC", "flow outside F x C: " + tag + " goes " + std::string(to_string(inst.role(f.from))) +
                                   " -> " + std::string(to_string(inst.role(f.to))));
    }
    if (!seen.insert({f.from, f.to}).second) fail("flow-duplicate", "flow " + tag + " listed twice");
  }

  if (!(d.vehicle_capacity > 0.0) || !std::isfinite(d.vehicle_capacity)) {
    fail("vehicle-capacity", "nonpositive vehicle capacity " + str(d.vehicle_capacity));
  }
  if (!(d.alpha >= 0.0) || !std::isfinite(d.alpha)) fail("alpha", "alpha must be >= 0, got " + str(d.alpha));
  if (!(d.beta >= 0.0) || !std::isfinite(d.beta)) fail("beta", "beta must be >= 0, got " + str(d.beta));

  std::set<NodeId> listed;
  for (const WarehouseSpec& w : d.warehouses) {
    const std::string tag = "warehouse " + std::to_string(w.id);
    if (!inst.contains(w.id) || inst.role(w.id) != Role::Warehouse) {
      fail("warehouse-list", tag + " is not a warehouse node");
    }
    if (!listed.insert(w.id).second) fail("warehouse-list", tag + " listed twice");
    if (!(w.capacity > 0.0) || !std::isfinite(w.capacity)) fail("warehouse-capacity", tag + ": nonpositive capacity " + str(w.capacity));
    if (!(w.unit_cost >= 0.0) || !std::isfinite(w.unit_cost)) fail("warehouse-cost", tag + ": negative unit cost " + str(w.unit_cost));
  }
  for (const Node& node : d.nodes) {
    if (node.role == Role::Warehouse && !listed.count(node.id)) {
      fail("warehouse-list", "warehouse node " + std::to_string(node.id) + " has no capacity/cost record");
    }
  }
  return report;
}

FeasibilityReport validate_solution(const Instance& inst, const Solution& sol, const VariantConfig& cfg) {
  Report report;
  auto fail = [&](std::string code, std::string message) { report.violations.push_back({std::move(code), std::move(message)}); };
  const auto commodities = inst.commodities();
  const double qv = inst.data().vehicle_capacity;
  const auto node_str = [](NodeId id) { return std::to_string(id); };

  // (node, warehouse) -> commodities carried by its sub-node
  std::map<std::pair<NodeId, NodeId>, std::vector<CommodityId>> carried;
  std::map<NodeId, std::set<NodeId>> warehouses_of;

  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    const Route& route = sol.routes[r];
    const std::string rtag = "route " + std::to_string(r);
    if (inst.warehouse_slot(route.warehouse) < 0) {
      fail("structure", rtag + " starts at node " + node_str(route.warehouse) + ", which is not a warehouse");
      continue;
    }
    const Role expected = route.kind == RouteKind::Collection ? Role::Factory : Role::Customer;
    double load = 0.0;
    for (const SubNode& s : route.visits) {
      if (!inst.contains(s.node)) {
        fail("structure", rtag + " visits unknown node " + node_str(s.node));
        continue;
      }
      if (inst.role(s.node) == Role::Warehouse) {
        fail("c10", rtag + " visits warehouse " + node_str(s.node));
        continue;
      }
      if (inst.role(s.node) != expected) {
        fail("c9", rtag + " (" + std::string(to_string(route.kind)) + ") visits " +
                       std::string(to_string(inst.role(s.node))) + " " + node_str(s.node));
      }
      if (s.warehouse != route.warehouse) {
        fail("structure", "sub-node of node " + node_str(s.node) + " names warehouse " + node_str(s.warehouse) +
                              " but rides " + rtag + " from warehouse " + node_str(route.warehouse));
      }
      if (s.commodities.empty()) fail("structure", "sub-node (" + node_str(s.node) + "," + node_str(route.warehouse) + ") carries no commodity");
      auto& slot = carried[{s.node, route.warehouse}];
      if (!slot.empty() || warehouses_of[s.node].count(route.warehouse)) {
        fail("c5", "node " + node_str(s.node) + " is linked to warehouse " + node_str(route.warehouse) + " by more than one visit");
      }
      warehouses_of[s.node].insert(route.warehouse);
      for (CommodityId k : s.commodities) {
        if (k < 0 || static_cast<std::size_t>(k) >= commodities.size()) {
          fail("structure", "node " + node_str(s.node) + " carries unknown commodity " + std::to_string(k));
          continue;
        }
        const Commodity& c = commodities[static_cast<std::size_t>(k)];
        if ((expected == Role::Factory ? c.factory : c.customer) != s.node) {
          fail(expected == Role::Factory ? "c7" : "c8",
               "node " + node_str(s.node) + " carries commodity (" + node_str(c.factory) + "," + node_str(c.customer) + ") not incident to it");
        }
        load += c.quantity;
        slot.push_back(k);
      }
    }
    if (load > qv + kCapacityTolerance) {
      fail("c13", rtag + " from warehouse " + node_str(route.warehouse) + " carries " + str(load) + " > vehicle capacity " + str(qv));
    }
  }

  if (sol.assignment.size() != commodities.size()) {
    fail("structure", "assignment has " + std::to_string(sol.assignment.size()) + " entries, instance has " +
                          std::to_string(commodities.size()) + " commodities");
  }

  std::vector<double> inbound(inst.warehouse_count(), 0.0);
  const std::size_t kmax = std::min(sol.assignment.size(), commodities.size());
  for (std::size_t k = 0; k < kmax; ++k) {
    const Commodity& c = commodities[k];
    const WarehousePair& p = sol.assignment[k];
    const std::string ktag = "commodity (" + node_str(c.factory) + "," + node_str(c.customer) + ")";
    const int ms = inst.warehouse_slot(p.collection);
    const int ns = inst.warehouse_slot(p.delivery);
    if (ms < 0 || ns < 0) {
      fail("c2", ktag + " is not routed through a valid warehouse pair");
      continue;
    }
    inbound[static_cast<std::size_t>(ms)] += c.quantity;
    if (ns != ms) inbound[static_cast<std::size_t>(ns)] += c.quantity;

    const auto has = [&](NodeId node, NodeId wh) {
      auto it = carried.find({node, wh});
      return it != carried.end() && std::count(it->second.begin(), it->second.end(), static_cast<CommodityId>(k)) == 1;
    };
    if (!has(c.factory, p.collection)) {
      fail("c7", ktag + " assigned to collection warehouse " + node_str(p.collection) + " but no sub-node (" +
                     node_str(c.factory) + "," + node_str(p.collection) + ") carries it");
    }
    if (!has(c.customer, p.delivery)) {
      fail("c8", ktag + " assigned to delivery warehouse " + node_str(p.delivery) + " but no sub-node (" +
                     node_str(c.customer) + "," + node_str(p.delivery) + ") carries it");
    }
    if (cfg.variant == Variant::WSPS_WI && p.collection != p.delivery) {
      fail("wi", ktag + " transfers from warehouse " + node_str(p.collection) + " to " + node_str(p.delivery));
    }
  }

  // A sub-node may only carry commodities assigned to its warehouse on its side.
  for (const auto& [key, ks] : carried) {
    const auto [node, wh] = key;
    for (CommodityId k : ks) {
      if (k < 0 || static_cast<std::size_t>(k) >= kmax) continue;
      const Commodity& c = commodities[static_cast<std::size_t>(k)];
      const WarehousePair& p = sol.assignment[static_cast<std::size_t>(k)];
      const bool collection_side = node == c.factory;
      const NodeId expect = collection_side ? p.collection : p.delivery;
      if (expect != wh) {
        fail(collection_side ? "c7" : "c8", "sub-node (" + node_str(node) + "," + node_str(wh) + ") carries commodity (" +
                                                node_str(c.factory) + "," + node_str(c.customer) + ") assigned elsewhere");
      }
    }
  }

  for (std::size_t s = 0; s < inbound.size(); ++s) {
    const WarehouseSpec& w = inst.warehouse(static_cast<int>(s));
    if (inbound[s] > w.capacity + kCapacityTolerance) {
      fail("c3", "warehouse " + node_str(w.id) + " inbound " + str(inbound[s]) + " > capacity " + str(w.capacity));
    }
  }

  for (const auto& group : {inst.factories(), inst.customers()}) {
    for (NodeId id : group) {
      if (inst.demand(id) > 0.0 && !warehouses_of.count(id)) fail("c4", "node " + node_str(id) + " with positive flow is never visited");
    }
  }

  if (cfg.variant == Variant::WSPS_SA) {
    for (const auto& [node, whs] : warehouses_of) {
      if (whs.size() >= 2) fail("sa", "multi-allocated node " + node_str(node) + " served by " + std::to_string(whs.size()) + " warehouses");
    }
  }
  return report;
}

}  // namespace wsps
