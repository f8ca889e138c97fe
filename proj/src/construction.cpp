#include "wsps/construction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <span>
#include <string>

#include "wsps/error.hpp"

namespace wsps {

std::string_view to_string(AssignReason reason) {
  switch (reason) {
    case AssignReason::CheapestFeasible: return "cheapest-feasible";
    case AssignReason::Nearest: return "nearest";
    case AssignReason::FallbackSplit: return "fallback-split";
    case AssignReason::FollowOrigin: return "follow-origin";
  }
  return "?";
}

namespace {

class Allocator {
 public:
  Allocator(const Instance& inst, Variant variant)
      : inst_(inst),
        variant_(variant),
        collect_(inst.commodities().size(), -1),
        deliver_(inst.commodities().size(), -1),
        inbound_(inst.warehouse_count(), 0.0) {}

  // Extra inbound at `slot` if the commodities of `node` in `ks` were attached there.
  double need(NodeId node, std::span<const CommodityId> ks, int slot) const {
    double extra = 0.0;
    for (CommodityId k : ks) {
      if (other(node, k) != slot) extra += inst_.commodity(k).quantity;
    }
    return extra;
  }

  bool fits(NodeId node, std::span<const CommodityId> ks, int slot) const {
    return inbound_[static_cast<std::size_t>(slot)] + need(node, ks, slot) <=
           inst_.warehouse(slot).capacity + kCapacityTolerance;
  }

  void attach(NodeId node, std::span<const CommodityId> ks, int slot, AssignReason reason, ConstructionTrace& trace) {
    inbound_[static_cast<std::size_t>(slot)] += need(node, ks, slot);
    for (CommodityId k : ks) side(node, k) = slot;
    trace.assignments.push_back({node, inst_.warehouses()[static_cast<std::size_t>(slot)], reason, {ks.begin(), ks.end()}});
  }

  // Places the node whole on the first fitting slot of `order`, else spreads
  // its commodities (largest first) over `order`.
  void place(NodeId node, const std::vector<int>& order, AssignReason reason, ConstructionTrace& trace) {
    const auto ks = inst_.commodities_of(node);
    for (int slot : order) {
      if (fits(node, ks, slot)) {
        attach(node, ks, slot, reason, trace);
        return;
      }
    }
    if (variant_ == Variant::WSPS_SA) {
      throw ConstructionError(node, "node " + std::to_string(node) + " (demand " + std::to_string(inst_.demand(node)) +
                                        ") fits no single warehouse under single allocation");
    }
    std::vector<CommodityId> sorted(ks.begin(), ks.end());
    std::stable_sort(sorted.begin(), sorted.end(), [&](CommodityId a, CommodityId b) {
      return inst_.commodity(a).quantity > inst_.commodity(b).quantity;
    });
    std::vector<std::vector<CommodityId>> groups(inst_.warehouse_count());
    for (CommodityId k : sorted) {
      const CommodityId one[] = {k};
      bool placed = false;
      for (int slot : order) {
        if (fits(node, one, slot)) {
          inbound_[static_cast<std::size_t>(slot)] += need(node, one, slot);
          side(node, k) = slot;
          groups[static_cast<std::size_t>(slot)].push_back(k);
          placed = true;
          break;
        }
      }
      if (!placed) {
        throw ConstructionError(node, "node " + std::to_string(node) + " cannot be placed: commodity of " +
                                          std::to_string(inst_.commodity(k).quantity) +
                                          " units exceeds every warehouse's remaining capacity");
      }
    }
    for (int slot : order) {
      auto& g = groups[static_cast<std::size_t>(slot)];
      if (g.empty()) continue;
      std::sort(g.begin(), g.end());
      trace.assignments.push_back({node, inst_.warehouses()[static_cast<std::size_t>(slot)], AssignReason::FallbackSplit, g});
    }
  }

  // No-transfer variant: each customer commodity follows its collection slot.
  void follow_origin(NodeId customer, ConstructionTrace& trace) {
    std::vector<std::vector<CommodityId>> groups(inst_.warehouse_count());
    for (CommodityId k : inst_.commodities_of(customer)) {
      groups[static_cast<std::size_t>(collect_[static_cast<std::size_t>(k)])].push_back(k);
    }
    for (std::size_t slot = 0; slot < groups.size(); ++slot) {
      if (!groups[slot].empty()) attach(customer, groups[slot], static_cast<int>(slot), AssignReason::FollowOrigin, trace);
    }
  }

  int slot_of(NodeId node, CommodityId k) const {
    return inst_.commodity(k).factory == node ? collect_[static_cast<std::size_t>(k)] : deliver_[static_cast<std::size_t>(k)];
  }
  const std::vector<int>& collect() const { return collect_; }
  const std::vector<int>& deliver() const { return deliver_; }

 private:
  int& side(NodeId node, CommodityId k) {
    return inst_.commodity(k).factory == node ? collect_[static_cast<std::size_t>(k)] : deliver_[static_cast<std::size_t>(k)];
  }
  int other(NodeId node, CommodityId k) const {
    return inst_.commodity(k).factory == node ? deliver_[static_cast<std::size_t>(k)] : collect_[static_cast<std::size_t>(k)];
  }

  const Instance& inst_;
  Variant variant_;
  std::vector<int> collect_;
  std::vector<int> deliver_;
  std::vector<double> inbound_;
};

std::vector<NodeId> by_demand(const Instance& inst, std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> nodes;
  for (auto group : {a, b}) {
    for (NodeId id : group) {
      if (inst.demand(id) > 0.0) nodes.push_back(id);
    }
  }
  std::sort(nodes.begin(), nodes.end(), [&](NodeId x, NodeId y) {
    return inst.demand(x) != inst.demand(y) ? inst.demand(x) > inst.demand(y) : x < y;
  });
  return nodes;
}

struct Stop {
  NodeId node;
  double load;
};

// Nearest-neighbour tours over the stops of one (warehouse, kind).
void build_tours(const Instance& inst, NodeId depot, RouteKind kind, std::vector<Stop> stops, Solution& sol,
                 ConstructionTrace& trace, const std::vector<std::vector<CommodityId>>& carried) {
  const double qv = inst.data().vehicle_capacity;
  std::vector<bool> linked(stops.size(), false);
  std::size_t remaining = stops.size();
  while (remaining > 0) {
    Route route{depot, kind, {}};
    double residual = qv;
    NodeId at = depot;
    for (;;) {
      std::size_t pick = stops.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < stops.size(); ++s) {
        if (linked[s] || stops[s].load > residual + kCapacityTolerance) continue;
        const double d = inst.distance(at, stops[s].node);
        if (d < best) {  // stops are in id order, so ties keep the lowest id
          best = d;
          pick = s;
        }
      }
      if (pick == stops.size()) break;
      linked[pick] = true;
      --remaining;
      residual -= stops[pick].load;
      at = stops[pick].node;
      route.visits.push_back({at, depot, carried[pick]});
    }
    if (route.visits.empty()) {
      const auto it = std::find(linked.begin(), linked.end(), false);
      const NodeId stuck = stops[static_cast<std::size_t>(it - linked.begin())].node;
      throw ConstructionError(stuck, "node " + std::to_string(stuck) + " needs more than one vehicle at warehouse " +
                                         std::to_string(depot));
    }
    RouteEvent ev{depot, kind, {}};
    for (const SubNode& s : route.visits) ev.visits.push_back(s.node);
    trace.routes.push_back(std::move(ev));
    sol.routes.push_back(std::move(route));
  }
}

}  // namespace

std::pair<Solution, ConstructionTrace> construct_initial(const Instance& inst, const VariantConfig& cfg,
                                                         std::uint64_t /*seed*/) {
  ConstructionTrace trace;
  Allocator alloc(inst, cfg.variant);
  const std::size_t nw = inst.warehouse_count();
  if (nw == 0 && inst.total_demand() > 0.0) throw ConstructionError(kNoNode, "instance has flow but no warehouse");

  std::vector<int> by_cost(nw);
  for (std::size_t s = 0; s < nw; ++s) by_cost[s] = static_cast<int>(s);
  std::stable_sort(by_cost.begin(), by_cost.end(), [&](int a, int b) {
    return inst.warehouse(a).unit_cost < inst.warehouse(b).unit_cost;
  });

  const bool wi = cfg.variant == Variant::WSPS_WI;
  const auto order = wi ? by_demand(inst, inst.factories(), {}) : by_demand(inst, inst.factories(), inst.customers());
  for (NodeId node : order) {
    if (inst.role(node) == Role::Factory) {
      alloc.place(node, by_cost, AssignReason::CheapestFeasible, trace);
    } else {
      std::vector<int> nearest(by_cost.size());
      for (std::size_t s = 0; s < nw; ++s) nearest[s] = static_cast<int>(s);
      std::stable_sort(nearest.begin(), nearest.end(), [&](int a, int b) {
        return inst.distance(inst.warehouses()[static_cast<std::size_t>(a)], node) <
               inst.distance(inst.warehouses()[static_cast<std::size_t>(b)], node);
      });
      alloc.place(node, nearest, AssignReason::Nearest, trace);
    }
  }
  if (wi) {
    for (NodeId node : by_demand(inst, inst.customers(), {})) alloc.follow_origin(node, trace);
  }

  Solution sol;
  sol.assignment.resize(inst.commodities().size());
  for (std::size_t k = 0; k < sol.assignment.size(); ++k) {
    sol.assignment[k] = {inst.warehouses()[static_cast<std::size_t>(alloc.collect()[k])],
                         inst.warehouses()[static_cast<std::size_t>(alloc.deliver()[k])]};
  }

  for (std::size_t slot = 0; slot < nw; ++slot) {
    const NodeId depot = inst.warehouses()[slot];
    for (const RouteKind kind : {RouteKind::Collection, RouteKind::Delivery}) {
      const auto nodes = kind == RouteKind::Collection ? inst.factories() : inst.customers();
      std::vector<Stop> stops;
      std::vector<std::vector<CommodityId>> carried;
      for (NodeId node : nodes) {
        std::vector<CommodityId> ks;
        double load = 0.0;
        for (CommodityId k : inst.commodities_of(node)) {
          if (alloc.slot_of(node, k) == static_cast<int>(slot)) {
            ks.push_back(k);
            load += inst.commodity(k).quantity;
          }
        }
        if (ks.empty()) continue;
        stops.push_back({node, load});
        carried.push_back(std::move(ks));
      }
      build_tours(inst, depot, kind, std::move(stops), sol, trace, carried);
    }
  }
  return {std::move(sol), std::move(trace)};
}

Solution replay_trace(const Instance& inst, const ConstructionTrace& trace) {
  Solution sol;
  sol.assignment.resize(inst.commodities().size());
  std::map<std::pair<NodeId, NodeId>, std::vector<CommodityId>> carried;
  for (const AssignmentEvent& ev : trace.assignments) {
    for (CommodityId k : ev.commodities) {
      if (inst.commodity(k).factory == ev.node) {
        sol.assignment[static_cast<std::size_t>(k)].collection = ev.warehouse;
      } else {
        sol.assignment[static_cast<std::size_t>(k)].delivery = ev.warehouse;
      }
      carried[{ev.node, ev.warehouse}].push_back(k);
    }
  }
  for (auto& [key, ks] : carried) std::sort(ks.begin(), ks.end());
  for (const RouteEvent& ev : trace.routes) {
    Route route{ev.warehouse, ev.kind, {}};
    for (NodeId node : ev.visits) route.visits.push_back({node, ev.warehouse, carried[{node, ev.warehouse}]});
    sol.routes.push_back(std::move(route));
  }
  return sol;
}

}  // namespace wsps
