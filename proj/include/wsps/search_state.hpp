#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wsps/model.hpp"

namespace wsps {

// Commodities waiting to be (re)attached to a warehouse on one side: the
// collection side when `node` is a factory, the delivery side when it is a
// customer.
struct PendingItem {
  NodeId node = kNoNode;
  std::vector<CommodityId> commodities;
  double load = 0.0;
  int forbidden_slot = -1;  // must not return here
  int forced_slot = -1;     // must go here
  int preferred_slot = -1;  // go here whenever feasible
};

struct WorkRoute {
  int slot = -1;
  RouteKind kind = RouteKind::Collection;
  std::vector<NodeId> nodes;
  double load = 0.0;
};

// Where and how an item is attached. route == -1 opens a new vehicle;
// merge == true joins the node's existing sub-node at that warehouse.
struct InsertionOption {
  int slot = -1;
  int route = -1;
  std::size_t position = 0;
  bool merge = false;
  double cost = 0.0;
};

// Index-based working form of a Solution used by the search. Sub-nodes are
// implicit: sub-node (i, w) exists iff some commodity of i is attached to
// warehouse slot w on i's side. Warehouses are addressed by slot.
class SearchState {
 public:
  explicit SearchState(const Instance& inst);
  static SearchState from_solution(const Instance& inst, const Solution& sol);
  Solution to_solution() const;

  const Instance& instance() const { return *inst_; }
  int slots() const { return slots_; }

  int collection_slot(CommodityId k) const { return collect_[static_cast<std::size_t>(k)]; }
  int delivery_slot(CommodityId k) const { return deliver_[static_cast<std::size_t>(k)]; }
  // Slot of commodity k on the side that `node` serves.
  int side_slot(NodeId node, CommodityId k) const;
  // Slot on the opposite side from `node`.
  int other_slot(NodeId node, CommodityId k) const;

  int route_of(NodeId node, int slot) const { return route_of_[index(node, slot)]; }
  double subnode_load(NodeId node, int slot) const { return sub_load_[index(node, slot)]; }
  int subnode_size(NodeId node, int slot) const { return sub_count_[index(node, slot)]; }
  int slots_of_node(NodeId node) const { return node_slots_[static_cast<std::size_t>(node)]; }
  int subnodes_at(int slot) const { return slot_subnodes_[static_cast<std::size_t>(slot)]; }
  double inbound(int slot) const { return inbound_[static_cast<std::size_t>(slot)]; }
  const std::vector<WorkRoute>& routes() const { return routes_; }

  // Existing sub-nodes ordered by (node, slot).
  std::vector<std::pair<NodeId, int>> subnodes() const;
  std::vector<CommodityId> subnode_commodities(NodeId node, int slot) const;

  // Detour saved by taking `node` off its route at `slot` (distance units).
  double detour(NodeId node, int slot) const;
  // Variable plus transfer cost attributable to the sub-node's commodities.
  double assignment_cost(NodeId node, int slot) const;

  PendingItem remove_subnode(NodeId node, int slot);
  // Detaches `part` (a strict subset of the sub-node's commodities); the
  // sub-node itself stays on its route.
  PendingItem split_subnode(NodeId node, int slot, std::span<const CommodityId> part);

  // Cheapest feasible attachment of `item` at `slot`, or nullopt.
  // `per_route` receives every feasible route-level option when non-null.
  std::optional<InsertionOption> best_insertion(const PendingItem& item, int slot, Variant variant,
                                                std::vector<InsertionOption>* per_route = nullptr) const;
  void insert(const PendingItem& item, const InsertionOption& option);

  void drop_empty_routes();
  void recompute_inbound();

  CostBreakdown cost() const;
  double total_cost() const { return cost().total; }
  bool complete() const;  // every commodity attached on both sides

 private:
  std::size_t index(NodeId node, int slot) const {
    return static_cast<std::size_t>(node) * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(slot);
  }
  void attach(NodeId node, CommodityId k, int slot);
  void detach(NodeId node, CommodityId k);
  void rebuild_route_index();

  const Instance* inst_;
  int slots_ = 0;
  std::vector<int> collect_;
  std::vector<int> deliver_;
  std::vector<int> route_of_;
  std::vector<double> sub_load_;
  std::vector<int> sub_count_;
  std::vector<int> node_slots_;
  std::vector<int> slot_subnodes_;
  std::vector<double> inbound_;
  std::vector<WorkRoute> routes_;
};

}  // namespace wsps
