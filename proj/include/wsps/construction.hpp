#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "wsps/model.hpp"

namespace wsps {

enum class AssignReason {
  CheapestFeasible,  // factory: lowest unit cost with headroom
  Nearest,           // customer: nearest warehouse with headroom
  FallbackSplit,     // no single warehouse fits the node; commodities spread
  FollowOrigin,      // no-transfer variant: customer follows its collection warehouse
};

std::string_view to_string(AssignReason reason);

struct AssignmentEvent {
  NodeId node = kNoNode;
  NodeId warehouse = kNoNode;
  AssignReason reason = AssignReason::CheapestFeasible;
  std::vector<CommodityId> commodities;
};

struct RouteEvent {
  NodeId warehouse = kNoNode;
  RouteKind kind = RouteKind::Collection;
  std::vector<NodeId> visits;
};

struct ConstructionTrace {
  std::vector<AssignmentEvent> assignments;
  std::vector<RouteEvent> routes;
};

// Greedy allocation of nodes to warehouses in non-increasing demand order,
// then nearest-neighbour tours per warehouse. Throws ConstructionError naming
// the node that cannot be placed.
std::pair<Solution, ConstructionTrace> construct_initial(const Instance& inst, const VariantConfig& cfg,
                                                         std::uint64_t seed = 0);

// Rebuilds the solution recorded in a trace.
Solution replay_trace(const Instance& inst, const ConstructionTrace& trace);

}  // namespace wsps
