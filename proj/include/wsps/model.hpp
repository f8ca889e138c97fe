#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wsps {

using NodeId = int;
using CommodityId = int;

inline constexpr NodeId kNoNode = -1;

// Absolute slack on every capacity comparison, in flow units.
inline constexpr double kCapacityTolerance = 1e-6;
// Relative slack on cost comparisons.
inline constexpr double kCostTolerance = 1e-9;

enum class Role { Factory, Customer, Warehouse };

std::string_view to_string(Role role);
Role role_from_string(std::string_view text);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Node {
  NodeId id = kNoNode;
  Role role = Role::Factory;
  std::optional<Point> position;  // plotting only
};

struct Flow {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  double quantity = 0.0;
};

struct WarehouseSpec {
  NodeId id = kNoNode;
  double capacity = 0.0;
  double unit_cost = 0.0;
};

// A (factory, customer) pair with positive flow.
struct Commodity {
  NodeId factory = kNoNode;
  NodeId customer = kNoNode;
  double quantity = 0.0;
};

// Raw instance content exactly as stored in an instance file.
struct InstanceData {
  std::string name;
  std::vector<Node> nodes;         // nodes[k].id == k for a valid instance
  std::vector<double> distance;    // row-major |N| x |N|
  std::vector<Flow> flows;         // sparse (factory, customer, q) triples
  std::vector<WarehouseSpec> warehouses;
  double vehicle_capacity = 0.0;
  double alpha = 0.0;  // inter-warehouse cost per flow unit and distance unit
  double beta = 0.0;   // local tour cost per distance unit
};

// Immutable problem instance. Construction never throws on malformed content;
// validate_instance() reports what is wrong. Warehouses are kept sorted by id,
// so warehouse slot order is id order.
class Instance {
 public:
  Instance() = default;
  explicit Instance(InstanceData data);

  const InstanceData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  std::size_t size() const { return data_.nodes.size(); }

  double distance(NodeId from, NodeId to) const {
    return data_.distance[static_cast<std::size_t>(from) * size() + static_cast<std::size_t>(to)];
  }
  bool contains(NodeId id) const { return id >= 0 && static_cast<std::size_t>(id) < size(); }
  Role role(NodeId id) const { return data_.nodes[static_cast<std::size_t>(id)].role; }

  std::span<const NodeId> factories() const { return factories_; }
  std::span<const NodeId> customers() const { return customers_; }
  // Warehouse node ids in slot order.
  std::span<const NodeId> warehouses() const { return warehouse_ids_; }
  std::size_t warehouse_count() const { return warehouse_ids_.size(); }

  // Slot of a warehouse node, or -1 when the node is not a listed warehouse.
  int warehouse_slot(NodeId id) const {
    return contains(id) ? slot_of_node_[static_cast<std::size_t>(id)] : -1;
  }
  const WarehouseSpec& warehouse(int slot) const {
    return data_.warehouses[static_cast<std::size_t>(slot)];
  }

  std::span<const Commodity> commodities() const { return commodities_; }
  const Commodity& commodity(CommodityId k) const { return commodities_[static_cast<std::size_t>(k)]; }
  // Commodity id for a (factory, customer) pair, or -1.
  CommodityId find_commodity(NodeId factory, NodeId customer) const;
  // Commodities whose factory or customer endpoint is `id`, ascending.
  std::span<const CommodityId> commodities_of(NodeId id) const {
    return incident_[static_cast<std::size_t>(id)];
  }
  // Total outgoing flow for a factory, incoming flow for a customer.
  double demand(NodeId id) const { return demand_[static_cast<std::size_t>(id)]; }
  double total_demand() const { return total_demand_; }

 private:
  InstanceData data_;
  std::vector<NodeId> factories_;
  std::vector<NodeId> customers_;
  std::vector<NodeId> warehouse_ids_;
  std::vector<int> slot_of_node_;
  std::vector<Commodity> commodities_;
  std::vector<std::vector<CommodityId>> incident_;
  std::vector<double> demand_;
  double total_demand_ = 0.0;
};

enum class Variant { WSPSDP, WSPS_SA, WSPS_WI };

std::string_view to_string(Variant variant);
// Accepts "wspsdp", "sa", "wi" and the long forms "wsps-sa", "wsps_sa", ...
Variant variant_from_string(std::string_view text);

struct VariantConfig {
  Variant variant = Variant::WSPSDP;
};

enum class RouteKind { Collection, Delivery };

std::string_view to_string(RouteKind kind);
RouteKind route_kind_from_string(std::string_view text);

// A physical node served at one warehouse, carrying part (or all) of the
// node's commodities.
struct SubNode {
  NodeId node = kNoNode;
  NodeId warehouse = kNoNode;
  std::vector<CommodityId> commodities;
};

// Closed tour warehouse -> visits... -> warehouse.
struct Route {
  NodeId warehouse = kNoNode;
  RouteKind kind = RouteKind::Collection;
  std::vector<SubNode> visits;
};

struct WarehousePair {
  NodeId collection = kNoNode;
  NodeId delivery = kNoNode;
};

struct Solution {
  std::vector<Route> routes;
  // Indexed by commodity id; one (collection, delivery) pair per commodity.
  std::vector<WarehousePair> assignment;
};

struct CostBreakdown {
  double variable_cost = 0.0;
  double local_tour_cost = 0.0;
  double inter_warehouse_cost = 0.0;
  double total = 0.0;
};

}  // namespace wsps
