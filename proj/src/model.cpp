#include "wsps/model.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "wsps/error.hpp"

namespace wsps {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Factory: return "factory";
    case Role::Customer: return "customer";
    case Role::Warehouse: return "warehouse";
  }
  return "?";
}

Role role_from_string(std::string_view text) {
  const std::string s = lower(text);
  if (s == "factory") return Role::Factory;
  if (s == "customer") return Role::Customer;
  if (s == "warehouse") return Role::Warehouse;
  throw FormatError("unknown node role '" + std::string(text) + "'");
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::WSPSDP: return "wspsdp";
    case Variant::WSPS_SA: return "sa";
    case Variant::WSPS_WI: return "wi";
  }
  return "?";
}

Variant variant_from_string(std::string_view text) {
  const std::string s = lower(text);
  if (s == "wspsdp") return Variant::WSPSDP;
  if (s == "sa" || s == "wsps-sa" || s == "wsps_sa") return Variant::WSPS_SA;
  if (s == "wi" || s == "wsps-wi" || s == "wsps_wi") return Variant::WSPS_WI;
  throw ParameterError("unknown variant '" + std::string(text) + "' (expected wspsdp|sa|wi)");
}

std::string_view to_string(RouteKind kind) {
  return kind == RouteKind::Collection ? "collection" : "delivery";
}

RouteKind route_kind_from_string(std::string_view text) {
  const std::string s = lower(text);
  if (s == "collection") return RouteKind::Collection;
  if (s == "delivery") return RouteKind::Delivery;
  throw FormatError("unknown route kind '" + std::string(text) + "'");
}

Instance::Instance(InstanceData data) : data_(std::move(data)) {
  const std::size_t n = data_.nodes.size();
  std::sort(data_.warehouses.begin(), data_.warehouses.end(),
            [](const WarehouseSpec& a, const WarehouseSpec& b) { return a.id < b.id; });

  for (const Node& node : data_.nodes) {
    if (node.id < 0 || static_cast<std::size_t>(node.id) >= n) continue;
    if (node.role == Role::Factory) factories_.push_back(node.id);
    if (node.role == Role::Customer) customers_.push_back(node.id);
  }
  std::sort(factories_.begin(), factories_.end());
  std::sort(customers_.begin(), customers_.end());

  slot_of_node_.assign(n, -1);
  for (std::size_t s = 0; s < data_.warehouses.size(); ++s) {
    const NodeId id = data_.warehouses[s].id;
    warehouse_ids_.push_back(id);
    if (id >= 0 && static_cast<std::size_t>(id) < n) slot_of_node_[static_cast<std::size_t>(id)] = static_cast<int>(s);
  }

  for (const Flow& f : data_.flows) {
    if (f.quantity > 0.0) commodities_.push_back({f.from, f.to, f.quantity});
  }
  std::stable_sort(commodities_.begin(), commodities_.end(), [](const Commodity& a, const Commodity& b) {
    return a.factory != b.factory ? a.factory < b.factory : a.customer < b.customer;
  });

  incident_.assign(n, {});
  demand_.assign(n, 0.0);
  for (std::size_t k = 0; k < commodities_.size(); ++k) {
    const Commodity& c = commodities_[k];
    total_demand_ += c.quantity;
    for (const NodeId end : {c.factory, c.customer}) {
      if (end < 0 || static_cast<std::size_t>(end) >= n) continue;
      incident_[static_cast<std::size_t>(end)].push_back(static_cast<CommodityId>(k));
      demand_[static_cast<std::size_t>(end)] += c.quantity;
    }
  }
}

CommodityId Instance::find_commodity(NodeId factory, NodeId customer) const {
  auto it = std::lower_bound(commodities_.begin(), commodities_.end(), std::pair{factory, customer},
                             [](const Commodity& c, const std::pair<NodeId, NodeId>& key) {
                               return c.factory != key.first ? c.factory < key.first : c.customer < key.second;
                             });
  if (it == commodities_.end() || it->factory != factory || it->customer != customer) return -1;
  return static_cast<CommodityId>(it - commodities_.begin());
}

}  // namespace wsps
