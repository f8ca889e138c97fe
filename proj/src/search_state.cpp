#include "wsps/search_state.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "wsps/error.hpp"

namespace wsps {

SearchState::SearchState(const Instance& inst) : inst_(&inst), slots_(static_cast<int>(inst.warehouse_count())) {
  const std::size_t k = inst.commodities().size();
  const std::size_t cells = inst.size() * static_cast<std::size_t>(slots_);
  collect_.assign(k, -1);
  deliver_.assign(k, -1);
  route_of_.assign(cells, -1);
  sub_load_.assign(cells, 0.0);
  sub_count_.assign(cells, 0);
  node_slots_.assign(inst.size(), 0);
  slot_subnodes_.assign(static_cast<std::size_t>(slots_), 0);
  inbound_.assign(static_cast<std::size_t>(slots_), 0.0);
}

int SearchState::side_slot(NodeId node, CommodityId k) const {
  return inst_->commodity(k).factory == node ? collection_slot(k) : delivery_slot(k);
}

int SearchState::other_slot(NodeId node, CommodityId k) const {
  return inst_->commodity(k).factory == node ? delivery_slot(k) : collection_slot(k);
}

void SearchState::attach(NodeId node, CommodityId k, int slot) {
  const Commodity& c = inst_->commodity(k);
  const bool collecting = c.factory == node;
  int& side = collecting ? collect_[static_cast<std::size_t>(k)] : deliver_[static_cast<std::size_t>(k)];
  const int other = collecting ? deliver_[static_cast<std::size_t>(k)] : collect_[static_cast<std::size_t>(k)];
  side = slot;
  if (other != slot) inbound_[static_cast<std::size_t>(slot)] += c.quantity;
  const std::size_t cell = index(node, slot);
  if (sub_count_[cell]++ == 0) {
    ++node_slots_[static_cast<std::size_t>(node)];
    ++slot_subnodes_[static_cast<std::size_t>(slot)];
  }
  sub_load_[cell] += c.quantity;
}

void SearchState::detach(NodeId node, CommodityId k) {
  const Commodity& c = inst_->commodity(k);
  const bool collecting = c.factory == node;
  int& side = collecting ? collect_[static_cast<std::size_t>(k)] : deliver_[static_cast<std::size_t>(k)];
  const int other = collecting ? deliver_[static_cast<std::size_t>(k)] : collect_[static_cast<std::size_t>(k)];
  const int slot = side;
  side = -1;
  if (other != slot) inbound_[static_cast<std::size_t>(slot)] -= c.quantity;
  const std::size_t cell = index(node, slot);
  sub_load_[cell] -= c.quantity;
  if (--sub_count_[cell] == 0) {
    sub_load_[cell] = 0.0;
    --node_slots_[static_cast<std::size_t>(node)];
    --slot_subnodes_[static_cast<std::size_t>(slot)];
  }
}

SearchState SearchState::from_solution(const Instance& inst, const Solution& sol) {
  SearchState st(inst);
  if (sol.assignment.size() != inst.commodities().size()) {
    throw ModelError("solution assignment size does not match the instance commodity count");
  }
  for (std::size_t k = 0; k < sol.assignment.size(); ++k) {
    const Commodity& c = inst.commodity(static_cast<CommodityId>(k));
    const WarehousePair& p = sol.assignment[k];
    const int ms = inst.warehouse_slot(p.collection);
    const int ns = inst.warehouse_slot(p.delivery);
    if (ms >= 0) st.attach(c.factory, static_cast<CommodityId>(k), ms);
    if (ns >= 0) st.attach(c.customer, static_cast<CommodityId>(k), ns);
  }
  for (const Route& r : sol.routes) {
    const int slot = inst.warehouse_slot(r.warehouse);
    if (slot < 0) throw ModelError("route from non-warehouse node " + std::to_string(r.warehouse));
    if (r.visits.empty()) continue;
    WorkRoute wr{slot, r.kind, {}, 0.0};
    for (const SubNode& s : r.visits) {
      if (!inst.contains(s.node)) throw ModelError("route visits unknown node " + std::to_string(s.node));
      wr.nodes.push_back(s.node);
      wr.load += st.subnode_load(s.node, slot);
    }
    st.routes_.push_back(std::move(wr));
  }
  st.rebuild_route_index();
  return st;
}

Solution SearchState::to_solution() const {
  Solution sol;
  for (const WorkRoute& wr : routes_) {
    if (wr.nodes.empty()) continue;
    Route r{inst_->warehouses()[static_cast<std::size_t>(wr.slot)], wr.kind, {}};
    for (NodeId node : wr.nodes) r.visits.push_back({node, r.warehouse, subnode_commodities(node, wr.slot)});
    sol.routes.push_back(std::move(r));
  }
  sol.assignment.resize(collect_.size());
  for (std::size_t k = 0; k < collect_.size(); ++k) {
    if (collect_[k] >= 0) sol.assignment[k].collection = inst_->warehouses()[static_cast<std::size_t>(collect_[k])];
    if (deliver_[k] >= 0) sol.assignment[k].delivery = inst_->warehouses()[static_cast<std::size_t>(deliver_[k])];
  }
  return sol;
}

std::vector<std::pair<NodeId, int>> SearchState::subnodes() const {
  std::vector<std::pair<NodeId, int>> out;
  const NodeId n = static_cast<NodeId>(inst_->size());
  for (NodeId node = 0; node < n; ++node) {
    if (node_slots_[static_cast<std::size_t>(node)] == 0) continue;
    for (int s = 0; s < slots_; ++s) {
      if (sub_count_[index(node, s)] > 0) out.emplace_back(node, s);
    }
  }
  return out;
}

std::vector<CommodityId> SearchState::subnode_commodities(NodeId node, int slot) const {
  std::vector<CommodityId> out;
  for (CommodityId k : inst_->commodities_of(node)) {
    if (side_slot(node, k) == slot) out.push_back(k);
  }
  return out;
}

double SearchState::detour(NodeId node, int slot) const {
  const int r = route_of(node, slot);
  if (r < 0) return 0.0;
  const WorkRoute& wr = routes_[static_cast<std::size_t>(r)];
  const NodeId depot = inst_->warehouses()[static_cast<std::size_t>(slot)];
  const auto it = std::find(wr.nodes.begin(), wr.nodes.end(), node);
  const NodeId prev = it == wr.nodes.begin() ? depot : *(it - 1);
  const NodeId next = it + 1 == wr.nodes.end() ? depot : *(it + 1);
  return inst_->distance(prev, node) + inst_->distance(node, next) - inst_->distance(prev, next);
}

double SearchState::assignment_cost(NodeId node, int slot) const {
  const double alpha = inst_->data().alpha;
  const NodeId w = inst_->warehouses()[static_cast<std::size_t>(slot)];
  const double unit = inst_->warehouse(slot).unit_cost;
  double cost = 0.0;
  for (CommodityId k : inst_->commodities_of(node)) {
    if (side_slot(node, k) != slot) continue;
    const Commodity& c = inst_->commodity(k);
    const int other = other_slot(node, k);
    if (c.factory == node) {
      cost += unit * c.quantity;
      if (other >= 0) cost += alpha * inst_->distance(w, inst_->warehouses()[static_cast<std::size_t>(other)]) * c.quantity;
    } else if (other >= 0) {
      cost += alpha * inst_->distance(inst_->warehouses()[static_cast<std::size_t>(other)], w) * c.quantity;
    }
  }
  return cost;
}

PendingItem SearchState::remove_subnode(NodeId node, int slot) {
  PendingItem item;
  item.node = node;
  item.commodities = subnode_commodities(node, slot);
  item.load = subnode_load(node, slot);
  const int r = route_of(node, slot);
  if (r >= 0) {
    WorkRoute& wr = routes_[static_cast<std::size_t>(r)];
    wr.nodes.erase(std::find(wr.nodes.begin(), wr.nodes.end(), node));
    wr.load -= item.load;
    route_of_[index(node, slot)] = -1;
  }
  for (CommodityId k : item.commodities) detach(node, k);
  return item;
}

PendingItem SearchState::split_subnode(NodeId node, int slot, std::span<const CommodityId> part) {
  PendingItem item;
  item.node = node;
  for (CommodityId k : part) {
    if (side_slot(node, k) != slot) throw ModelError("split_subnode: commodity not carried by the sub-node");
    item.commodities.push_back(k);
    item.load += inst_->commodity(k).quantity;
  }
  std::sort(item.commodities.begin(), item.commodities.end());
  const int r = route_of(node, slot);
  if (r >= 0) routes_[static_cast<std::size_t>(r)].load -= item.load;
  for (CommodityId k : item.commodities) detach(node, k);
  return item;
}

std::optional<InsertionOption> SearchState::best_insertion(const PendingItem& item, int slot, Variant variant,
                                                           std::vector<InsertionOption>* per_route) const {
  if (slot == item.forbidden_slot) return std::nullopt;
  if (item.forced_slot >= 0 && slot != item.forced_slot) return std::nullopt;
  const NodeId node = item.node;
  const std::size_t cell = index(node, slot);
  if (variant == Variant::WSPS_SA && node_slots_[static_cast<std::size_t>(node)] > 0 && sub_count_[cell] == 0) {
    return std::nullopt;
  }
  const double qv = inst_->data().vehicle_capacity;
  if (item.load > qv + kCapacityTolerance) return std::nullopt;

  const NodeId w = inst_->warehouses()[static_cast<std::size_t>(slot)];
  const bool collecting = inst_->role(node) == Role::Factory;
  const double alpha = inst_->data().alpha;
  const double unit = inst_->warehouse(slot).unit_cost;
  double assign = 0.0;
  double extra_inbound = 0.0;
  for (CommodityId k : item.commodities) {
    const Commodity& c = inst_->commodity(k);
    const int other = collecting ? deliver_[static_cast<std::size_t>(k)] : collect_[static_cast<std::size_t>(k)];
    if (variant == Variant::WSPS_WI && other >= 0 && other != slot) return std::nullopt;
    if (other != slot) extra_inbound += c.quantity;
    if (collecting) assign += unit * c.quantity;
    if (other >= 0) {
      const NodeId ow = inst_->warehouses()[static_cast<std::size_t>(other)];
      assign += alpha * (collecting ? inst_->distance(w, ow) : inst_->distance(ow, w)) * c.quantity;
    }
  }
  if (inbound_[static_cast<std::size_t>(slot)] + extra_inbound > inst_->warehouse(slot).capacity + kCapacityTolerance) {
    return std::nullopt;
  }

  const double beta = inst_->data().beta;
  std::optional<InsertionOption> best;
  auto offer = [&](const InsertionOption& opt) {
    if (per_route) per_route->push_back(opt);
    if (!best || opt.cost < best->cost) best = opt;
  };

  if (sub_count_[cell] > 0) {
    const int r = route_of_[cell];
    if (r < 0) return std::nullopt;
    if (routes_[static_cast<std::size_t>(r)].load + item.load > qv + kCapacityTolerance) return std::nullopt;
    offer({slot, r, 0, true, assign});
    return best;
  }

  const RouteKind kind = collecting ? RouteKind::Collection : RouteKind::Delivery;
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    const WorkRoute& wr = routes_[r];
    if (wr.slot != slot || wr.kind != kind || wr.nodes.empty()) continue;
    if (wr.load + item.load > qv + kCapacityTolerance) continue;
    double best_delta = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    NodeId prev = w;
    for (std::size_t p = 0; p <= wr.nodes.size(); ++p) {
      const NodeId next = p == wr.nodes.size() ? w : wr.nodes[p];
      const double delta = inst_->distance(prev, node) + inst_->distance(node, next) - inst_->distance(prev, next);
      if (delta < best_delta) {
        best_delta = delta;
        best_pos = p;
      }
      prev = next;
    }
    offer({slot, static_cast<int>(r), best_pos, false, assign + beta * best_delta});
  }
  offer({slot, -1, 0, false, assign + beta * (inst_->distance(w, node) + inst_->distance(node, w))});
  return best;
}

void SearchState::insert(const PendingItem& item, const InsertionOption& option) {
  const NodeId node = item.node;
  const int slot = option.slot;
  if (option.merge) {
    routes_[static_cast<std::size_t>(option.route)].load += item.load;
  } else {
    int r = option.route;
    if (r < 0) {
      const RouteKind kind = inst_->role(node) == Role::Factory ? RouteKind::Collection : RouteKind::Delivery;
      routes_.push_back({slot, kind, {}, 0.0});
      r = static_cast<int>(routes_.size()) - 1;
    }
    WorkRoute& wr = routes_[static_cast<std::size_t>(r)];
    wr.nodes.insert(wr.nodes.begin() + static_cast<std::ptrdiff_t>(option.position), node);
    wr.load += item.load;
    route_of_[index(node, slot)] = r;
  }
  for (CommodityId k : item.commodities) attach(node, k, slot);
}

void SearchState::rebuild_route_index() {
  std::fill(route_of_.begin(), route_of_.end(), -1);
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    for (NodeId node : routes_[r].nodes) route_of_[index(node, routes_[r].slot)] = static_cast<int>(r);
  }
}

void SearchState::drop_empty_routes() {
  const auto before = routes_.size();
  routes_.erase(std::remove_if(routes_.begin(), routes_.end(), [](const WorkRoute& r) { return r.nodes.empty(); }),
                routes_.end());
  if (routes_.size() != before) rebuild_route_index();
}

void SearchState::recompute_inbound() {
  std::fill(inbound_.begin(), inbound_.end(), 0.0);
  for (std::size_t k = 0; k < collect_.size(); ++k) {
    const double q = inst_->commodity(static_cast<CommodityId>(k)).quantity;
    if (collect_[k] >= 0) inbound_[static_cast<std::size_t>(collect_[k])] += q;
    if (deliver_[k] >= 0 && deliver_[k] != collect_[k]) inbound_[static_cast<std::size_t>(deliver_[k])] += q;
  }
  for (WorkRoute& wr : routes_) {
    wr.load = 0.0;
    for (NodeId node : wr.nodes) wr.load += sub_load_[index(node, wr.slot)];
  }
}

CostBreakdown SearchState::cost() const {
  CostBreakdown cost;
  const double alpha = inst_->data().alpha;
  const auto whs = inst_->warehouses();
  for (std::size_t k = 0; k < collect_.size(); ++k) {
    if (collect_[k] < 0) continue;
    const double q = inst_->commodity(static_cast<CommodityId>(k)).quantity;
    cost.variable_cost += inst_->warehouse(collect_[k]).unit_cost * q;
    if (deliver_[k] >= 0) {
      cost.inter_warehouse_cost += alpha * inst_->distance(whs[static_cast<std::size_t>(collect_[k])],
                                                           whs[static_cast<std::size_t>(deliver_[k])]) * q;
    }
  }
  double length = 0.0;
  for (const WorkRoute& wr : routes_) {
    if (wr.nodes.empty()) continue;
    const NodeId depot = whs[static_cast<std::size_t>(wr.slot)];
    NodeId prev = depot;
    for (NodeId node : wr.nodes) {
      length += inst_->distance(prev, node);
      prev = node;
    }
    length += inst_->distance(prev, depot);
  }
  cost.local_tour_cost = inst_->data().beta * length;
  cost.total = cost.variable_cost + cost.local_tour_cost + cost.inter_warehouse_cost;
  return cost;
}

bool SearchState::complete() const {
  for (std::size_t k = 0; k < collect_.size(); ++k) {
    if (collect_[k] < 0 || deliver_[k] < 0) return false;
  }
  return true;
}

}  // namespace wsps
