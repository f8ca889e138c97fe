#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "wsps/error.hpp"
#include "wsps/instance_gen.hpp"
#include "wsps/model.hpp"

namespace wsps::test {

// w=0, f=1, c=2; q=10, a=0.2, c_fw=3, c_wc=4.
inline InstanceData toy_data() {
  InstanceData d;
  d.name = "toy";
  d.nodes = {{0, Role::Warehouse, {}}, {1, Role::Factory, {}}, {2, Role::Customer, {}}};
  d.distance = {0, 3, 4,  //
                3, 0, 5,  //
                4, 5, 0};
  d.flows = {{1, 2, 10.0}};
  d.warehouses = {{0, 100.0, 0.2}};
  d.vehicle_capacity = 50.0;
  d.alpha = 0.001;
  d.beta = 1.0;
  return d;
}

inline Instance toy() { return Instance(toy_data()); }

// toy plus a second warehouse 3 at distance 5 from warehouse 0.
inline Instance two_warehouse_toy() {
  InstanceData d;
  d.name = "toy2";
  d.nodes = {{0, Role::Warehouse, {}}, {1, Role::Factory, {}}, {2, Role::Customer, {}}, {3, Role::Warehouse, {}}};
  d.distance = {0, 3, 4, 5,  //
                3, 0, 5, 6,  //
                4, 5, 0, 3,  //
                5, 6, 3, 0};
  d.flows = {{1, 2, 10.0}};
  d.warehouses = {{0, 100.0, 0.2}, {3, 100.0, 0.1}};
  d.vehicle_capacity = 50.0;
  d.alpha = 0.001;
  d.beta = 1.0;
  return Instance(d);
}

inline Solution toy_solution() {
  Solution s;
  s.routes = {{0, RouteKind::Collection, {{1, 0, {0}}}}, {0, RouteKind::Delivery, {{2, 0, {0}}}}};
  s.assignment = {{0, 0}};
  return s;
}

// Euclidean instance with explicit placement; roles in node order.
inline Instance planar(const std::vector<std::pair<double, double>>& xy, const std::vector<Role>& roles,
                       const std::vector<Flow>& flows, const std::vector<WarehouseSpec>& warehouses,
                       double vehicle_capacity) {
  InstanceData d;
  d.name = "planar";
  const std::size_t n = xy.size();
  for (std::size_t i = 0; i < n; ++i) d.nodes.push_back({static_cast<NodeId>(i), roles[i], Point{xy[i].first, xy[i].second}});
  d.distance.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d.distance[i * n + j] = std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second);
  d.flows = flows;
  d.warehouses = warehouses;
  d.vehicle_capacity = vehicle_capacity;
  d.alpha = 0.001;
  d.beta = 1.0;
  return Instance(d);
}

// Small generated instance within the oracle guard. Network draws whose
// selected pairs carry no flow are skipped.
inline Instance tiny(std::uint64_t seed, int w = 2, int f = 2, int c = 2, char cls = 'L') {
  InstanceSpec spec;
  spec.num_warehouses = w;
  spec.num_factories = f;
  spec.num_customers = c;
  spec.capacity_class = cls;
  spec.seed = seed;
  for (std::uint64_t net_seed = 1000 + seed;; net_seed += 1000) {
    try {
      return generate_instance(generate_synthetic_network(14, 7, net_seed, 0.8), spec);
    } catch (const ParameterError&) {
    }
  }
}

}  // namespace wsps::test
