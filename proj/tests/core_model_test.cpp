#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"
#include "wsps/io.hpp"
#include "wsps/validate.hpp"

using namespace wsps;

TEST_CASE("toy breakdown") {
  const Instance inst = test::toy();
  const CostBreakdown c = evaluate_objective(inst, test::toy_solution());
  CHECK(c.variable_cost == doctest::Approx(2.0));
  CHECK(c.local_tour_cost == doctest::Approx(14.0));
  CHECK(c.inter_warehouse_cost == 0.0);
  CHECK(c.total == doctest::Approx(16.0));
}

TEST_CASE("transfer between two warehouses") {
  const Instance inst = test::two_warehouse_toy();
  Solution s;
  s.routes = {{0, RouteKind::Collection, {{1, 0, {0}}}}, {3, RouteKind::Delivery, {{2, 3, {0}}}}};
  s.assignment = {{0, 3}};
  const CostBreakdown c = evaluate_objective(inst, s);
  CHECK(c.inter_warehouse_cost == doctest::Approx(0.05));
  CHECK(c.variable_cost == doctest::Approx(2.0));
  CHECK(c.local_tour_cost == doctest::Approx(6.0 + 6.0));
  CHECK(c.total == doctest::Approx(c.variable_cost + c.local_tour_cost + c.inter_warehouse_cost));
  CHECK(validate_solution(inst, s, {Variant::WSPSDP}).ok());
  CHECK(validate_solution(inst, s, {Variant::WSPS_WI}).has("wi"));
}

TEST_CASE("empty instance costs nothing") {
  InstanceData d = test::toy_data();
  d.flows.clear();
  const Instance inst(d);
  CHECK(evaluate_objective(inst, Solution{}).total == 0.0);
}

TEST_CASE("unknown node is a model error") {
  const Instance inst = test::toy();
  Solution s = test::toy_solution();
  s.routes[0].visits[0].node = 7;
  CHECK_THROWS_AS(evaluate_objective(inst, s), ModelError);
}

TEST_CASE("instance invariants") {
  CHECK(validate_instance(test::toy()).ok());
  CHECK(validate_instance(test::tiny(3)).ok());

  InstanceData d = test::toy_data();
  d.flows = {{2, 1, 5.0}};
  CHECK(validate_instance(Instance(d)).has("flow-outside-FxC"));

  d = test::toy_data();
  d.vehicle_capacity = 0.0;
  CHECK(validate_instance(Instance(d)).has("vehicle-capacity"));
}

TEST_CASE("toy solution is feasible for every variant") {
  const Instance inst = test::toy();
  for (Variant v : {Variant::WSPSDP, Variant::WSPS_SA, Variant::WSPS_WI}) {
    const Report r = validate_solution(inst, test::toy_solution(), {v});
    CHECK_MESSAGE(r.ok(), r.summary());
  }
}

TEST_CASE("vehicle capacity breach") {
  InstanceData d = test::toy_data();
  d.flows[0].quantity = 60.0;
  const Instance inst(d);
  const Report r = validate_solution(inst, test::toy_solution(), {Variant::WSPSDP});
  CHECK(r.has("c13"));
  CHECK_FALSE(r.has("c3"));
}

TEST_CASE("single allocation rejects a split factory") {
  InstanceData d = test::toy_data();
  d.nodes.push_back({3, Role::Warehouse, {}});
  d.nodes.push_back({4, Role::Customer, {}});
  const std::size_t n = 5;
  d.distance.assign(n * n, 2.0);
  for (std::size_t i = 0; i < n; ++i) d.distance[i * n + i] = 0.0;
  d.flows = {{1, 2, 10.0}, {1, 4, 5.0}};
  d.warehouses = {{0, 100.0, 0.2}, {3, 100.0, 0.2}};
  const Instance inst(d);
  Solution s;
  s.routes = {{0, RouteKind::Collection, {{1, 0, {0}}}},
              {3, RouteKind::Collection, {{1, 3, {1}}}},
              {0, RouteKind::Delivery, {{2, 0, {0}}}},
              {3, RouteKind::Delivery, {{4, 3, {1}}}}};
  s.assignment = {{0, 0}, {3, 3}};
  CHECK(validate_solution(inst, s, {Variant::WSPSDP}).ok());
  CHECK(validate_solution(inst, s, {Variant::WSPS_WI}).ok());
  const Report sa = validate_solution(inst, s, {Variant::WSPS_SA});
  CHECK(sa.has("sa"));
  CHECK(sa.summary().find("multi-allocated node 1") != std::string::npos);
  CHECK(count_multi_allocation_nodes(s) == 1);
  CHECK(count_multi_allocation_nodes(test::toy_solution()) == 0);
}

TEST_CASE("warehouse capacity counts inbound transfers") {
  Instance inst = test::two_warehouse_toy();
  InstanceData d = inst.data();
  d.warehouses[1].capacity = 5.0;
  inst = Instance(d);
  Solution s;
  s.routes = {{0, RouteKind::Collection, {{1, 0, {0}}}}, {3, RouteKind::Delivery, {{2, 3, {0}}}}};
  s.assignment = {{0, 3}};
  CHECK(validate_solution(inst, s, {Variant::WSPSDP}).has("c3"));
}

TEST_CASE("coverage and visits") {
  const Instance inst = test::toy();
  Solution s = test::toy_solution();
  s.routes.pop_back();
  const Report r = validate_solution(inst, s, {Variant::WSPSDP});
  CHECK(r.has("c4"));
  CHECK(r.has("c8"));
}

TEST_CASE("route load profiles") {
  InstanceData d;
  d.name = "profile";
  d.nodes = {{0, Role::Warehouse, {}}, {1, Role::Factory, {}}, {2, Role::Factory, {}}, {3, Role::Factory, {}},
             {4, Role::Customer, {}}, {5, Role::Customer, {}}};
  d.distance.assign(36, 1.0);
  for (int i = 0; i < 6; ++i) d.distance[i * 7] = 0.0;
  d.flows = {{1, 4, 3.0}, {2, 4, 1.0}, {2, 5, 4.0}, {3, 5, 2.0}};
  d.warehouses = {{0, 100.0, 0.1}};
  d.vehicle_capacity = 100.0;
  d.alpha = 0.001;
  d.beta = 1.0;
  const Instance inst(d);
  Solution s;
  s.routes = {{0, RouteKind::Collection, {{1, 0, {0}}, {2, 0, {1, 2}}, {3, 0, {3}}}},
              {0, RouteKind::Delivery, {{5, 0, {2, 3}}, {4, 0, {0, 1}}}},
              {0, RouteKind::Delivery, {}}};
  s.assignment = std::vector<WarehousePair>(4, {0, 0});
  // collection loads 3, 5, 2 and delivery loads 6, 4
  CHECK(route_load_profile(inst, s.routes[0], s) == std::vector<double>{3.0, 8.0, 10.0});
  CHECK(route_load_profile(inst, s.routes[1], s) == std::vector<double>{10.0, 4.0});
  CHECK(route_load_profile(inst, s.routes[2], s).empty());

  Route delivery{0, RouteKind::Delivery, {{5, 0, {2}}, {4, 0, {1}}}};
  CHECK(route_load_profile(inst, delivery, s) == std::vector<double>{5.0, 1.0});
}

TEST_CASE("cost invariant under route order and reversal") {
  const Instance inst = test::planar({{0, 0}, {1, 5}, {4, 4}, {6, 1}, {-3, 2}, {-2, -4}},
                                     {Role::Warehouse, Role::Factory, Role::Factory, Role::Factory, Role::Customer,
                                      Role::Customer},
                                     {{1, 4, 2.0}, {2, 5, 3.0}, {3, 4, 1.0}}, {{0, 100.0, 0.15}}, 50.0);
  Solution s;
  s.routes = {{0, RouteKind::Collection, {{1, 0, {0}}, {2, 0, {1}}, {3, 0, {2}}}},
              {0, RouteKind::Delivery, {{4, 0, {0, 2}}, {5, 0, {1}}}}};
  s.assignment = std::vector<WarehousePair>(3, {0, 0});
  const double base = evaluate_objective(inst, s).total;
  Solution t = s;
  std::reverse(t.routes.begin(), t.routes.end());
  CHECK(evaluate_objective(inst, t).total == doctest::Approx(base).epsilon(1e-12));
  for (Route& r : t.routes) std::reverse(r.visits.begin(), r.visits.end());
  CHECK(evaluate_objective(inst, t).total == doctest::Approx(base).epsilon(1e-12));
  CHECK(validate_solution(inst, t, {Variant::WSPSDP}).ok());
}

TEST_CASE("instance and solution text round trip") {
  const Instance inst = test::tiny(5);
  const std::string text = instance_to_text(inst);
  const Instance back = instance_from_text(text);
  CHECK(instance_to_text(back) == text);

  const Instance t = test::toy();
  const std::string sol_text = solution_to_text(t, test::toy_solution());
  CHECK(solution_to_text(t, solution_from_text(t, sol_text)) == sol_text);
}

TEST_CASE("malformed instance text") {
  CHECK_THROWS_AS(instance_from_text("{"), FormatError);
  CHECK_THROWS_AS(instance_from_text(R"({"version": 2})"), FormatError);
}
