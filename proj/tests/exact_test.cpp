#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "wsps/brute_force.hpp"
#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"
#include "wsps/io.hpp"
#include "wsps/milp.hpp"
#include "wsps/validate.hpp"

using namespace wsps;

namespace {

const Variant kVariants[] = {Variant::WSPSDP, Variant::WSPS_SA, Variant::WSPS_WI};

}  // namespace

TEST_CASE("oracle on the toy") {
  const Instance inst = test::toy();
  for (Variant v : kVariants) {
    const OracleResult r = brute_force_solve(inst, {v});
    CHECK(r.cost.total == doctest::Approx(16.0));
    CHECK(solution_to_text(inst, r.solution) == solution_to_text(inst, test::toy_solution()));
  }
}

TEST_CASE("oracle dominance, validity and serial agreement") {
  int feasible = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = test::tiny(seed, 2, 2, 2, 'S');
    std::optional<OracleResult> opt[3];
    for (int v = 0; v < 3; ++v) {
      opt[v] = try_brute_force_solve(inst, {kVariants[v]});
      if (!opt[v]) continue;
      const Report rep = validate_solution(inst, opt[v]->solution, {kVariants[v]});
      CHECK_MESSAGE(rep.ok(), rep.summary());
      CHECK(evaluate_objective(inst, opt[v]->solution).total == opt[v]->cost.total);
      const OracleResult serial = brute_force_solve_serial(inst, {kVariants[v]});
      CHECK(solution_to_text(inst, serial.solution) == solution_to_text(inst, opt[v]->solution));
    }
    if (!opt[0]) {
      CHECK_FALSE(opt[1]);
      CHECK_FALSE(opt[2]);
      continue;
    }
    ++feasible;
    if (opt[1]) CHECK(opt[0]->cost.total <= opt[1]->cost.total);
    if (opt[2]) CHECK(opt[0]->cost.total <= opt[2]->cost.total);
  }
  CHECK(feasible >= 4);
}

TEST_CASE("oracle monotone in capacities") {
  const Instance base = test::tiny(3, 2, 2, 2, 'L');
  double prev = std::numeric_limits<double>::infinity();
  for (double scale : {0.6, 0.8, 1.0, 1.5}) {
    InstanceData d = base.data();
    d.vehicle_capacity *= scale;
    const auto r = try_brute_force_solve(Instance(d), {Variant::WSPSDP});
    const double total = r ? r->cost.total : std::numeric_limits<double>::infinity();
    CHECK(total <= prev);
    prev = total;
  }
}

TEST_CASE("oracle guards") {
  CHECK_THROWS_AS(brute_force_solve(test::tiny(1, 4, 2, 2), {Variant::WSPSDP}), OracleSizeError);
  CHECK_THROWS_AS(brute_force_solve(test::tiny(1, 2, 4, 3), {Variant::WSPSDP}), OracleSizeError);
  InstanceData d = test::toy_data();
  d.vehicle_capacity = 5.0;
  try {
    brute_force_solve(Instance(d), {Variant::WSPSDP});
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("vehicle") != std::string::npos);
  }
  CHECK_FALSE(try_brute_force_solve(Instance(d), {Variant::WSPSDP}).has_value());
}

TEST_CASE("variable counts") {
  const Instance toy = test::toy();
  const MilpModel m = build_milp(toy, {Variant::WSPSDP});
  CHECK(m.count_variables("x_") == 9);
  CHECK(m.count_variables("z_") == 1);
  const auto e = expected_variable_counts(1, 1, 1, Variant::WSPSDP);
  CHECK(e.x == 9);
  CHECK(e.z == 1);
  CHECK(expected_variable_counts(2, 2, 2, Variant::WSPSDP).z == 16);
  CHECK(expected_variable_counts(2, 2, 2, Variant::WSPSDP).x == 36 * 2);

  const Instance t = test::tiny(2, 2, 2, 2);
  for (Variant v : kVariants) {
    const MilpModel model = build_milp(t, {v});
    const auto c = expected_variable_counts(2, 2, 2, v);
    CHECK(model.count_variables("z_") == c.z);
    CHECK(model.count_variables("x_") == c.x);
    CHECK(model.count_variables("y_") == c.y);
    CHECK(model.big_m_factory == 2.0);
    CHECK(model.big_m_customer == 2.0);
  }
  CHECK(build_milp(t, {Variant::WSPS_WI}).count_rows("wi") == t.commodities().size() * 2);
  CHECK(build_milp(t, {Variant::WSPS_SA}).count_rows("sa1") == 4);
}

TEST_CASE("lp text layout") {
  const std::string lp = export_milp(test::toy(), {Variant::WSPSDP}).lp_text;
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.find(" c2_1_2: ") != std::string::npos);
  CHECK(lp.rfind("End") != std::string::npos);
  std::size_t start = 0;
  while (start < lp.size()) {
    const std::size_t end = lp.find('\n', start);
    CHECK(end - start <= 255);
    start = end + 1;
  }
}

TEST_CASE("certification round trip") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Instance inst = test::tiny(seed, 2, 2, 2, 'S');
    for (Variant v : kVariants) {
      const auto opt = try_brute_force_solve(inst, {v});
      if (!opt) continue;
      const MilpModel model = build_milp(inst, {v});
      const Certification c = certify_milp_solution(model, solution_to_milp_values(inst, opt->solution, {v}));
      CHECK_MESSAGE(c.ok(), c.summary());
      CHECK(std::abs(c.objective - opt->cost.total) <= 1e-9 * opt->cost.total);
    }
  }
}

TEST_CASE("zero assignment breaks coverage") {
  const Instance inst = test::toy();
  const MilpModel model = build_milp(inst, {Variant::WSPSDP});
  MilpValues zero;
  for (const auto& var : model.variables) zero[var.name] = 0.0;
  const Certification c = certify_milp_solution(model, zero);
  bool c2 = false;
  for (const RowCheck& r : c.rows) c2 |= r.family == "c2" && r.violated;
  CHECK(c2);
  CHECK(c.objective == 0.0);
}

TEST_CASE("perturbation stays local") {
  const Instance inst = test::tiny(5, 2, 2, 2, 'L');
  const auto opt = brute_force_solve(inst, {Variant::WSPSDP});
  const MilpModel model = build_milp(inst, {Variant::WSPSDP});
  MilpValues values = solution_to_milp_values(inst, opt.solution, {Variant::WSPSDP});
  const Certification before = certify_milp_solution(model, values);

  const Commodity& k = inst.commodity(0);
  const WarehousePair p = opt.solution.assignment[0];
  const std::string z = "z_" + std::to_string(k.factory) + "_" + std::to_string(k.customer) + "_" +
                        std::to_string(p.collection) + "_" + std::to_string(p.delivery);
  values.at(z) += 0.1;
  const Certification after = certify_milp_solution(model, values);

  const int var = model.find(z);
  std::set<std::string> touching;
  for (const MilpRow& r : model.rows)
    for (const LinearTerm& t : r.terms)
      if (t.var == var) touching.insert(r.name);

  std::set<std::string> changed;
  for (std::size_t i = 0; i < model.rows.size(); ++i)
    if (before.rows[i].slack != after.rows[i].slack) changed.insert(before.rows[i].name);
  CHECK(changed == touching);
  int coverage_rows = 0;
  for (const auto& name : changed) {
    const std::string family = name.substr(0, name.find('_'));
    coverage_rows += family == "c2";
    CHECK(std::set<std::string>{"c2", "c3", "c7", "c8", "c11", "c12", "c13"}.count(family) == 1);
  }
  CHECK(coverage_rows == 1);
  CHECK(changed.count("c2_" + std::to_string(k.factory) + "_" + std::to_string(k.customer)) == 1);
  CHECK(changed.count("c3_" + std::to_string(p.collection)) == 1);
}

TEST_CASE("assignment errors") {
  const Instance inst = test::toy();
  const MilpModel model = build_milp(inst, {Variant::WSPSDP});
  MilpValues values = solution_to_milp_values(inst, test::toy_solution(), {Variant::WSPSDP});
  MilpValues missing = values;
  missing.erase(missing.begin());
  CHECK_THROWS_AS(certify_milp_solution(model, missing), AssignmentError);
  values["q_1"] = 1.0;
  CHECK_THROWS_AS(certify_milp_solution(model, values), AssignmentError);
}

TEST_CASE("value file round trip") {
  const Instance inst = test::toy();
  const MilpModel model = build_milp(inst, {Variant::WSPSDP});
  const MilpValues values = solution_to_milp_values(inst, test::toy_solution(), {Variant::WSPSDP});
  CHECK(parse_milp_values(milp_values_to_text(model, values)) == values);
  CHECK(parse_milp_values("# header\nx_0_1_0 1\n\nz_1_2_0_0 0.5 # half\n").at("z_1_2_0_0") == 0.5);
  CHECK_THROWS_AS(parse_milp_values("a 1\na 2\n"), FormatError);
  CHECK_THROWS_AS(parse_milp_values("a one\n"), FormatError);
}
