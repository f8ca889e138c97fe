#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "support.hpp"
#include "wsps/bench.hpp"
#include "wsps/brute_force.hpp"
#include "wsps/error.hpp"
#include "wsps/io.hpp"

using namespace wsps;

namespace {

SolveResult run(double total, double seconds = 1.0) {
  SolveResult r;
  r.best_cost.total = total;
  r.elapsed_seconds = seconds;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("wsps_bench_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("published gaps") {
  const std::vector<SolveResult> a{run(24398.95)};
  const MetricsRow ub = compute_metrics("7-5-10-C", a, {}, {}, 25848.92);
  CHECK(std::abs(*ub.pct_s_ub - 5.61) <= 0.005);
  CHECK_FALSE(ub.pct_s_sa);

  const std::vector<SolveResult> dp{run(23597.16)}, sa{run(23867.31)}, wi{run(30031.14)};
  const MetricsRow row = compute_metrics("5-5-5-C", dp, sa, wi);
  CHECK(std::abs(*row.pct_s_sa - 1.13) <= 0.005);
  CHECK(std::abs(*row.pct_s_wi - 21.42) <= 0.005);
  CHECK_FALSE(row.ub);
}

TEST_CASE("replication statistics") {
  const std::vector<SolveResult> same(10, run(100.0));
  CHECK(compute_metrics("x", same).pct_r_sd == 0.0);

  // population sd of {1, 2, 3, 4} is sqrt(1.25)
  std::vector<SolveResult> spread{run(4, 2), run(1, 4), run(3, 6), run(2, 8)};
  const MetricsRow m = compute_metrics("x", spread);
  CHECK(m.s_best == 1.0);
  CHECK(m.s_ave == 2.5);
  CHECK(m.t_m == 5.0);
  CHECK(m.pct_r_sd == doctest::Approx(std::sqrt(1.25) / 2.5 * 100.0));
  std::reverse(spread.begin(), spread.end());
  MetricsRow r = compute_metrics("x", spread);
  CHECK(r.pct_r_sd == doctest::Approx(m.pct_r_sd).epsilon(1e-15));
  CHECK(r.s_ave == m.s_ave);

  CHECK_THROWS_AS(compute_metrics("x", std::vector<SolveResult>{}), AggregationError);
}

TEST_CASE("metrics csv round trip") {
  MetricsRow a;
  a.instance = "7-5-10-C";
  a.s_best = 24398.95;
  a.s_ave = 24400.123456789012;
  a.t_m = 0.1 + 0.2;
  a.n_m = 3;
  a.used_warehouses = {0, 2, 5};
  a.ub = 25848.92;
  a.pct_s_ub = (25848.92 - 24398.95) / 25848.92 * 100.0;
  a.pct_r_sd = 1.0 / 3.0;
  MetricsRow b;
  b.instance = "5-5-5-S/f1";
  b.s_best = 1e-7;
  b.s_ave = 2.0;
  b.s_sa_best = 3.0;
  b.pct_s_sa = -0.0001;
  b.s_wi_best = 4.0;
  b.pct_s_wi = 50.0;
  const std::vector<MetricsRow> rows{a, b};
  const auto back = metrics_from_csv(metrics_to_csv(rows));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == a);
  CHECK(back[1] == b);
  CHECK(metrics_from_csv(metrics_to_csv({})).empty());
  CHECK_THROWS_AS(metrics_from_csv("instance,S_best\nx,1\n"), FormatError);
}

TEST_CASE("report files") {
  const auto dir = scratch("report");
  std::vector<MetricsRow> rows;
  for (char cls : {'S', 'C', 'M'}) {
    MetricsRow r;
    r.instance = std::string("7-5-10-") + cls;
    r.s_best = r.s_ave = 10.0;
    r.pct_s_wi = cls == 'C' ? 30.0 : cls == 'M' ? 20.0 : 10.0;
    rows.push_back(r);
  }
  emit_report(rows, dir);
  const std::string series = read_text_file(dir / "series_capacity.csv");
  CHECK(series ==
        "family,capacity_multiplier,instance,pct_S_WI,pct_S_SA\n"
        "7-5-10,0.3,7-5-10-C,30,\n"
        "7-5-10,0.5,7-5-10-M,20,\n"
        "7-5-10,0.7,7-5-10-S,10,\n");
  const std::string table = read_text_file(dir / "table.md");
  CHECK(table.find("| 7-5-10-C | 10.00 | 10.00 |") != std::string::npos);
  CHECK(metrics_from_csv(read_text_file(dir / "metrics.csv")) == rows);

  emit_report({}, dir);
  const std::string header = read_text_file(dir / "metrics.csv");
  CHECK(std::count(header.begin(), header.end(), '\n') == 1);

  emit_report(rows, dir, ReportFormat::Json);
  CHECK(std::filesystem::exists(dir / "metrics.json"));
  CHECK_THROWS_AS(report_format_from_string("xml"), ParameterError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("replications") {
  const Instance inst = test::tiny(3, 2, 2, 2, 'S');
  SearchParams p;
  p.iterations = 2000;
  p.seed = 40;
  const auto one = run_replicated(inst, {Variant::WSPSDP}, p, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].seed == 40);
  CHECK(solve_result_to_text(inst, *one[0].result, false) ==
        solve_result_to_text(inst, solve(inst, {Variant::WSPSDP}, p), false));

  const auto serial = run_replicated(inst, {Variant::WSPSDP}, p, 4, 1);
  const auto parallel = run_replicated(inst, {Variant::WSPSDP}, p, 4, 3);
  const double opt = brute_force_solve(inst, {Variant::WSPSDP}).cost.total;
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(serial[r].seed == 40 + r);
    CHECK(solve_result_to_text(inst, *serial[r].result, false) ==
          solve_result_to_text(inst, *parallel[r].result, false));
    CHECK(serial[r].result->best_cost.total == doctest::Approx(opt).epsilon(1e-9));
  }
  CHECK_THROWS_AS(run_replicated(inst, {Variant::WSPSDP}, p, 0), ParameterError);
}

TEST_CASE("failed runs are recorded") {
  InstanceData d = test::toy_data();
  d.warehouses[0].capacity = 5.0;
  const auto reps = run_replicated(Instance(d), {Variant::WSPS_SA}, SearchParams{}, 2);
  for (const auto& r : reps) {
    CHECK_FALSE(r.result);
    CHECK(r.error.rfind("construction: ", 0) == 0);
  }
}

TEST_CASE("manifest") {
  const auto dir = scratch("manifest");
  std::filesystem::create_directories(dir);
  write_instance(test::tiny(2, 2, 2, 2, 'L'), dir / "tiny.json");
  write_text_file(dir / "m.json", R"({
    "instances": [{"path": "tiny.json"},
                  {"generate": {"network": {"synthetic": {"nodes": 14, "candidates": 7, "seed": 3}},
                                "warehouses": 2, "factories": 2, "customers": 3, "class": "L", "seed": 1,
                                "tag": "a"}}],
    "params": {"iterations": 500}, "replications": 2, "base_seed": 5, "output_dir": "out"})");
  const Manifest m = read_manifest(dir / "m.json");
  CHECK(m.instances.size() == 2);
  CHECK(m.params.seed == 5);
  CHECK(m.output_dir == dir / "out");
  CHECK(m.variants.size() == 3);

  const BenchOutcome first = run_manifest(m);
  CHECK(first.failures == 0);
  REQUIRE(first.rows.size() == 2);
  CHECK(first.rows[1].instance == "2-2-3-L/a");
  for (const MetricsRow& r : first.rows) {
    CHECK(*r.pct_s_sa >= -1e-9);
    CHECK(*r.pct_s_wi >= -1e-9);
  }
  const std::string runs = read_text_file(dir / "out" / "runs.csv");
  const std::string series = read_text_file(dir / "out" / "series_capacity.csv");
  run_manifest(m);
  CHECK(read_text_file(dir / "out" / "runs.csv") == runs);
  CHECK(read_text_file(dir / "out" / "series_capacity.csv") == series);
  CHECK(series.find("2-2-3/a,2,2-2-3-L/a") != std::string::npos);

  CHECK_THROWS_AS(manifest_from_text(R"({"instances": [{"file": "x"}]})"), FormatError);
  CHECK_THROWS_AS(manifest_from_text(R"({"instances": [], "replications": 0})"), ParameterError);
  CHECK_THROWS_AS(manifest_from_text("[1,"), FormatError);
  std::filesystem::remove_all(dir);
}
