#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "wsps/alnds.hpp"
#include "wsps/bench.hpp"
#include "wsps/brute_force.hpp"
#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"
#include "wsps/instance_gen.hpp"
#include "wsps/io.hpp"
#include "wsps/milp.hpp"
#include "wsps/validate.hpp"

namespace {

using namespace wsps;

// Writes to `path`, or standard output when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string cost_line(const CostBreakdown& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "total %.17g (variable %.17g, local tours %.17g, inter-warehouse %.17g)\n", c.total,
                c.variable_cost, c.local_tour_cost, c.inter_warehouse_cost);
  return buf;
}

struct Options {
  std::string instance;
  std::string variant = "wspsdp";
  std::optional<std::uint64_t> seed;
  std::string params;
  std::string manifest;
  std::string out;
  std::optional<int> jobs;
  std::string format = "csv";
  std::string solution;
  std::string values;
  std::string solution_out;

  std::string distance, flow, candidates;
  std::size_t synthetic_nodes = 0;
  std::size_t synthetic_candidates = 16;
  std::uint64_t network_seed = 0;
  double flow_density = 0.5;
  InstanceSpec spec;
  std::string capacity_class = "C";
  int max_nodes = 6;
  int max_warehouses = 3;
};

VariantConfig variant_of(const Options& o) { return {variant_from_string(o.variant)}; }

int cmd_generate(const Options& o) {
  NetworkData net;
  if (!o.distance.empty() || !o.flow.empty() || !o.candidates.empty()) {
    if (o.distance.empty() || o.flow.empty() || o.candidates.empty()) {
      throw ParameterError("--distance, --flow and --candidates must be given together");
    }
    net = load_network(o.distance, o.flow, o.candidates);
  } else if (o.synthetic_nodes > 0) {
    net = generate_synthetic_network(o.synthetic_nodes, o.synthetic_candidates, o.network_seed, o.flow_density);
  } else {
    throw ParameterError("generate needs a network: --distance/--flow/--candidates or --synthetic-nodes");
  }
  InstanceSpec spec = o.spec;
  if (o.capacity_class.size() != 1) throw ParameterError("--class takes one letter: C, M, S or L");
  spec.capacity_class = o.capacity_class[0];
  spec.seed = o.seed.value_or(0);
  const Instance inst = generate_instance(net, spec);
  emit(o.out, instance_to_text(inst));
  std::cerr << "generated " << inst.name() << " (" << inst.size() << " nodes, " << inst.commodities().size()
            << " commodities)\n";
  return 0;
}

int cmd_solve(const Options& o) {
  const Instance inst = read_instance(o.instance);
  SearchParams params = o.params.empty() ? SearchParams{} : params_from_text(read_text_file(o.params));
  if (o.seed) params.seed = *o.seed;
  const SolveResult r = solve(inst, variant_of(o), params);
  emit(o.out, solve_result_to_text(inst, r));
  if (!o.solution_out.empty()) write_solution(inst, r.best_solution, o.solution_out);
  std::cerr << cost_line(r.best_cost);
  return 0;
}

int cmd_bench(const Options& o) {
  Manifest m = read_manifest(o.manifest);
  if (!o.out.empty()) m.output_dir = o.out;
  if (o.jobs) m.jobs = *o.jobs;
  if (o.seed) m.params.seed = *o.seed;
  const BenchOutcome outcome = run_manifest(m, report_format_from_string(o.format));
  std::cerr << outcome.rows.size() << " instance rows written to " << m.output_dir.string() << "\n";
  if (outcome.failures > 0) {
    std::cerr << "error: bench: " << outcome.failures << " runs failed; see "
              << (m.output_dir / "failures.csv").string() << "\n";
    return 1;
  }
  return 0;
}

int cmd_export(const Options& o) {
  const Instance inst = read_instance(o.instance);
  const auto e = export_milp(inst, variant_of(o));
  emit(o.out, e.lp_text);
  std::cerr << e.model.variables.size() << " variables, " << e.model.rows.size() << " rows\n";
  return 0;
}

int cmd_certify(const Options& o) {
  const Instance inst = read_instance(o.instance);
  const VariantConfig cfg = variant_of(o);
  if (o.solution.empty() == o.values.empty()) throw ParameterError("certify needs exactly one of --solution or --values");
  const MilpModel model = build_milp(inst, cfg);
  const MilpValues values = o.solution.empty() ? parse_milp_values(read_text_file(o.values))
                                               : solution_to_milp_values(inst, read_solution(inst, o.solution), cfg);
  const Certification cert = certify_milp_solution(model, values);
  std::string report;
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["rows"] = cert.rows.size();
    doc["violations"] = cert.violations;
    doc["objective"] = cert.objective;
    auto& viol = doc["violated"] = nlohmann::ordered_json::array();
    for (const RowCheck& r : cert.rows) {
      if (r.violated) viol.push_back({{"row", r.name}, {"activity", r.activity}, {"rhs", r.rhs}, {"slack", r.slack}});
    }
    report = doc.dump(1) + "\n";
  } else {
    report = "row,family,activity,rhs,slack,violated\n";
    char buf[128];
    for (const RowCheck& r : cert.rows) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%d\n", r.activity, r.rhs, r.slack, r.violated ? 1 : 0);
      report += r.name + "," + r.family + buf;
    }
  }
  emit(o.out, report);
  char line[128];
  std::snprintf(line, sizeof line, "objective %.17g, %zu rows, %zu violations\n", cert.objective, cert.rows.size(),
                cert.violations);
  std::cerr << line;
  if (!cert.ok()) {
    std::cerr << "error: certification: " << cert.violations << " violated rows\n" << cert.summary();
    return 1;
  }
  return 0;
}

int cmd_oracle(const Options& o) {
  const Instance inst = read_instance(o.instance);
  OracleLimits limits;
  limits.max_nodes = o.max_nodes;
  limits.max_warehouses = o.max_warehouses;
  const OracleResult r = brute_force_solve(inst, variant_of(o), limits);
  emit(o.out, solution_to_text(inst, r.solution));
  std::cerr << cost_line(r.cost);
  return 0;
}

int cmd_validate(const Options& o) {
  const Instance inst = read_instance(o.instance);
  Report rep = validate_instance(inst);
  if (rep.ok() && !o.solution.empty()) rep = validate_solution(inst, read_solution(inst, o.solution), variant_of(o));
  if (rep.ok()) {
    std::cout << "ok\n";
    return 0;
  }
  std::cout << rep.summary();
  std::cerr << "error: validation: " << rep.violations.size() << " violations\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warehouse sharing network design: generation, search, exact checks and benchmarks"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> variants{"wspsdp", "sa", "wi"};

  auto* gen = app.add_subcommand("generate", "Sample an instance from a network");
  gen->add_option("--distance", o.distance, "Distance matrix file");
  gen->add_option("--flow", o.flow, "Flow matrix file");
  gen->add_option("--candidates", o.candidates, "Candidate warehouse id file");
  gen->add_option("--synthetic-nodes", o.synthetic_nodes, "Use a synthetic network with this many nodes");
  gen->add_option("--synthetic-candidates", o.synthetic_candidates, "Candidate warehouses in the synthetic network");
  gen->add_option("--network-seed", o.network_seed, "Seed of the synthetic network");
  gen->add_option("--flow-density", o.flow_density, "Share of node pairs with flow in the synthetic network");
  gen->add_option("--warehouses", o.spec.num_warehouses, "Number of warehouses")->capture_default_str();
  gen->add_option("--factories", o.spec.num_factories, "Number of factories")->capture_default_str();
  gen->add_option("--customers", o.spec.num_customers, "Number of customers")->capture_default_str();
  gen->add_option("--class", o.capacity_class, "Capacity class C, M, S or L")->capture_default_str();
  gen->add_option("--seed", o.seed, "Sampling seed");
  gen->add_option("--out", o.out, "Output instance file (default stdout)");

  auto* sol = app.add_subcommand("solve", "Run the search on one instance");
  sol->add_option("--instance", o.instance, "Instance file")->required();
  sol->add_option("--variant", o.variant, "Model variant")->check(CLI::IsMember(variants))->capture_default_str();
  sol->add_option("--seed", o.seed, "Search seed (overrides the params file)");
  sol->add_option("--params", o.params, "Search parameter file (JSON)");
  sol->add_option("--out", o.out, "Result file (default stdout)");
  sol->add_option("--solution-out", o.solution_out, "Also write the best solution in solution format");

  auto* ben = app.add_subcommand("bench", "Run an experiment manifest");
  ben->add_option("--manifest", o.manifest, "Manifest file")->required();
  ben->add_option("--out", o.out, "Output directory (overrides the manifest)");
  ben->add_option("--jobs", o.jobs, "Concurrent replications");
  ben->add_option("--seed", o.seed, "Base seed (overrides the manifest)");
  ben->add_option("--format", o.format, "Metrics format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* exp = app.add_subcommand("export-milp", "Write the mixed-integer model as LP text");
  exp->add_option("--instance", o.instance, "Instance file")->required();
  exp->add_option("--variant", o.variant, "Model variant")->check(CLI::IsMember(variants))->capture_default_str();
  exp->add_option("--out", o.out, "LP file (default stdout)");

  auto* cer = app.add_subcommand("certify", "Check a solution or variable assignment against the model rows");
  cer->add_option("--instance", o.instance, "Instance file")->required();
  cer->add_option("--variant", o.variant, "Model variant")->check(CLI::IsMember(variants))->capture_default_str();
  cer->add_option("--solution", o.solution, "Solution file");
  cer->add_option("--values", o.values, "Variable values file, one 'name value' per line");
  cer->add_option("--out", o.out, "Row report (default stdout)");
  cer->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* ora = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  ora->add_option("--instance", o.instance, "Instance file")->required();
  ora->add_option("--variant", o.variant, "Model variant")->check(CLI::IsMember(variants))->capture_default_str();
  ora->add_option("--out", o.out, "Solution file (default stdout)");
  ora->add_option("--max-nodes", o.max_nodes, "Factories plus customers limit")->capture_default_str();
  ora->add_option("--max-warehouses", o.max_warehouses, "Warehouse limit")->capture_default_str();

  auto* val = app.add_subcommand("validate", "Check an instance and optionally a solution");
  val->add_option("--instance", o.instance, "Instance file")->required();
  val->add_option("--solution", o.solution, "Solution file");
  val->add_option("--variant", o.variant, "Model variant")->check(CLI::IsMember(variants))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*sol) return cmd_solve(o);
    if (*ben) return cmd_bench(o);
    if (*exp) return cmd_export(o);
    if (*cer) return cmd_certify(o);
    if (*ora) return cmd_oracle(o);
    if (*val) return cmd_validate(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
