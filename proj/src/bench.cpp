#include "wsps/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json_detail.hpp"
#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"
#include "wsps/instance_gen.hpp"
#include "wsps/io.hpp"

namespace wsps {

std::vector<Replication> run_replicated(const Instance& inst, const VariantConfig& cfg, const SearchParams& params,
                                        int replications, int jobs) {
  if (replications < 1) throw ParameterError("replications must be at least 1");
  std::vector<Replication> out(static_cast<std::size_t>(replications));
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(jobs, 1)) if (jobs > 1)
  for (int r = 0; r < replications; ++r) {
    Replication& rep = out[static_cast<std::size_t>(r)];
    SearchParams p = params;
    p.seed = params.seed + static_cast<std::uint64_t>(r);
    rep.seed = p.seed;
    try {
      rep.result = solve(inst, cfg, p);
    } catch (const Error& e) {
      rep.error = e.kind() + ": " + e.what();
    }
  }
  return out;
}

namespace {

double best_total(std::span<const SolveResult> runs) {
  double best = runs.front().best_cost.total;
  for (const SolveResult& r : runs) best = std::min(best, r.best_cost.total);
  return best;
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

std::string pct2(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_num(const std::string& s, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw FormatError(std::string("metrics: bad ") + what + " '" + s + "'");
  }
  return v;
}

std::optional<double> parse_opt(const std::string& s, const char* what) {
  if (s.empty()) return std::nullopt;
  return parse_num(s, what);
}

const char* const kColumns =
    "instance,S_best,S_ave,T_M,N_M,used_warehouses,UB,pct_S_UB,S_SA_best,pct_S_SA,S_WI_best,pct_S_WI,pct_R_SD";

struct NameParts {
  std::string family;  // "W-F-C"
  char capacity = 0;
  int nodes = 0;
  int warehouses = 0;
};

// "W-F-C-Q" with an optional "/tag" suffix; the tag stays part of the family.
std::optional<NameParts> parse_name(const std::string& name) {
  const std::size_t slash = name.find('/');
  const std::string head = name.substr(0, slash);
  const std::string tag = slash == std::string::npos ? "" : name.substr(slash);
  int w = 0, f = 0, c = 0;
  char q = 0;
  int used = 0;
  if (std::sscanf(head.c_str(), "%d-%d-%d-%c%n", &w, &f, &c, &q, &used) != 4 ||
      static_cast<std::size_t>(used) != head.size()) {
    return std::nullopt;
  }
  return NameParts{std::to_string(w) + "-" + std::to_string(f) + "-" + std::to_string(c) + tag, q, w + f + c, w};
}

}  // namespace

MetricsRow compute_metrics(const std::string& instance, std::span<const SolveResult> wspsdp,
                           std::span<const SolveResult> sa, std::span<const SolveResult> wi, std::optional<double> ub) {
  if (wspsdp.empty()) throw AggregationError("no successful runs for " + instance);
  MetricsRow row;
  row.instance = instance;
  const SolveResult* best = &wspsdp.front();
  double sum = 0.0;
  double seconds = 0.0;
  for (const SolveResult& r : wspsdp) {
    if (r.best_cost.total < best->best_cost.total) best = &r;
    sum += r.best_cost.total;
    seconds += r.elapsed_seconds;
  }
  const auto n = static_cast<double>(wspsdp.size());
  row.s_best = best->best_cost.total;
  row.s_ave = sum / n;
  row.t_m = seconds / n;
  row.n_m = best->n_multi_allocation;
  row.used_warehouses = used_warehouses(best->best_solution);
  double sq = 0.0;
  for (const SolveResult& r : wspsdp) sq += (r.best_cost.total - row.s_ave) * (r.best_cost.total - row.s_ave);
  row.pct_r_sd = row.s_ave != 0.0 ? std::sqrt(sq / n) / row.s_ave * 100.0 : 0.0;
  if (ub) {
    row.ub = ub;
    row.pct_s_ub = (*ub - row.s_best) / *ub * 100.0;
  }
  if (!sa.empty()) {
    row.s_sa_best = best_total(sa);
    row.pct_s_sa = (*row.s_sa_best - row.s_best) / *row.s_sa_best * 100.0;
  }
  if (!wi.empty()) {
    row.s_wi_best = best_total(wi);
    row.pct_s_wi = (*row.s_wi_best - row.s_best) / *row.s_wi_best * 100.0;
  }
  return row;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ParameterError("unknown format '" + s + "' (expected csv or json)");
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::string out = std::string(kColumns) + "\n";
  for (const MetricsRow& r : rows) {
    std::string used;
    for (std::size_t i = 0; i < r.used_warehouses.size(); ++i) {
      used += (i ? ";" : "") + std::to_string(r.used_warehouses[i]);
    }
    out += r.instance + "," + num(r.s_best) + "," + num(r.s_ave) + "," + num(r.t_m) + "," + std::to_string(r.n_m) +
           "," + used + "," + opt_num(r.ub) + "," + opt_num(r.pct_s_ub) + "," + opt_num(r.s_sa_best) + "," +
           opt_num(r.pct_s_sa) + "," + opt_num(r.s_wi_best) + "," + opt_num(r.pct_s_wi) + "," + num(r.pct_r_sd) +
           "\n";
  }
  return out;
}

std::vector<MetricsRow> metrics_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kColumns) throw FormatError("metrics: unexpected header");
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 13) throw FormatError("metrics: expected 13 columns in '" + line + "'");
    MetricsRow r;
    r.instance = cells[0];
    r.s_best = parse_num(cells[1], "S_best");
    r.s_ave = parse_num(cells[2], "S_ave");
    r.t_m = parse_num(cells[3], "T_M");
    r.n_m = static_cast<int>(parse_num(cells[4], "N_M"));
    for (const std::string& id : split(cells[5], ';')) {
      if (!id.empty()) r.used_warehouses.push_back(static_cast<NodeId>(parse_num(id, "warehouse id")));
    }
    r.ub = parse_opt(cells[6], "UB");
    r.pct_s_ub = parse_opt(cells[7], "pct_S_UB");
    r.s_sa_best = parse_opt(cells[8], "S_SA_best");
    r.pct_s_sa = parse_opt(cells[9], "pct_S_SA");
    r.s_wi_best = parse_opt(cells[10], "S_WI_best");
    r.pct_s_wi = parse_opt(cells[11], "pct_S_WI");
    r.pct_r_sd = parse_num(cells[12], "pct_R_SD");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string metrics_to_markdown(const std::vector<MetricsRow>& rows) {
  std::string out =
      "| Instance | S_best | S_ave | T_M (s) | N_M | Used warehouses | UB | %S_UB | S_SA | %S_SA | S_WI | %S_WI | %R_SD |\n"
      "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  auto money = [](const std::optional<double>& v) { return pct2(v); };
  for (const MetricsRow& r : rows) {
    std::string used;
    for (std::size_t i = 0; i < r.used_warehouses.size(); ++i) {
      used += (i ? "," : "") + std::to_string(r.used_warehouses[i]);
    }
    out += "| " + r.instance + " | " + money(r.s_best) + " | " + money(r.s_ave) + " | " + money(r.t_m) + " | " +
           std::to_string(r.n_m) + " | " + used + " | " + money(r.ub) + " | " + pct2(r.pct_s_ub) + " | " +
           money(r.s_sa_best) + " | " + pct2(r.pct_s_sa) + " | " + money(r.s_wi_best) + " | " + pct2(r.pct_s_wi) +
           " | " + pct2(r.pct_r_sd) + " |\n";
  }
  return out;
}

void emit_report(const std::vector<MetricsRow>& rows, const std::filesystem::path& dir, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    write_text_file(dir / "metrics.csv", metrics_to_csv(rows));
  } else {
    detail::json arr = detail::json::array();
    for (const MetricsRow& r : rows) {
      auto opt = [](const std::optional<double>& v) { return v ? detail::json(*v) : detail::json(nullptr); };
      arr.push_back({{"instance", r.instance},
                     {"S_best", r.s_best},
                     {"S_ave", r.s_ave},
                     {"T_M", r.t_m},
                     {"N_M", r.n_m},
                     {"used_warehouses", r.used_warehouses},
                     {"UB", opt(r.ub)},
                     {"pct_S_UB", opt(r.pct_s_ub)},
                     {"S_SA_best", opt(r.s_sa_best)},
                     {"pct_S_SA", opt(r.pct_s_sa)},
                     {"S_WI_best", opt(r.s_wi_best)},
                     {"pct_S_WI", opt(r.pct_s_wi)},
                     {"pct_R_SD", r.pct_r_sd}});
    }
    write_text_file(dir / "metrics.json", arr.dump(1) + "\n");
  }
  write_text_file(dir / "table.md", metrics_to_markdown(rows));

  // Capacity series: per family, classes in multiplier order.
  std::vector<std::pair<std::pair<std::string, double>, const MetricsRow*>> cap;
  for (const MetricsRow& r : rows) {
    const auto parts = parse_name(r.instance);
    if (!parts) continue;
    try {
      cap.push_back({{parts->family, capacity_multiplier(parts->capacity)}, &r});
    } catch (const ParameterError&) {
    }
  }
  std::stable_sort(cap.begin(), cap.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string series = "family,capacity_multiplier,instance,pct_S_WI,pct_S_SA\n";
  for (const auto& [key, r] : cap) {
    series += key.first + "," + num(key.second) + "," + r->instance + "," + opt_num(r->pct_s_wi) + "," +
              opt_num(r->pct_s_sa) + "\n";
  }
  write_text_file(dir / "series_capacity.csv", series);

  std::string times = "instance,nodes,warehouses,T_M\n";
  for (const MetricsRow& r : rows) {
    const auto parts = parse_name(r.instance);
    times += r.instance + "," + (parts ? std::to_string(parts->nodes) : "") + "," +
             (parts ? std::to_string(parts->warehouses) : "") + "," + num(r.t_m) + "\n";
  }
  write_text_file(dir / "series_time.csv", times);
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Instance build_instance_unchecked(const detail::json& gen, const std::filesystem::path& base) {
  const auto& netdoc = gen.at("network");
  NetworkData net;
  if (netdoc.contains("synthetic")) {
    const auto& s = netdoc.at("synthetic");
    net = generate_synthetic_network(s.at("nodes").get<std::size_t>(), s.at("candidates").get<std::size_t>(),
                                     s.value("seed", std::uint64_t{0}), s.value("flow_density", 0.5));
  } else {
    net = load_network(resolve(base, netdoc.at("distance").get<std::string>()),
                       resolve(base, netdoc.at("flow").get<std::string>()),
                       resolve(base, netdoc.at("candidates").get<std::string>()));
  }
  InstanceSpec spec;
  spec.num_warehouses = gen.at("warehouses").get<int>();
  spec.num_factories = gen.at("factories").get<int>();
  spec.num_customers = gen.at("customers").get<int>();
  const auto cls = gen.at("class").get<std::string>();
  if (cls.size() != 1) throw FormatError("manifest: capacity class must be one letter, got '" + cls + "'");
  spec.capacity_class = cls[0];
  spec.seed = gen.value("seed", std::uint64_t{0});
  Instance inst = generate_instance(net, spec);
  if (!gen.contains("tag")) return inst;
  InstanceData d = inst.data();
  d.name += "/" + gen.at("tag").get<std::string>();
  return Instance(std::move(d));
}

Instance build_instance(const detail::json& gen, const std::filesystem::path& base) {
  try {
    return build_instance_unchecked(gen, base);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("manifest generate entry: ") + e.what());
  }
}

void append_csv(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
}

}  // namespace

Manifest manifest_from_text(const std::string& text, const std::filesystem::path& base_dir) {
  const auto doc = detail::parse_json(text, "manifest");
  Manifest m;
  try {
    for (const auto& item : doc.at("instances")) {
      ManifestInstance mi;
      if (item.contains("path")) {
        mi.path = resolve(base_dir, item.at("path").get<std::string>());
      } else if (item.contains("generate")) {
        mi.generate_json = item.at("generate").dump();
      } else {
        throw FormatError("manifest: instance entry needs \"path\" or \"generate\"");
      }
      m.instances.push_back(std::move(mi));
    }
    if (doc.contains("variants")) {
      m.variants.clear();
      for (const auto& v : doc.at("variants")) m.variants.push_back(variant_from_string(v.get<std::string>()));
    }
    if (doc.contains("params")) m.params = params_from_text(doc.at("params").dump());
    m.replications = doc.value("replications", m.replications);
    if (doc.contains("base_seed")) m.params.seed = doc.at("base_seed").get<std::uint64_t>();
    if (doc.contains("output_dir")) m.output_dir = resolve(base_dir, doc.at("output_dir").get<std::string>());
    if (doc.contains("upper_bounds")) m.upper_bounds = doc.at("upper_bounds").get<std::map<std::string, double>>();
    m.jobs = doc.value("jobs", m.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  if (m.replications < 1) throw ParameterError("manifest: replications must be at least 1");
  // keep the generation specs' relative network paths resolvable
  for (ManifestInstance& mi : m.instances) {
    if (mi.generate_json.empty()) continue;
    auto gen = detail::json::parse(mi.generate_json);
    auto& net = gen["network"];
    for (const char* key : {"distance", "flow", "candidates"}) {
      if (net.contains(key) && net[key].is_string()) net[key] = resolve(base_dir, net[key].get<std::string>()).string();
    }
    mi.generate_json = gen.dump();
  }
  return m;
}

Manifest read_manifest(const std::filesystem::path& path) {
  return manifest_from_text(read_text_file(path), path.parent_path());
}

BenchOutcome run_manifest(const Manifest& manifest, ReportFormat format) {
  BenchOutcome outcome;
  std::string runs = "instance,variant,seed,total,variable_cost,local_tour_cost,inter_warehouse_cost,n_multi_allocation,used_warehouses\n";
  std::string failures = "instance,variant,seed,error\n";
  for (const ManifestInstance& mi : manifest.instances) {
    const Instance inst = mi.path.empty() ? build_instance(detail::json::parse(mi.generate_json), {})
                                          : read_instance(mi.path);
    std::map<Variant, std::vector<SolveResult>> ok;
    for (const Variant v : manifest.variants) {
      for (Replication& rep : run_replicated(inst, {v}, manifest.params, manifest.replications, manifest.jobs)) {
        const std::string vname(to_string(v));
        if (!rep.result) {
          ++outcome.failures;
          std::string err = rep.error;
          std::replace(err.begin(), err.end(), ',', ';');
          std::replace(err.begin(), err.end(), '\n', ' ');
          append_csv(failures, {inst.name(), vname, std::to_string(rep.seed), err});
          continue;
        }
        const SolveResult& r = *rep.result;
        std::string used;
        for (NodeId w : used_warehouses(r.best_solution)) used += (used.empty() ? "" : ";") + std::to_string(w);
        append_csv(runs, {inst.name(), vname, std::to_string(rep.seed), num(r.best_cost.total),
                          num(r.best_cost.variable_cost), num(r.best_cost.local_tour_cost),
                          num(r.best_cost.inter_warehouse_cost), std::to_string(r.n_multi_allocation), used});
        ok[v].push_back(std::move(*rep.result));
      }
    }
    const auto& dp = ok[Variant::WSPSDP];
    if (dp.empty()) continue;
    std::optional<double> ub;
    if (const auto it = manifest.upper_bounds.find(inst.name()); it != manifest.upper_bounds.end()) ub = it->second;
    outcome.rows.push_back(compute_metrics(inst.name(), dp, ok[Variant::WSPS_SA], ok[Variant::WSPS_WI], ub));
  }
  write_text_file(manifest.output_dir / "runs.csv", runs);
  write_text_file(manifest.output_dir / "failures.csv", failures);
  emit_report(outcome.rows, manifest.output_dir, format);
  return outcome;
}

}  // namespace wsps
