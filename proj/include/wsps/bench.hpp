#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsps/alnds.hpp"
#include "wsps/model.hpp"

namespace wsps {

struct Replication {
  std::uint64_t seed = 0;
  std::optional<SolveResult> result;  // empty when the run failed
  std::string error;
};

// Runs solve with seeds base, base + 1, ... where base is params.seed.
// jobs > 1 runs replications concurrently; the output is ordered by seed and
// identical to the serial run apart from timings.
std::vector<Replication> run_replicated(const Instance& inst, const VariantConfig& cfg, const SearchParams& params,
                                        int replications, int jobs = 1);

struct MetricsRow {
  std::string instance;
  double s_best = 0.0;
  double s_ave = 0.0;
  double t_m = 0.0;  // mean seconds per run
  int n_m = 0;
  std::vector<NodeId> used_warehouses;
  std::optional<double> ub;
  std::optional<double> pct_s_ub;
  std::optional<double> s_sa_best;
  std::optional<double> pct_s_sa;
  std::optional<double> s_wi_best;
  std::optional<double> pct_s_wi;
  double pct_r_sd = 0.0;

  bool operator==(const MetricsRow&) const = default;
};

// Gap statistics of the base-model runs against the optional baselines and
// upper bound. SD is the population standard deviation. Throws
// AggregationError when `wspsdp` is empty.
MetricsRow compute_metrics(const std::string& instance, std::span<const SolveResult> wspsdp,
                           std::span<const SolveResult> sa = {}, std::span<const SolveResult> wi = {},
                           std::optional<double> ub = std::nullopt);

enum class ReportFormat { Csv, Json };
ReportFormat report_format_from_string(const std::string& s);

// Writes metrics.csv (or metrics.json), table.md, series_capacity.csv and
// series_time.csv into `dir`. Missing values are left blank.
void emit_report(const std::vector<MetricsRow>& rows, const std::filesystem::path& dir,
                 ReportFormat format = ReportFormat::Csv);
std::string metrics_to_csv(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> metrics_from_csv(const std::string& text);
std::string metrics_to_markdown(const std::vector<MetricsRow>& rows);

struct ManifestInstance {
  std::filesystem::path path;  // either a file ...
  std::string generate_json;   // ... or a generation spec (JSON object text)
};

struct Manifest {
  std::vector<ManifestInstance> instances;
  std::vector<Variant> variants{Variant::WSPSDP, Variant::WSPS_SA, Variant::WSPS_WI};
  SearchParams params;
  int replications = 10;
  std::filesystem::path output_dir = "bench_out";
  std::map<std::string, double> upper_bounds;
  int jobs = 1;
};

// Manifest JSON:
//   {"instances": [{"path": "a.json"},
//                  {"generate": {"network": {"synthetic": {"nodes": 81, "candidates": 16, "seed": 1}},
//                                "warehouses": 7, "factories": 5, "customers": 10,
//                                "class": "C", "seed": 3}}],
//    "variants": ["wspsdp", "sa", "wi"], "params": {...}, "replications": 10,
//    "base_seed": 0, "output_dir": "out", "upper_bounds": {"7-5-10-C": 25848.92}, "jobs": 1}
// A file network is {"distance": path, "flow": path, "candidates": path}.
// An optional "tag" in a generate entry is appended to the instance name as
// "7-5-10-C/tag"; report series group by W-F-C plus tag.
// Relative paths resolve against `base_dir`.
Manifest manifest_from_text(const std::string& text, const std::filesystem::path& base_dir = {});
Manifest read_manifest(const std::filesystem::path& path);

struct BenchOutcome {
  std::vector<MetricsRow> rows;
  std::size_t failures = 0;
};

// Runs every instance and variant, then writes runs.csv, failures.csv and
// the report files. Failed runs are listed in failures.csv and leave their
// variant's columns blank.
BenchOutcome run_manifest(const Manifest& manifest, ReportFormat format = ReportFormat::Csv);

}  // namespace wsps
