#pragma once

#include <cstdint>
#include <optional>

#include "wsps/model.hpp"

namespace wsps {

struct OracleLimits {
  int max_nodes = 6;        // |F| + |C|
  int max_warehouses = 3;
  double max_leaves = 5e8;  // assignments enumerated before capacity pruning
};

struct OracleResult {
  Solution solution;
  CostBreakdown cost;
  std::uint64_t leaves = 0;  // complete assignments evaluated
};

// Exhaustive optimum over integral commodity assignments: every commodity
// picks a (collection, delivery) warehouse pair allowed by the variant, and
// each (warehouse, kind) is split optimally into capacity-feasible routes with
// exact TSP tours. Among equal totals the first assignment in enumeration
// order wins, so the parallel and serial paths return the same solution.
// Throws OracleSizeError beyond the limits and InfeasibleError when no
// assignment satisfies the capacities.
OracleResult brute_force_solve(const Instance& inst, const VariantConfig& cfg, const OracleLimits& limits = {});
OracleResult brute_force_solve_serial(const Instance& inst, const VariantConfig& cfg, const OracleLimits& limits = {});

// Same as brute_force_solve but reports infeasibility as nullopt.
std::optional<OracleResult> try_brute_force_solve(const Instance& inst, const VariantConfig& cfg,
                                                  const OracleLimits& limits = {});

}  // namespace wsps
