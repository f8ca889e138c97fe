#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsps/model.hpp"

// Full mixed-integer model in CPLEX LP text form.
//
// Variables (ids are instance node ids):
//   x_i_j_m    binary, vehicle of warehouse m travels i -> j (i, j over all nodes)
//   z_i_j_m_n  >= 0, share of flow factory i -> customer j routed via m then n
//   u_i_m      >= 0, collection load after visiting i
//   v_i_m      >= 0, delivery load just before visiting i
//   y_i_m      binary, single allocation only: node i served by m
//
// Row names are "<family>_<indices>"; families c2..c13 follow the model's
// constraint numbering, "sa*" link single allocation, "wi" pins m = n.
// Rows c2 and c4 are emitted only for commodities and nodes with positive
// flow. Row c12 is emitted in its load-decreasing form
//   v_jm + sum_s q_si z_sinm - Qv (1 - x_ijm) <= v_im.

namespace wsps {

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct MilpRow {
  std::string name;
  std::string family;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

struct MilpVariable {
  std::string name;
  bool binary = false;
};

struct MilpModel {
  std::string name;
  std::vector<MilpVariable> variables;
  std::vector<LinearTerm> objective;
  std::vector<MilpRow> rows;
  double big_m_factory = 0.0;   // row c7
  double big_m_customer = 0.0;  // row c8

  int find(std::string_view var) const;  // -1 when absent
  std::size_t count_variables(std::string_view prefix) const;
  std::size_t count_rows(std::string_view family) const;

  std::unordered_map<std::string, int> index;
};

struct MilpVariableCounts {
  std::size_t x = 0, z = 0, u = 0, v = 0, y = 0;
};

MilpVariableCounts expected_variable_counts(std::size_t factories, std::size_t customers, std::size_t warehouses,
                                            Variant variant);

MilpModel build_milp(const Instance& inst, const VariantConfig& cfg);
std::string milp_to_lp_text(const MilpModel& model);

// Instance -> model and its LP text in one call.
struct MilpExport {
  MilpModel model;
  std::string lp_text;
};
MilpExport export_milp(const Instance& inst, const VariantConfig& cfg);

using MilpValues = std::map<std::string, double>;

// Variable values encoding a solution: route arcs, integral z, cumulative
// collection loads, remaining delivery loads and (single allocation) y.
MilpValues solution_to_milp_values(const Instance& inst, const Solution& sol, const VariantConfig& cfg);

// Plain "name value" lines; '#' starts a comment.
MilpValues parse_milp_values(const std::string& text);
std::string milp_values_to_text(const MilpModel& model, const MilpValues& values);

struct RowCheck {
  std::string name;
  std::string family;
  double activity = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // negative when violated
  bool violated = false;
};

struct Certification {
  std::vector<RowCheck> rows;  // constraint rows, then "bound" and "binary" checks that fail
  double objective = 0.0;
  std::size_t violations = 0;

  bool ok() const { return violations == 0; }
  std::string summary() const;  // violated rows, one per line
};

// Evaluates every row at the given values. Throws AssignmentError if a model
// variable has no value or a value names an unknown variable.
Certification certify_milp_solution(const MilpModel& model, const MilpValues& values, double tolerance = 1e-6);

}  // namespace wsps
