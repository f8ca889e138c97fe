#pragma once

#include <filesystem>
#include <string>

#include "wsps/model.hpp"

// Canonical text formats (JSON documents).
//
// Instance, version 1:
//   {
//     "format": "wsps-instance", "version": 1, "name": "7-5-20-C",
//     "nodes": [ {"id": 0, "role": "warehouse", "x": 1.5, "y": 2.0}, ... ],
//     "distance": [ [0, 3.2, ...], ... ],          // |N| rows of |N| entries
//     "flows": [ [factory, customer, q], ... ],
//     "warehouses": [ {"id": 0, "capacity": 120, "unit_cost": 0.2}, ... ],
//     "vehicle_capacity": 80, "alpha": 0.001, "beta": 1
//   }
//   x/y are optional. "format" is optional on input; unknown "version" values
//   are rejected.
//
// Solution, version 1:
//   {
//     "format": "wsps-solution", "version": 1,
//     "routes": [ {"warehouse": 0, "kind": "collection",
//                  "visits": [ {"node": 3, "commodities": [[3, 5], [3, 6]]} ]} ],
//     "assignment": [ {"factory": 3, "customer": 5, "collection": 0, "delivery": 1} ]
//   }
//   Commodities are written as (factory, customer) pairs; reading a solution
//   needs the instance to resolve them.
namespace wsps {

inline constexpr int kInstanceFormatVersion = 1;
inline constexpr int kSolutionFormatVersion = 1;

std::string instance_to_text(const Instance& inst);
Instance instance_from_text(const std::string& text);
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& inst, const std::filesystem::path& path);

std::string solution_to_text(const Instance& inst, const Solution& sol);
Solution solution_from_text(const Instance& inst, const std::string& text);
Solution read_solution(const Instance& inst, const std::filesystem::path& path);
void write_solution(const Instance& inst, const Solution& sol, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wsps
