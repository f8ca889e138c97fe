#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wsps/model.hpp"

namespace wsps {

struct NetworkData {
  std::size_t size = 0;
  std::vector<double> distance;  // row-major size x size
  std::vector<double> flow;      // row-major size x size, zero diagonal
  std::vector<NodeId> candidates;
  std::vector<Point> positions;  // empty unless synthetic

  double distance_at(std::size_t i, std::size_t j) const { return distance[i * size + j]; }
  double flow_at(std::size_t i, std::size_t j) const { return flow[i * size + j]; }
};

struct InstanceSpec {
  int num_warehouses = 7;
  int num_factories = 5;
  int num_customers = 20;
  char capacity_class = 'C';  // C, M, S or L
  std::uint64_t seed = 0;
};

// Q^m as a multiple of total demand: C 0.3, M 0.5, S 0.7, L 2.0.
double capacity_multiplier(char capacity_class);
std::string instance_name(const InstanceSpec& spec);

// Whitespace-delimited dense matrices, one row per line, and a 0-based id
// list. Throws FormatError naming the offending row/column or id.
NetworkData load_network(const std::filesystem::path& distance_file, const std::filesystem::path& flow_file,
                         const std::filesystem::path& candidate_file);
NetworkData parse_network(const std::string& distance_text, const std::string& flow_text,
                          const std::string& candidate_text);

// Samples an instance from the network. Warehouses come from a 7-warehouse
// parent draw, so a 5-warehouse spec with the same seed uses a subset of the
// 7-warehouse instance's warehouses, the same factories and customers and the
// same unit costs. Capacity classes of one seed differ only in Q^m. Nodes are
// renumbered warehouses first, then factories, then customers.
// Throws ParameterError if the spec does not fit the network or the selected
// pairs carry no flow.
Instance generate_instance(const NetworkData& net, const InstanceSpec& spec);

// Points uniform on [0, 1000]^2 with Euclidean distances; each ordered pair
// carries flow U[1, 100] with probability `flow_density`; `candidates`
// random candidate warehouse ids.
NetworkData generate_synthetic_network(std::size_t nodes, std::size_t candidates, std::uint64_t seed,
                                       double flow_density = 0.5);

}  // namespace wsps
