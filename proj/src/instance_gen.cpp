#include "wsps/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wsps/error.hpp"
#include "wsps/io.hpp"
#include "wsps/rng.hpp"

namespace wsps {

namespace {

constexpr int kParentWarehouses = 7;

enum Stream : std::uint64_t { kParentDraw = 1, kSubsetDraw, kNodeDraw, kCostDraw, kVehicleDraw };

std::vector<std::vector<double>> parse_matrix(const std::string& text, const char* what) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw FormatError(std::string(what) + " row " + std::to_string(rows.size()) + " column " +
                          std::to_string(row.size()) + ": not a number '" + tok + "'");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> square(const std::vector<std::vector<double>>& rows, std::size_t n, const char* what) {
  if (rows.size() != n) {
    throw FormatError(std::string(what) + ": expected " + std::to_string(n) + " rows, found " +
                      std::to_string(rows.size()));
  }
  std::vector<double> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw FormatError(std::string(what) + " row " + std::to_string(i) + ": expected " + std::to_string(n) +
                        " columns, found " + std::to_string(rows[i].size()));
    }
    out.insert(out.end(), rows[i].begin(), rows[i].end());
  }
  return out;
}

// k distinct draws from `pool`, in draw order.
std::vector<NodeId> sample(std::vector<NodeId> pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

double capacity_multiplier(char capacity_class) {
  switch (capacity_class) {
    case 'C': return 0.3;
    case 'M': return 0.5;
    case 'S': return 0.7;
    case 'L': return 2.0;
  }
  throw ParameterError(std::string("unknown capacity class '") + capacity_class + "' (expected C, M, S or L)");
}

std::string instance_name(const InstanceSpec& spec) {
  return std::to_string(spec.num_warehouses) + "-" + std::to_string(spec.num_factories) + "-" +
         std::to_string(spec.num_customers) + "-" + spec.capacity_class;
}

NetworkData parse_network(const std::string& distance_text, const std::string& flow_text,
                          const std::string& candidate_text) {
  const auto drows = parse_matrix(distance_text, "distance");
  NetworkData net;
  net.size = drows.size();
  net.distance = square(drows, net.size, "distance");
  net.flow = square(parse_matrix(flow_text, "flow"), net.size, "flow");
  for (std::size_t i = 0; i < net.size; ++i) {
    for (std::size_t j = 0; j < net.size; ++j) {
      if (net.distance_at(i, j) < 0.0) {
        throw FormatError("distance row " + std::to_string(i) + " column " + std::to_string(j) + ": negative");
      }
      if (net.flow_at(i, j) < 0.0) {
        throw FormatError("flow row " + std::to_string(i) + " column " + std::to_string(j) + ": negative");
      }
    }
    if (net.flow_at(i, i) != 0.0) {
      throw FormatError("flow row " + std::to_string(i) + " column " + std::to_string(i) + ": flow on the diagonal");
    }
  }
  std::istringstream in(candidate_text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long id = -1;
    try {
      id = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw FormatError("candidate list: not an id '" + tok + "'");
    if (id < 0 || static_cast<std::size_t>(id) >= net.size) {
      throw FormatError("candidate id " + tok + " out of range for " + std::to_string(net.size) + " nodes");
    }
    if (std::find(net.candidates.begin(), net.candidates.end(), id) != net.candidates.end()) {
      throw FormatError("candidate id " + tok + " listed twice");
    }
    net.candidates.push_back(static_cast<NodeId>(id));
  }
  return net;
}

NetworkData load_network(const std::filesystem::path& distance_file, const std::filesystem::path& flow_file,
                         const std::filesystem::path& candidate_file) {
  return parse_network(read_text_file(distance_file), read_text_file(flow_file), read_text_file(candidate_file));
}

Instance generate_instance(const NetworkData& net, const InstanceSpec& spec) {
  const double multiplier = capacity_multiplier(spec.capacity_class);
  if (spec.num_warehouses < 1 || spec.num_factories < 1 || spec.num_customers < 1) {
    throw ParameterError("instance needs at least one warehouse, factory and customer");
  }
  const auto nw = static_cast<std::size_t>(spec.num_warehouses);
  const std::size_t nfc = static_cast<std::size_t>(spec.num_factories) + static_cast<std::size_t>(spec.num_customers);
  if (nw > net.candidates.size()) {
    throw ParameterError("spec asks for " + std::to_string(nw) + " warehouses but the network has " +
                         std::to_string(net.candidates.size()) + " candidates");
  }
  const std::size_t parents = std::min(net.candidates.size(), std::max<std::size_t>(kParentWarehouses, nw));
  if (parents + nfc > net.size) {
    throw ParameterError("spec " + instance_name(spec) + " needs " + std::to_string(parents + nfc) +
                         " nodes but the network has " + std::to_string(net.size));
  }

  Rng parent_rng(Rng::derive(spec.seed, kParentDraw));
  const std::vector<NodeId> parent = sample(net.candidates, parents, parent_rng);
  Rng cost_rng(Rng::derive(spec.seed, kCostDraw));
  std::vector<double> parent_cost(parents);
  for (double& a : parent_cost) a = cost_rng.uniform(0.1, 0.3);

  std::vector<std::size_t> chosen(parents);
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  if (nw < parents) {
    Rng subset_rng(Rng::derive(spec.seed, kSubsetDraw));
    for (std::size_t i = 0; i < nw; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(subset_rng.below(parents - i));
      std::swap(chosen[i], chosen[j]);
    }
    chosen.resize(nw);
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) { return parent[a] < parent[b]; });

  std::vector<NodeId> rest;
  for (std::size_t i = 0; i < net.size; ++i) {
    if (std::find(parent.begin(), parent.end(), NodeId(i)) == parent.end()) rest.push_back(NodeId(i));
  }
  Rng node_rng(Rng::derive(spec.seed, kNodeDraw));
  const std::vector<NodeId> picked = sample(rest, nfc, node_rng);
  std::vector<NodeId> factories(picked.begin(), picked.begin() + spec.num_factories);
  std::vector<NodeId> customers(picked.begin() + spec.num_factories, picked.end());
  std::sort(factories.begin(), factories.end());
  std::sort(customers.begin(), customers.end());

  std::vector<NodeId> original;
  for (std::size_t c : chosen) original.push_back(parent[c]);
  original.insert(original.end(), factories.begin(), factories.end());
  original.insert(original.end(), customers.begin(), customers.end());

  InstanceData d;
  d.name = instance_name(spec);
  const std::size_t n = original.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Role role = i < nw ? Role::Warehouse : (i < nw + factories.size() ? Role::Factory : Role::Customer);
    Node node{NodeId(i), role, std::nullopt};
    if (!net.positions.empty()) node.position = net.positions[static_cast<std::size_t>(original[i])];
    d.nodes.push_back(node);
  }
  d.distance.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d.distance[i * n + j] = net.distance_at(static_cast<std::size_t>(original[i]), static_cast<std::size_t>(original[j]));
    }
  }
  double total = 0.0;
  std::vector<double> demand(n, 0.0);
  for (std::size_t f = nw; f < nw + factories.size(); ++f) {
    for (std::size_t c = nw + factories.size(); c < n; ++c) {
      const double q = net.flow_at(static_cast<std::size_t>(original[f]), static_cast<std::size_t>(original[c]));
      if (q <= 0.0) continue;
      d.flows.push_back({NodeId(f), NodeId(c), q});
      demand[f] += q;
      demand[c] += q;
      total += q;
    }
  }
  if (total <= 0.0) throw ParameterError("instance " + d.name + " (seed " + std::to_string(spec.seed) + ") has no flow");
  const double max_demand = *std::max_element(demand.begin(), demand.end());

  for (std::size_t i = 0; i < nw; ++i) d.warehouses.push_back({NodeId(i), multiplier * total, parent_cost[chosen[i]]});
  Rng vehicle_rng(Rng::derive(spec.seed, kVehicleDraw));
  d.vehicle_capacity = max_demand + vehicle_rng.uniform() * (total - max_demand);
  d.alpha = 0.001;
  d.beta = 1.0;
  return Instance(std::move(d));
}

NetworkData generate_synthetic_network(std::size_t nodes, std::size_t candidates, std::uint64_t seed,
                                       double flow_density) {
  if (candidates > nodes) {
    throw ParameterError(std::to_string(candidates) + " candidate warehouses exceed " + std::to_string(nodes) + " nodes");
  }
  if (!(flow_density >= 0.0 && flow_density <= 1.0)) throw ParameterError("flow density must lie in [0, 1]");
  NetworkData net;
  net.size = nodes;
  Rng rng(seed);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = rng.uniform(0.0, 1000.0);
    const double y = rng.uniform(0.0, 1000.0);
    net.positions.push_back({x, y});
  }
  net.distance.resize(nodes * nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      net.distance[i * nodes + j] = std::hypot(net.positions[i].x - net.positions[j].x,
                                               net.positions[i].y - net.positions[j].y);
    }
  }
  net.flow.assign(nodes * nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (i == j) continue;
      if (rng.uniform() < flow_density) net.flow[i * nodes + j] = rng.uniform(1.0, 100.0);
    }
  }
  std::vector<NodeId> all(nodes);
  std::iota(all.begin(), all.end(), NodeId{0});
  net.candidates = sample(all, candidates, rng);
  std::sort(net.candidates.begin(), net.candidates.end());
  return net;
}

}  // namespace wsps
