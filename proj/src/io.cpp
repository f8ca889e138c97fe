#include "wsps/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "json_detail.hpp"
#include "wsps/error.hpp"

namespace wsps {
namespace detail {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

void check_version(const json& doc, int expected, const char* what) {
  if (!doc.is_object()) throw FormatError(std::string(what) + ": document is not an object");
  if (!doc.contains("version")) throw FormatError(std::string(what) + ": missing 'version'");
  const auto& v = doc.at("version");
  if (!v.is_number_integer() || v.get<int>() != expected) {
    throw FormatError(std::string(what) + ": unsupported version " + v.dump() + " (expected " +
                      std::to_string(expected) + ")");
  }
}

template <class T>
T required(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) throw FormatError(std::string(what) + ": missing '" + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string(what) + ": field '" + key + "': " + e.what());
  }
}

template double required<double>(const json&, const char*, const char*);
template int required<int>(const json&, const char*, const char*);
template std::string required<std::string>(const json&, const char*, const char*);
template std::uint64_t required<std::uint64_t>(const json&, const char*, const char*);

json instance_to_json(const Instance& inst) {
  const InstanceData& d = inst.data();
  json doc;
  doc["format"] = "wsps-instance";
  doc["version"] = kInstanceFormatVersion;
  doc["name"] = d.name;
  json nodes = json::array();
  for (const Node& node : d.nodes) {
    json rec;
    rec["id"] = node.id;
    rec["role"] = std::string(to_string(node.role));
    if (node.position) {
      rec["x"] = node.position->x;
      rec["y"] = node.position->y;
    }
    nodes.push_back(std::move(rec));
  }
  doc["nodes"] = std::move(nodes);
  const std::size_t n = d.nodes.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(d.distance[i * n + j]);
    rows.push_back(std::move(row));
  }
  doc["distance"] = std::move(rows);
  json flows = json::array();
  for (const Flow& f : d.flows) flows.push_back(json::array({f.from, f.to, f.quantity}));
  doc["flows"] = std::move(flows);
  json whs = json::array();
  for (const WarehouseSpec& w : d.warehouses) {
    whs.push_back(json{{"id", w.id}, {"capacity", w.capacity}, {"unit_cost", w.unit_cost}});
  }
  doc["warehouses"] = std::move(whs);
  doc["vehicle_capacity"] = d.vehicle_capacity;
  doc["alpha"] = d.alpha;
  doc["beta"] = d.beta;
  return doc;
}

Instance instance_from_json(const json& doc) {
  constexpr const char* what = "instance";
  check_version(doc, kInstanceFormatVersion, what);
  InstanceData d;
  if (doc.contains("name")) d.name = required<std::string>(doc, "name", what);
  if (!doc.contains("nodes") || !doc.at("nodes").is_array()) throw FormatError("instance: 'nodes' must be an array");
  for (const json& rec : doc.at("nodes")) {
    Node node;
    node.id = required<int>(rec, "id", "instance node");
    node.role = role_from_string(required<std::string>(rec, "role", "instance node"));
    if (rec.contains("x") || rec.contains("y")) {
      node.position = Point{required<double>(rec, "x", "instance node"), required<double>(rec, "y", "instance node")};
    }
    d.nodes.push_back(node);
  }
  const std::size_t n = d.nodes.size();
  if (!doc.contains("distance") || !doc.at("distance").is_array()) {
    throw FormatError("instance: 'distance' must be an array of rows");
  }
  const json& rows = doc.at("distance");
  if (rows.size() != n) {
    throw FormatError("instance: distance has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  }
  d.distance.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw FormatError("instance: distance row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (const json& v : row) {
      if (!v.is_number()) throw FormatError("instance: non-numeric distance in row " + std::to_string(i));
      d.distance.push_back(v.get<double>());
    }
  }
  if (doc.contains("flows")) {
    for (const json& t : doc.at("flows")) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() || !t[2].is_number()) {
        throw FormatError("instance: flow entries must be [factory, customer, quantity]");
      }
      d.flows.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    }
  }
  if (!doc.contains("warehouses") || !doc.at("warehouses").is_array()) {
    throw FormatError("instance: 'warehouses' must be an array");
  }
  for (const json& rec : doc.at("warehouses")) {
    d.warehouses.push_back({required<int>(rec, "id", "instance warehouse"),
                            required<double>(rec, "capacity", "instance warehouse"),
                            required<double>(rec, "unit_cost", "instance warehouse")});
  }
  d.vehicle_capacity = required<double>(doc, "vehicle_capacity", what);
  d.alpha = required<double>(doc, "alpha", what);
  d.beta = required<double>(doc, "beta", what);
  return Instance(std::move(d));
}

json solution_to_json(const Instance& inst, const Solution& sol) {
  auto pair_of = [&](CommodityId k) {
    if (k < 0 || static_cast<std::size_t>(k) >= inst.commodities().size()) {
      throw ModelError("solution references unknown commodity id " + std::to_string(k));
    }
    const Commodity& c = inst.commodity(k);
    return json::array({c.factory, c.customer});
  };
  json doc;
  doc["format"] = "wsps-solution";
  doc["version"] = kSolutionFormatVersion;
  json routes = json::array();
  for (const Route& r : sol.routes) {
    json visits = json::array();
    for (const SubNode& s : r.visits) {
      json ks = json::array();
      for (CommodityId k : s.commodities) ks.push_back(pair_of(k));
      visits.push_back(json{{"node", s.node}, {"commodities", std::move(ks)}});
    }
    routes.push_back(json{{"warehouse", r.warehouse}, {"kind", std::string(to_string(r.kind))}, {"visits", std::move(visits)}});
  }
  doc["routes"] = std::move(routes);
  json assignment = json::array();
  for (std::size_t k = 0; k < sol.assignment.size(); ++k) {
    const auto pair = pair_of(static_cast<CommodityId>(k));
    assignment.push_back(json{{"factory", pair[0]},
                              {"customer", pair[1]},
                              {"collection", sol.assignment[k].collection},
                              {"delivery", sol.assignment[k].delivery}});
  }
  doc["assignment"] = std::move(assignment);
  return doc;
}

Solution solution_from_json(const Instance& inst, const json& doc) {
  constexpr const char* what = "solution";
  check_version(doc, kSolutionFormatVersion, what);
  auto commodity_of = [&](const json& pair) {
    if (!pair.is_array() || pair.size() != 2) throw FormatError("solution: commodity must be [factory, customer]");
    const NodeId f = pair[0].get<int>();
    const NodeId c = pair[1].get<int>();
    const CommodityId k = inst.find_commodity(f, c);
    if (k < 0) {
      throw ModelError("solution references commodity (" + std::to_string(f) + "," + std::to_string(c) +
                       ") absent from the instance");
    }
    return k;
  };
  Solution sol;
  sol.assignment.assign(inst.commodities().size(), WarehousePair{});
  if (doc.contains("routes")) {
    for (const json& r : doc.at("routes")) {
      Route route;
      route.warehouse = required<int>(r, "warehouse", "solution route");
      route.kind = route_kind_from_string(required<std::string>(r, "kind", "solution route"));
      if (r.contains("visits")) {
        for (const json& v : r.at("visits")) {
          SubNode s;
          s.node = required<int>(v, "node", "solution visit");
          s.warehouse = route.warehouse;
          if (v.contains("commodities")) {
            for (const json& pair : v.at("commodities")) s.commodities.push_back(commodity_of(pair));
          }
          route.visits.push_back(std::move(s));
        }
      }
      sol.routes.push_back(std::move(route));
    }
  }
  if (doc.contains("assignment")) {
    for (const json& a : doc.at("assignment")) {
      const CommodityId k = commodity_of(json::array({required<int>(a, "factory", "solution assignment"),
                                                      required<int>(a, "customer", "solution assignment")}));
      sol.assignment[static_cast<std::size_t>(k)] = {required<int>(a, "collection", "solution assignment"),
                                                     required<int>(a, "delivery", "solution assignment")};
    }
  }
  return sol;
}

json cost_to_json(const CostBreakdown& cost) {
  return json{{"variable_cost", cost.variable_cost},
              {"local_tour_cost", cost.local_tour_cost},
              {"inter_warehouse_cost", cost.inter_warehouse_cost},
              {"total", cost.total}};
}

}  // namespace detail

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string instance_to_text(const Instance& inst) { return detail::instance_to_json(inst).dump(1) + "\n"; }

Instance instance_from_text(const std::string& text) {
  return detail::instance_from_json(detail::parse_json(text, "instance"));
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_text(read_text_file(path)); }

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, instance_to_text(inst));
}

std::string solution_to_text(const Instance& inst, const Solution& sol) {
  return detail::solution_to_json(inst, sol).dump(1) + "\n";
}

Solution solution_from_text(const Instance& inst, const std::string& text) {
  return detail::solution_from_json(inst, detail::parse_json(text, "solution"));
}

Solution read_solution(const Instance& inst, const std::filesystem::path& path) {
  return solution_from_text(inst, read_text_file(path));
}

void write_solution(const Instance& inst, const Solution& sol, const std::filesystem::path& path) {
  write_text_file(path, solution_to_text(inst, sol));
}

}  // namespace wsps
