#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "wsps/error.hpp"
#include "wsps/instance_gen.hpp"
#include "wsps/io.hpp"
#include "wsps/validate.hpp"

using namespace wsps;

namespace {

std::string matrix_text(std::size_t rows, std::size_t cols, double off_diagonal) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out << (i == j ? 0.0 : off_diagonal) << (j + 1 < cols ? " " : "\n");
  }
  return out.str();
}

std::string ids_text(std::size_t count) {
  std::string s;
  for (std::size_t i = 0; i < count; ++i) s += std::to_string(i * 5) + "\n";
  return s;
}

std::string error_of(const std::string& d, const std::string& f, const std::string& c) {
  try {
    parse_network(d, f, c);
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

InstanceSpec spec(int w, int f, int c, char cls, std::uint64_t seed) {
  InstanceSpec s;
  s.num_warehouses = w;
  s.num_factories = f;
  s.num_customers = c;
  s.capacity_class = cls;
  s.seed = seed;
  return s;
}

bool same_point(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

}  // namespace

TEST_CASE("network files") {
  const auto dir = std::filesystem::temp_directory_path() / "wsps_network_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "d.txt", matrix_text(81, 81, 12.5));
  write_text_file(dir / "f.txt", matrix_text(81, 81, 3.0));
  write_text_file(dir / "c.txt", ids_text(16));
  const NetworkData net = load_network(dir / "d.txt", dir / "f.txt", dir / "c.txt");
  CHECK(net.size == 81);
  CHECK(net.candidates.size() == 16);
  CHECK(net.flow_at(3, 4) == 3.0);
  CHECK_THROWS_AS(load_network(dir / "missing.txt", dir / "f.txt", dir / "c.txt"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("network parse errors") {
  const std::string d = matrix_text(81, 81, 1.0);
  const std::string f = matrix_text(81, 81, 1.0);
  const std::string shape = error_of(matrix_text(81, 80, 1.0), f, ids_text(16));
  CHECK(shape.find("row 0") != std::string::npos);
  CHECK(shape.find("columns") != std::string::npos);
  CHECK(error_of(d, matrix_text(80, 81, 1.0), ids_text(16)).find("rows") != std::string::npos);
  CHECK(error_of(d, f, "3\n99\n").find("99") != std::string::npos);
  CHECK(error_of(d, f, "3\n3\n").find("twice") != std::string::npos);

  CHECK(error_of("0 -1\n1 0\n", "0 0\n0 0\n", "0\n") == "distance row 0 column 1: negative");
  CHECK(error_of("0 1\n1 0\n", "0 0\n0 4\n", "0\n") == "flow row 1 column 1: flow on the diagonal");
  CHECK(error_of("0 x\n1 0\n", "0 0\n0 0\n", "0\n").find("row 0 column 1") != std::string::npos);
}

TEST_CASE("capacity classes and fixed costs") {
  const NetworkData net = generate_synthetic_network(81, 16, 4);
  for (char cls : {'C', 'M', 'S', 'L'}) {
    const Instance inst = generate_instance(net, spec(7, 5, 10, cls, 2));
    CHECK(inst.name() == std::string("7-5-10-") + cls);
    CHECK(validate_instance(inst).ok());
    CHECK(inst.data().alpha == 0.001);
    CHECK(inst.data().beta == 1.0);
    for (const auto& w : inst.data().warehouses) {
      CHECK(w.capacity == doctest::Approx(capacity_multiplier(cls) * inst.total_demand()).epsilon(1e-12));
      CHECK(w.unit_cost >= 0.1);
      CHECK(w.unit_cost <= 0.3);
    }
    double max_demand = 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) max_demand = std::max(max_demand, inst.demand(NodeId(i)));
    CHECK(inst.data().vehicle_capacity >= max_demand);
    CHECK(inst.data().vehicle_capacity <= inst.total_demand());
  }
  const Instance m = generate_instance(net, spec(7, 5, 10, 'M', 2));
  CHECK(m.data().warehouses[0].capacity == doctest::Approx(0.5 * m.total_demand()));
  CHECK_THROWS_AS(capacity_multiplier('X'), ParameterError);
}

TEST_CASE("flows come from the network unmodified") {
  const NetworkData net = generate_synthetic_network(30, 10, 9);
  const Instance inst = generate_instance(net, spec(5, 4, 6, 'C', 1));
  auto original = [&](NodeId id) {
    for (std::size_t k = 0; k < net.size; ++k)
      if (same_point(net.positions[k], *inst.data().nodes[std::size_t(id)].position)) return k;
    return net.size;
  };
  std::size_t expected = 0;
  for (NodeId f : inst.factories())
    for (NodeId c : inst.customers()) expected += net.flow_at(original(f), original(c)) > 0.0;
  CHECK(inst.commodities().size() == expected);
  for (const Commodity& k : inst.commodities()) {
    CHECK(k.quantity == net.flow_at(original(k.factory), original(k.customer)));
  }
  for (NodeId w : inst.warehouses()) {
    const auto& cand = net.candidates;
    CHECK(std::find(cand.begin(), cand.end(), NodeId(original(w))) != cand.end());
  }
}

TEST_CASE("five warehouses are drawn from the seven") {
  const NetworkData net = generate_synthetic_network(81, 16, 21);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance seven = generate_instance(net, spec(7, 5, 10, 'S', seed));
    const Instance five = generate_instance(net, spec(5, 5, 10, 'S', seed));
    for (int s = 0; s < 5; ++s) {
      const Point p = *five.data().nodes[std::size_t(five.warehouses()[std::size_t(s)])].position;
      bool found = false;
      for (int t = 0; t < 7; ++t) {
        const Point q = *seven.data().nodes[std::size_t(seven.warehouses()[std::size_t(t)])].position;
        if (same_point(p, q)) {
          found = true;
          CHECK(five.warehouse(s).unit_cost == seven.warehouse(t).unit_cost);
        }
      }
      CHECK(found);
    }
    for (std::size_t i = 5; i < five.size(); ++i) {
      CHECK(same_point(*five.data().nodes[i].position, *seven.data().nodes[i + 2].position));
    }
    CHECK(five.commodities().size() == seven.commodities().size());
  }
}

TEST_CASE("generation is deterministic") {
  const NetworkData a = generate_synthetic_network(40, 16, 77);
  const NetworkData b = generate_synthetic_network(40, 16, 77);
  CHECK(a.distance == b.distance);
  CHECK(a.flow == b.flow);
  CHECK(instance_to_text(generate_instance(a, spec(7, 5, 10, 'C', 3))) ==
        instance_to_text(generate_instance(b, spec(7, 5, 10, 'C', 3))));
  CHECK(instance_to_text(generate_instance(a, spec(7, 5, 10, 'C', 3))) !=
        instance_to_text(generate_instance(a, spec(7, 5, 10, 'C', 4))));
}

TEST_CASE("synthetic network shape") {
  const NetworkData one = generate_synthetic_network(1, 1, 0);
  CHECK(one.size == 1);
  CHECK(one.flow == std::vector<double>{0.0});
  CHECK_THROWS_AS(generate_synthetic_network(5, 6, 0), ParameterError);

  const NetworkData net = generate_synthetic_network(81, 16, 5);
  CHECK(net.candidates.size() == 16);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      CHECK(net.distance_at(i, j) == net.distance_at(j, i));
      for (std::size_t k = 0; k < 20; ++k) CHECK(net.distance_at(i, j) <= net.distance_at(i, k) + net.distance_at(k, j) + 1e-9);
    }
}

TEST_CASE("spec too large for the network") {
  const NetworkData net = generate_synthetic_network(12, 7, 5);
  CHECK_THROWS_AS(generate_instance(net, spec(7, 3, 3, 'C', 0)), ParameterError);
  CHECK_THROWS_AS(generate_instance(net, spec(8, 1, 1, 'C', 0)), ParameterError);
}
