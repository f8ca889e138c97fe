#include "wsps/milp.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"

namespace wsps {

int MilpModel::find(std::string_view var) const {
  const auto it = index.find(std::string(var));
  return it == index.end() ? -1 : it->second;
}

std::size_t MilpModel::count_variables(std::string_view prefix) const {
  std::size_t n = 0;
  for (const auto& v : variables) n += std::string_view(v.name).substr(0, prefix.size()) == prefix;
  return n;
}

std::size_t MilpModel::count_rows(std::string_view family) const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.family == family;
  return n;
}

MilpVariableCounts expected_variable_counts(std::size_t factories, std::size_t customers, std::size_t warehouses,
                                            Variant variant) {
  const std::size_t nodes = factories + customers + warehouses;
  MilpVariableCounts c;
  c.x = nodes * nodes * warehouses;
  c.z = factories * customers * warehouses * warehouses;
  c.u = nodes * warehouses;
  c.v = nodes * warehouses;
  c.y = variant == Variant::WSPS_SA ? (factories + customers) * warehouses : 0;
  return c;
}

namespace {

std::string join(char tag, std::initializer_list<int> ids) {
  std::string s(1, tag);
  for (int id : ids) {
    s += '_';
    s += std::to_string(id);
  }
  return s;
}

class Builder {
 public:
  Builder(const Instance& inst, const VariantConfig& cfg) : inst_(inst), cfg_(cfg) {}

  MilpModel build() {
    const auto F = inst_.factories();
    const auto C = inst_.customers();
    const auto W = inst_.warehouses();
    const std::size_t n = inst_.size();
    const double qv = inst_.data().vehicle_capacity;
    const bool sa = cfg_.variant == Variant::WSPS_SA;
    model_.name = inst_.name();
    model_.big_m_factory = static_cast<double>(C.size());
    model_.big_m_customer = static_cast<double>(F.size());

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (NodeId m : W) add_var(x(int(i), int(j), m), true);
      }
    }
    for (NodeId i : F) {
      for (NodeId j : C) {
        for (NodeId m : W) {
          for (NodeId k : W) add_var(z(i, j, m, k), false);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (NodeId m : W) add_var(join('u', {int(i), m}), false);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (NodeId m : W) add_var(join('v', {int(i), m}), false);
    }
    if (sa) {
      for (auto side : {F, C}) {
        for (NodeId i : side) {
          for (NodeId m : W) add_var(join('y', {i, m}), true);
        }
      }
    }

    // objective
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = inst_.data().beta * inst_.distance(NodeId(i), NodeId(j));
        if (c == 0.0) continue;
        for (NodeId m : W) model_.objective.push_back({var(x(int(i), int(j), m)), c});
      }
    }
    for (NodeId i : F) {
      for (NodeId j : C) {
        const double q = flow(i, j);
        if (q == 0.0) continue;
        for (std::size_t ms = 0; ms < W.size(); ++ms) {
          for (NodeId k : W) {
            const double c = inst_.warehouse(int(ms)).unit_cost * q + inst_.data().alpha * inst_.distance(W[ms], k) * q;
            model_.objective.push_back({var(z(i, j, W[ms], k)), c});
          }
        }
      }
    }

    // (2) every positive flow routed once
    for (const Commodity& c : inst_.commodities()) {
      MilpRow r = row("c2", {c.factory, c.customer}, RowSense::Equal, 1.0);
      for (NodeId m : W) {
        for (NodeId k : W) term(r, z(c.factory, c.customer, m, k), 1.0);
      }
      push(std::move(r));
    }
    // (3) warehouse capacity
    for (std::size_t ms = 0; ms < W.size(); ++ms) {
      const NodeId m = W[ms];
      MilpRow r = row("c3", {m}, RowSense::LessEqual, inst_.warehouse(int(ms)).capacity);
      for (const Commodity& c : inst_.commodities()) {
        for (NodeId k : W) term(r, z(c.factory, c.customer, m, k), c.quantity);
        for (NodeId k : W) {
          if (k != m) term(r, z(c.factory, c.customer, k, m), c.quantity);
        }
      }
      push(std::move(r));
    }
    // (4) (5) visits
    for (auto side : {F, C}) {
      for (NodeId i : side) {
        if (inst_.demand(i) > 0.0) {
          MilpRow r = row("c4", {i}, RowSense::GreaterEqual, 1.0);
          for (std::size_t j = 0; j < n; ++j) {
            if (NodeId(j) == i) continue;
            for (NodeId m : W) term(r, x(i, int(j), m), 1.0);
          }
          push(std::move(r));
        }
      }
    }
    for (auto side : {F, C}) {
      for (NodeId i : side) {
        for (NodeId m : W) {
          MilpRow r = row("c5", {i, m}, RowSense::LessEqual, 1.0);
          for (std::size_t j = 0; j < n; ++j) {
            if (NodeId(j) != i) term(r, x(i, int(j), m), 1.0);
          }
          push(std::move(r));
        }
      }
    }
    // (6) flow conservation
    for (std::size_t i = 0; i < n; ++i) {
      for (NodeId m : W) {
        MilpRow r = row("c6", {int(i), m}, RowSense::Equal, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          term(r, x(int(i), int(j), m), 1.0);
          term(r, x(int(j), int(i), m), -1.0);
        }
        push(std::move(r));
      }
    }
    // (7) (8) flow only through linked warehouses
    for (NodeId i : F) {
      for (NodeId m : W) {
        MilpRow r = row("c7", {i, m}, RowSense::GreaterEqual, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          if (NodeId(j) != i) term(r, x(i, int(j), m), model_.big_m_factory);
        }
        for (NodeId j : C) {
          for (NodeId k : W) term(r, z(i, j, m, k), -1.0);
        }
        push(std::move(r));
      }
    }
    for (NodeId i : C) {
      for (NodeId m : W) {
        MilpRow r = row("c8", {i, m}, RowSense::GreaterEqual, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          if (NodeId(j) != i) term(r, x(i, int(j), m), model_.big_m_customer);
        }
        for (NodeId j : F) {
          for (NodeId k : W) term(r, z(j, i, k, m), -1.0);
        }
        push(std::move(r));
      }
    }
    // (9) no mixed tours, (10) no warehouse-to-warehouse legs
    for (NodeId m : W) {
      MilpRow r = row("c9", {m}, RowSense::Equal, 0.0);
      for (NodeId i : F) {
        for (NodeId j : C) {
          term(r, x(i, j, m), 1.0);
          term(r, x(j, i, m), 1.0);
        }
      }
      push(std::move(r));
    }
    for (NodeId m : W) {
      MilpRow r = row("c10", {m}, RowSense::Equal, 0.0);
      for (NodeId a : W) {
        for (NodeId b : W) term(r, x(a, b, m), 1.0);
      }
      push(std::move(r));
    }
    // (11) collection load
    for (std::size_t i = 0; i < n; ++i) {
      for (NodeId j : F) {
        if (NodeId(i) == j) continue;
        for (NodeId m : W) {
          MilpRow r = row("c11", {int(i), j, m}, RowSense::LessEqual, qv);
          term(r, join('u', {int(i), m}), 1.0);
          for (NodeId s : C) {
            const double q = flow(j, s);
            if (q == 0.0) continue;
            for (NodeId k : W) term(r, z(j, s, m, k), q);
          }
          term(r, x(int(i), j, m), qv);
          term(r, join('u', {j, m}), -1.0);
          push(std::move(r));
        }
      }
    }
    // (12) delivery load, decreasing along the tour
    for (NodeId i : C) {
      for (std::size_t j = 0; j < n; ++j) {
        if (NodeId(j) == i) continue;
        for (NodeId m : W) {
          MilpRow r = row("c12", {i, int(j), m}, RowSense::LessEqual, qv);
          term(r, join('v', {int(j), m}), 1.0);
          for (NodeId s : F) {
            const double q = flow(s, i);
            if (q == 0.0) continue;
            for (NodeId k : W) term(r, z(s, i, k, m), q);
          }
          term(r, x(i, int(j), m), qv);
          term(r, join('v', {i, m}), -1.0);
          push(std::move(r));
        }
      }
    }
    // (13) vehicle capacity
    for (auto side : {F, C}) {
      for (NodeId i : side) {
        for (NodeId m : W) {
          MilpRow r = row("c13", {i, m}, RowSense::LessEqual, qv);
          term(r, join('v', {i, m}), 1.0);
          term(r, join('u', {i, m}), 1.0);
          push(std::move(r));
        }
      }
    }

    if (sa) {
      for (auto side : {F, C}) {
        for (NodeId i : side) {
          MilpRow r = row("sa1", {i}, RowSense::Equal, 1.0);
          for (NodeId m : W) term(r, join('y', {i, m}), 1.0);
          push(std::move(r));
        }
      }
      for (auto side : {F, C}) {
        for (NodeId i : side) {
          for (NodeId m : W) {
            MilpRow r = row("sa2", {i, m}, RowSense::LessEqual, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
              if (NodeId(j) != i) term(r, x(i, int(j), m), 1.0);
            }
            term(r, join('y', {i, m}), -1.0);
            push(std::move(r));
          }
        }
      }
      for (NodeId i : F) {
        for (NodeId j : C) {
          for (NodeId m : W) {
            for (NodeId k : W) {
              MilpRow a = row("sa3", {i, j, m, k}, RowSense::LessEqual, 0.0);
              term(a, z(i, j, m, k), 1.0);
              term(a, join('y', {i, m}), -1.0);
              push(std::move(a));
              MilpRow b = row("sa4", {i, j, m, k}, RowSense::LessEqual, 0.0);
              term(b, z(i, j, m, k), 1.0);
              term(b, join('y', {j, k}), -1.0);
              push(std::move(b));
            }
          }
        }
      }
    }
    if (cfg_.variant == Variant::WSPS_WI) {
      for (NodeId i : F) {
        for (NodeId j : C) {
          for (NodeId m : W) {
            for (NodeId k : W) {
              if (m == k) continue;
              MilpRow r = row("wi", {i, j, m, k}, RowSense::Equal, 0.0);
              term(r, z(i, j, m, k), 1.0);
              push(std::move(r));
            }
          }
        }
      }
    }
    return std::move(model_);
  }

 private:
  static std::string x(int i, int j, int m) { return join('x', {i, j, m}); }
  static std::string z(int i, int j, int m, int k) { return join('z', {i, j, m, k}); }

  double flow(NodeId f, NodeId c) const {
    const auto k = inst_.find_commodity(f, c);
    return k >= 0 ? inst_.commodity(k).quantity : 0.0;
  }

  void add_var(std::string name, bool binary) {
    model_.index.emplace(name, static_cast<int>(model_.variables.size()));
    model_.variables.push_back({std::move(name), binary});
  }
  int var(const std::string& name) const { return model_.index.at(name); }

  static MilpRow row(const char* family, std::initializer_list<int> ids, RowSense sense, double rhs) {
    MilpRow r;
    r.family = family;
    r.name = family;
    for (int id : ids) r.name += "_" + std::to_string(id);
    r.sense = sense;
    r.rhs = rhs;
    return r;
  }

  // Coefficients of a repeated variable are merged.
  void term(MilpRow& r, const std::string& name, double coef) {
    const int v = var(name);
    for (LinearTerm& t : r.terms) {
      if (t.var == v) {
        t.coef += coef;
        return;
      }
    }
    r.terms.push_back({v, coef});
  }

  void push(MilpRow r) {
    std::erase_if(r.terms, [](const LinearTerm& t) { return t.coef == 0.0; });
    model_.rows.push_back(std::move(r));
  }

  const Instance& inst_;
  const VariantConfig& cfg_;
  MilpModel model_;
};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Appends terms, breaking lines before they grow past a solver-friendly width.
void write_terms(std::string& out, const MilpModel& model, const std::vector<LinearTerm>& terms, std::size_t& width) {
  if (terms.empty()) {
    const std::string piece = " 0 " + model.variables.front().name;
    out += piece;
    width += piece.size();
    return;
  }
  for (const LinearTerm& t : terms) {
    std::string piece = t.coef < 0.0 ? " - " : " + ";
    piece += number(std::abs(t.coef)) + " " + model.variables[static_cast<std::size_t>(t.var)].name;
    if (width + piece.size() > 200) {
      out += "\n ";
      width = 1;
    }
    out += piece;
    width += piece.size();
  }
}

}  // namespace

MilpModel build_milp(const Instance& inst, const VariantConfig& cfg) { return Builder(inst, cfg).build(); }

std::string milp_to_lp_text(const MilpModel& model) {
  std::string out = "\\ model " + model.name + "\n";
  out += "Minimize\n obj:";
  std::size_t width = 5;
  write_terms(out, model, model.objective, width);
  out += "\nSubject To\n";
  for (const MilpRow& r : model.rows) {
    out += " " + r.name + ":";
    width = r.name.size() + 2;
    write_terms(out, model, r.terms, width);
    out += r.sense == RowSense::LessEqual ? " <= " : r.sense == RowSense::GreaterEqual ? " >= " : " = ";
    out += number(r.rhs) + "\n";
  }
  out += "Binaries\n";
  for (const MilpVariable& v : model.variables) {
    if (v.binary) out += " " + v.name + "\n";
  }
  out += "End\n";
  return out;
}

MilpExport export_milp(const Instance& inst, const VariantConfig& cfg) {
  MilpExport e{build_milp(inst, cfg), {}};
  e.lp_text = milp_to_lp_text(e.model);
  return e;
}

MilpValues solution_to_milp_values(const Instance& inst, const Solution& sol, const VariantConfig& cfg) {
  MilpValues vals;
  auto set = [&](const std::string& name, double v) { vals[name] = v; };
  for (const Route& r : sol.routes) {
    if (r.visits.empty()) continue;
    const auto loads = route_load_profile(inst, r, sol);
    NodeId prev = r.warehouse;
    for (std::size_t s = 0; s < r.visits.size(); ++s) {
      const NodeId node = r.visits[s].node;
      set(join('x', {prev, node, r.warehouse}), 1.0);
      set(join(r.kind == RouteKind::Collection ? 'u' : 'v', {node, r.warehouse}), loads[s]);
      prev = node;
    }
    set(join('x', {prev, r.warehouse, r.warehouse}), 1.0);
  }
  for (std::size_t k = 0; k < sol.assignment.size(); ++k) {
    const Commodity& c = inst.commodity(static_cast<CommodityId>(k));
    const WarehousePair& p = sol.assignment[k];
    if (p.collection == kNoNode || p.delivery == kNoNode) continue;
    set(join('z', {c.factory, c.customer, p.collection, p.delivery}), 1.0);
  }
  if (cfg.variant == Variant::WSPS_SA) {
    std::vector<NodeId> served(inst.size(), kNoNode);
    for (const Route& r : sol.routes) {
      for (const SubNode& s : r.visits) served[static_cast<std::size_t>(s.node)] = r.warehouse;
    }
    for (auto side : {inst.factories(), inst.customers()}) {
      for (NodeId i : side) {
        const NodeId at = served[static_cast<std::size_t>(i)] == kNoNode ? inst.warehouses().front()
                                                                          : served[static_cast<std::size_t>(i)];
        set(join('y', {i, at}), 1.0);
      }
    }
  }
  // Fill the remaining variables with zero so the assignment is complete.
  const MilpModel shape = build_milp(inst, cfg);
  for (const MilpVariable& v : shape.variables) vals.emplace(v.name, 0.0);
  return vals;
}

MilpValues parse_milp_values(const std::string& text) {
  MilpValues vals;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    double v = 0.0;
    std::string extra;
    if (!(ls >> v) || (ls >> extra)) {
      throw FormatError("values line " + std::to_string(lineno) + ": expected '<name> <value>'");
    }
    if (!vals.emplace(name, v).second) {
      throw FormatError("values line " + std::to_string(lineno) + ": duplicate variable " + name);
    }
  }
  return vals;
}

std::string milp_values_to_text(const MilpModel& model, const MilpValues& values) {
  std::string out;
  for (const MilpVariable& v : model.variables) {
    const auto it = values.find(v.name);
    out += v.name + " " + number(it == values.end() ? 0.0 : it->second) + "\n";
  }
  return out;
}

std::string Certification::summary() const {
  std::ostringstream os;
  for (const RowCheck& r : rows) {
    if (r.violated) os << r.name << ": activity " << number(r.activity) << " vs rhs " << number(r.rhs) << '\n';
  }
  return os.str();
}

Certification certify_milp_solution(const MilpModel& model, const MilpValues& values, double tolerance) {
  std::vector<double> x(model.variables.size(), 0.0);
  std::vector<char> seen(model.variables.size(), 0);
  for (const auto& [name, v] : values) {
    const int idx = model.find(name);
    if (idx < 0) throw AssignmentError("value for unknown variable " + name);
    x[static_cast<std::size_t>(idx)] = v;
    seen[static_cast<std::size_t>(idx)] = 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw AssignmentError("no value for variable " + model.variables[i].name);
  }

  Certification cert;
  for (const LinearTerm& t : model.objective) cert.objective += t.coef * x[static_cast<std::size_t>(t.var)];
  for (const MilpRow& r : model.rows) {
    RowCheck c{r.name, r.family, 0.0, r.rhs, 0.0, false};
    for (const LinearTerm& t : r.terms) c.activity += t.coef * x[static_cast<std::size_t>(t.var)];
    switch (r.sense) {
      case RowSense::LessEqual: c.slack = r.rhs - c.activity; break;
      case RowSense::GreaterEqual: c.slack = c.activity - r.rhs; break;
      case RowSense::Equal: c.slack = c.activity == r.rhs ? 0.0 : -std::abs(c.activity - r.rhs); break;
    }
    c.violated = c.slack < -tolerance;
    cert.violations += c.violated;
    cert.rows.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const MilpVariable& v = model.variables[i];
    if (x[i] < -tolerance) {
      cert.rows.push_back({v.name, "bound", x[i], 0.0, x[i], true});
      ++cert.violations;
    }
    if (v.binary && std::min(std::abs(x[i]), std::abs(x[i] - 1.0)) > tolerance) {
      cert.rows.push_back({v.name, "binary", x[i], 1.0, -std::min(std::abs(x[i]), std::abs(x[i] - 1.0)), true});
      ++cert.violations;
    }
  }
  return cert;
}

}  // namespace wsps
