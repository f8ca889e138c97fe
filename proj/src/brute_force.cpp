#include "wsps/brute_force.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"

namespace wsps {

namespace {

constexpr int kMaxCommodities = 16;
constexpr int kMaxSlots = 6;
constexpr int kMaxSideNodes = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Action {
  int k;
  bool collection;
  int slot;
};

struct Frame {
  std::array<std::int8_t, kMaxCommodities> m;
  std::array<std::int8_t, kMaxCommodities> n;
  std::array<double, kMaxSlots> inbound{};
  std::array<double, kMaxSlots * 2 * kMaxSideNodes> subload{};
  std::array<std::uint32_t, kMaxSlots> colmask{};
  std::array<std::uint32_t, kMaxSlots> delmask{};
  double pair = 0.0;
};

struct Best {
  double cost = kInf;
  Frame frame{};
  std::uint64_t leaves = 0;
  std::uint64_t warehouse_prunes = 0;
  std::uint64_t vehicle_prunes = 0;
};

// Optimal split of one (warehouse, kind) into routes for every commodity mask.
class RouteTable {
 public:
  RouteTable(const Instance& inst, int slot, bool collection) : inst_(inst), slot_(slot), collection_(collection) {
    const auto side = collection ? inst.factories() : inst.customers();
    nodes_.assign(side.begin(), side.end());
    const std::size_t nk = inst.commodities().size();
    for (std::size_t k = 0; k < nk; ++k) {
      const Commodity& c = inst.commodity(static_cast<CommodityId>(k));
      const NodeId node = collection ? c.factory : c.customer;
      owner_.push_back(static_cast<int>(std::find(nodes_.begin(), nodes_.end(), node) - nodes_.begin()));
    }
    tsp_.assign(std::size_t{1} << nodes_.size(), -1.0);
    tour_.assign(tsp_.size(), {});
    cost_.assign(std::size_t{1} << nk, kInf);
    for (std::uint32_t mask = 0; mask < cost_.size(); ++mask) cost_[mask] = partition(mask, nullptr);
  }

  double cost(std::uint32_t mask) const { return cost_[mask]; }
  int owner(int k) const { return owner_[static_cast<std::size_t>(k)]; }

  std::vector<std::vector<NodeId>> routes(std::uint32_t mask) {
    std::vector<std::vector<NodeId>> out;
    partition(mask, &out);
    return out;
  }

 private:
  double tour(std::uint32_t set) {
    auto& memo = tsp_[set];
    if (memo >= 0.0) return memo;
    const NodeId depot = inst_.warehouses()[static_cast<std::size_t>(slot_)];
    std::vector<NodeId> perm;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (set >> i & 1U) perm.push_back(nodes_[i]);
    }
    double best = kInf;
    do {
      double len = inst_.distance(depot, perm.front());
      for (std::size_t i = 1; i < perm.size(); ++i) len += inst_.distance(perm[i - 1], perm[i]);
      len += inst_.distance(perm.back(), depot);
      if (len < best) {
        best = len;
        tour_[set] = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    memo = best;
    return best;
  }

  double partition(std::uint32_t mask, std::vector<std::vector<NodeId>>* out) {
    std::vector<double> load(nodes_.size(), 0.0);
    std::uint32_t present = 0;
    for (std::size_t k = 0; k < owner_.size(); ++k) {
      if (mask >> k & 1U) {
        load[static_cast<std::size_t>(owner_[k])] += inst_.commodity(static_cast<CommodityId>(k)).quantity;
        present |= 1U << owner_[k];
      }
    }
    const double qv = inst_.data().vehicle_capacity + kCapacityTolerance;
    const std::size_t full = std::size_t{1} << nodes_.size();
    std::vector<double> block_load(full, 0.0);
    for (std::uint32_t s = 1; s < full; ++s) {
      const int low = __builtin_ctz(s);
      block_load[s] = block_load[s & (s - 1)] + load[static_cast<std::size_t>(low)];
    }
    std::vector<double> best(full, kInf);
    std::vector<std::uint32_t> choice(full, 0);
    best[0] = 0.0;
    // Subsets of `present` in increasing order; each block holds the lowest node.
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = present; s != 0; s = (s - 1) & present) subsets.push_back(s);
    std::reverse(subsets.begin(), subsets.end());
    for (std::uint32_t s : subsets) {
      const std::uint32_t low = s & (~s + 1);
      const std::uint32_t rest = s ^ low;
      for (std::uint32_t t = rest;; t = (t - 1) & rest) {
        const std::uint32_t block = t | low;
        if (block_load[block] <= qv && best[s ^ block] < kInf) {
          const double c = best[s ^ block] + inst_.data().beta * tour(block);
          if (c < best[s]) {
            best[s] = c;
            choice[s] = block;
          }
        }
        if (t == 0) break;
      }
    }
    if (out && best[present] < kInf) {
      for (std::uint32_t s = present; s != 0; s ^= choice[s]) out->push_back(tour_[choice[s]]);
    }
    return best[present];
  }

  const Instance& inst_;
  int slot_;
  bool collection_;
  std::vector<NodeId> nodes_;
  std::vector<int> owner_;
  std::vector<double> tsp_;
  std::vector<std::vector<NodeId>> tour_;
  std::vector<double> cost_;
};

class Enumerator {
 public:
  Enumerator(const Instance& inst, const VariantConfig& cfg, const OracleLimits& limits) : inst_(inst) {
    const int nf = static_cast<int>(inst.factories().size());
    const int nc = static_cast<int>(inst.customers().size());
    slots_ = static_cast<int>(inst.warehouse_count());
    const int nk = static_cast<int>(inst.commodities().size());
    if (nf + nc > limits.max_nodes || slots_ > limits.max_warehouses) {
      throw OracleSizeError("instance has " + std::to_string(nf + nc) + " factories/customers and " +
                            std::to_string(slots_) + " warehouses; oracle limit is " +
                            std::to_string(limits.max_nodes) + " and " + std::to_string(limits.max_warehouses));
    }
    if (nk > kMaxCommodities || slots_ > kMaxSlots || nf > kMaxSideNodes || nc > kMaxSideNodes) {
      throw OracleSizeError("instance exceeds the oracle's fixed tables (" + std::to_string(kMaxCommodities) +
                            " commodities, " + std::to_string(kMaxSlots) + " warehouses, " +
                            std::to_string(kMaxSideNodes) + " nodes per side)");
    }
    if (slots_ == 0 && nk > 0) throw InfeasibleError("instance has flow but no warehouse");

    const Variant v = cfg.variant;
    if (v == Variant::WSPS_SA) {
      std::vector<NodeId> order;
      for (auto side : {inst.factories(), inst.customers()}) {
        for (NodeId id : side) {
          if (!inst.commodities_of(id).empty()) order.push_back(id);
        }
      }
      for (NodeId id : order) {
        std::vector<std::vector<Action>> opts;
        for (int s = 0; s < slots_; ++s) {
          std::vector<Action> acts;
          for (CommodityId k : inst.commodities_of(id)) acts.push_back({k, inst.role(id) == Role::Factory, s});
          opts.push_back(std::move(acts));
        }
        units_.push_back(std::move(opts));
      }
    } else {
      for (int k = 0; k < nk; ++k) {
        std::vector<std::vector<Action>> opts;
        for (int m = 0; m < slots_; ++m) {
          for (int n = 0; n < slots_; ++n) {
            if (v == Variant::WSPS_WI && m != n) continue;
            opts.push_back({{k, true, m}, {k, false, n}});
          }
        }
        units_.push_back(std::move(opts));
      }
    }
    double leaves = 1.0;
    for (const auto& u : units_) leaves *= static_cast<double>(u.size());
    if (leaves > limits.max_leaves) {
      std::ostringstream os;
      os << "oracle would enumerate " << leaves << " assignments; limit is " << limits.max_leaves;
      throw OracleSizeError(os.str());
    }

    for (int s = 0; s < slots_; ++s) {
      tables_.emplace_back(inst, s, true);
      tables_.emplace_back(inst, s, false);
    }
    const auto nf_side = inst.factories().size();
    for (int k = 0; k < nk; ++k) {
      const Commodity& c = inst.commodity(k);
      quantity_.push_back(c.quantity);
      factory_index_.push_back(tables_.empty() ? 0 : tables_[0].owner(k));
      customer_index_.push_back(tables_.empty() ? 0 : static_cast<int>(nf_side) + tables_[1].owner(k));
    }
  }

  Best run(bool parallel) {
    Frame root{};
    root.m.fill(-1);
    root.n.fill(-1);
    if (units_.empty()) {
      Best b;
      b.cost = 0.0;
      b.frame = root;
      b.leaves = 1;
      return b;
    }
    const auto& top = units_.front();
    const int count = static_cast<int>(top.size());
    std::vector<Best> branch(top.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int o = 0; o < count; ++o) {
      Frame f = root;
      if (apply(f, top[static_cast<std::size_t>(o)], branch[static_cast<std::size_t>(o)])) {
        dfs(f, 1, branch[static_cast<std::size_t>(o)]);
      }
    }
    Best out;
    for (const Best& b : branch) {
      out.leaves += b.leaves;
      out.warehouse_prunes += b.warehouse_prunes;
      out.vehicle_prunes += b.vehicle_prunes;
      if (b.cost < out.cost) {
        out.cost = b.cost;
        out.frame = b.frame;
      }
    }
    return out;
  }

  Solution build(const Frame& f) {
    Solution sol;
    const std::size_t nk = quantity_.size();
    sol.assignment.resize(nk);
    for (std::size_t k = 0; k < nk; ++k) {
      sol.assignment[k] = {inst_.warehouses()[static_cast<std::size_t>(f.m[k])],
                           inst_.warehouses()[static_cast<std::size_t>(f.n[k])]};
    }
    for (int s = 0; s < slots_; ++s) {
      const NodeId depot = inst_.warehouses()[static_cast<std::size_t>(s)];
      for (const bool collection : {true, false}) {
        const std::uint32_t mask = collection ? f.colmask[static_cast<std::size_t>(s)] : f.delmask[static_cast<std::size_t>(s)];
        for (const auto& tour : table(s, collection).routes(mask)) {
          Route r{depot, collection ? RouteKind::Collection : RouteKind::Delivery, {}};
          for (NodeId node : tour) {
            SubNode sub{node, depot, {}};
            for (CommodityId k : inst_.commodities_of(node)) {
              const int at = collection ? f.m[static_cast<std::size_t>(k)] : f.n[static_cast<std::size_t>(k)];
              if (at == s) sub.commodities.push_back(k);
            }
            r.visits.push_back(std::move(sub));
          }
          sol.routes.push_back(std::move(r));
        }
      }
    }
    return sol;
  }

  std::string infeasibility(const Best& b) const {
    std::ostringstream os;
    os << "no feasible assignment: ";
    if (b.warehouse_prunes > 0 && b.vehicle_prunes == 0) {
      os << "warehouse capacity is binding (total demand " << inst_.total_demand() << ", capacities";
      for (int s = 0; s < slots_; ++s) os << ' ' << inst_.warehouse(s).capacity;
      os << ')';
    } else if (b.vehicle_prunes > 0 && b.warehouse_prunes == 0) {
      os << "vehicle capacity " << inst_.data().vehicle_capacity << " is binding";
    } else {
      os << "warehouse capacity pruned " << b.warehouse_prunes << " branches and vehicle capacity "
         << inst_.data().vehicle_capacity << " pruned " << b.vehicle_prunes;
    }
    return os.str();
  }

 private:
  RouteTable& table(int slot, bool collection) { return tables_[static_cast<std::size_t>(2 * slot + (collection ? 0 : 1))]; }

  double pair_cost(int k, int m, int n) const {
    const double q = quantity_[static_cast<std::size_t>(k)];
    const NodeId wm = inst_.warehouses()[static_cast<std::size_t>(m)];
    const NodeId wn = inst_.warehouses()[static_cast<std::size_t>(n)];
    return inst_.warehouse(m).unit_cost * q + inst_.data().alpha * inst_.distance(wm, wn) * q;
  }

  bool apply(Frame& f, const std::vector<Action>& acts, Best& stats) {
    const double qv = inst_.data().vehicle_capacity + kCapacityTolerance;
    for (const Action& a : acts) {
      const auto k = static_cast<std::size_t>(a.k);
      const double q = quantity_[k];
      const auto s = static_cast<std::size_t>(a.slot);
      const int other = a.collection ? f.n[k] : f.m[k];
      if (other != a.slot) f.inbound[s] += q;
      if (f.inbound[s] > inst_.warehouse(a.slot).capacity + kCapacityTolerance) {
        ++stats.warehouse_prunes;
        return false;
      }
      const int node = a.collection ? factory_index_[k] : customer_index_[k];
      double& load = f.subload[static_cast<std::size_t>(node) * kMaxSlots + s];
      load += q;
      if (load > qv) {
        ++stats.vehicle_prunes;
        return false;
      }
      if (a.collection) {
        f.m[k] = static_cast<std::int8_t>(a.slot);
        f.colmask[s] |= 1U << a.k;
      } else {
        f.n[k] = static_cast<std::int8_t>(a.slot);
        f.delmask[s] |= 1U << a.k;
      }
      if (other >= 0) f.pair += a.collection ? pair_cost(a.k, a.slot, other) : pair_cost(a.k, other, a.slot);
    }
    return true;
  }

  void dfs(const Frame& f, std::size_t depth, Best& best) {
    if (depth == units_.size()) {
      ++best.leaves;
      double total = f.pair;
      for (int s = 0; s < slots_; ++s) {
        total += table(s, true).cost(f.colmask[static_cast<std::size_t>(s)]);
        total += table(s, false).cost(f.delmask[static_cast<std::size_t>(s)]);
      }
      if (total < best.cost) {
        best.cost = total;
        best.frame = f;
      }
      return;
    }
    for (const auto& acts : units_[depth]) {
      Frame next = f;
      if (apply(next, acts, best)) dfs(next, depth + 1, best);
    }
  }

  const Instance& inst_;
  int slots_ = 0;
  std::vector<std::vector<std::vector<Action>>> units_;
  std::vector<RouteTable> tables_;
  std::vector<double> quantity_;
  std::vector<int> factory_index_;
  std::vector<int> customer_index_;
};

std::optional<OracleResult> run(const Instance& inst, const VariantConfig& cfg, const OracleLimits& limits,
                                bool parallel, std::string* why) {
  Enumerator e(inst, cfg, limits);
  const Best best = e.run(parallel);
  if (!(best.cost < kInf)) {
    if (why) *why = e.infeasibility(best);
    return std::nullopt;
  }
  OracleResult out;
  out.solution = e.build(best.frame);
  out.cost = evaluate_objective(inst, out.solution);
  out.leaves = best.leaves;
  return out;
}

}  // namespace

OracleResult brute_force_solve(const Instance& inst, const VariantConfig& cfg, const OracleLimits& limits) {
  std::string why;
  auto r = run(inst, cfg, limits, true, &why);
  if (!r) throw InfeasibleError(why);
  return std::move(*r);
}

OracleResult brute_force_solve_serial(const Instance& inst, const VariantConfig& cfg, const OracleLimits& limits) {
  std::string why;
  auto r = run(inst, cfg, limits, false, &why);
  if (!r) throw InfeasibleError(why);
  return std::move(*r);
}

std::optional<OracleResult> try_brute_force_solve(const Instance& inst, const VariantConfig& cfg,
                                                  const OracleLimits& limits) {
  return run(inst, cfg, limits, true, nullptr);
}

}  // namespace wsps
