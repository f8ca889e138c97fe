#include "wsps/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wsps {

std::string_view to_string(Subproblem sp) {
  switch (sp) {
    case Subproblem::WarehouseLocation: return "warehouse-location";
    case Subproblem::Allocation: return "allocation";
    case Subproblem::Routing: return "routing";
  }
  return "?";
}

std::string_view to_string(DestroyOperator op) {
  switch (op) {
    case DestroyOperator::RandomRemoval: return "random-removal";
    case DestroyOperator::WorstRemoval: return "worst-removal";
    case DestroyOperator::ShawRemoval: return "shaw-removal";
    case DestroyOperator::WarehouseRemoval: return "warehouse-removal";
    case DestroyOperator::WarehouseOpening: return "warehouse-opening";
    case DestroyOperator::Duplication: return "duplication";
    case DestroyOperator::Deduplication: return "deduplication";
    case DestroyOperator::WarehouseSwap: return "warehouse-swap";
  }
  return "?";
}

std::string_view to_string(RepairOperator op) {
  switch (op) {
    case RepairOperator::GreedyInsertion: return "greedy-insertion";
    case RepairOperator::Regret2Insertion: return "regret2-insertion";
    case RepairOperator::RandomOrderInsertion: return "random-order-insertion";
  }
  return "?";
}

std::vector<DestroyOperator> destroy_operators_for(Subproblem sp, Variant variant) {
  using D = DestroyOperator;
  switch (sp) {
    case Subproblem::WarehouseLocation: return {D::WarehouseRemoval, D::WarehouseOpening, D::WarehouseSwap};
    case Subproblem::Routing: return {D::RandomRemoval, D::WorstRemoval, D::ShawRemoval};
    case Subproblem::Allocation:
      if (variant == Variant::WSPS_SA) return {D::RandomRemoval, D::WorstRemoval, D::ShawRemoval};
      return {D::RandomRemoval, D::WorstRemoval, D::ShawRemoval, D::Duplication, D::Deduplication};
  }
  return {};
}

namespace {

using SubNodeKey = std::pair<NodeId, int>;

struct Removal {
  PendingItem item;
  int origin = -1;
};

std::size_t removal_count(double degree, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::ceil(degree * static_cast<double>(n) - 1e-12));
  return std::clamp<std::size_t>(k, 1, n);
}

double node_distance(const Instance& inst, NodeId a, NodeId b) {
  return 0.5 * (inst.distance(a, b) + inst.distance(b, a));
}

}  // namespace

std::optional<PartialSolution> apply_destroy(const SearchState& sol, DestroyOperator which, double degree, Rng& rng,
                                             Subproblem subproblem, Variant variant) {
  PartialSolution partial{sol, {}, std::vector<char>(static_cast<std::size_t>(sol.slots()), 1)};
  SearchState& st = partial.state;
  const Instance& inst = sol.instance();
  const auto subs = st.subnodes();
  const std::size_t n = subs.size();
  std::vector<Removal> removed;
  auto take = [&](NodeId node, int slot) { removed.push_back({st.remove_subnode(node, slot), slot}); };

  switch (which) {
    case DestroyOperator::RandomRemoval: {
      if (n == 0) return std::nullopt;
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      rng.shuffle(std::span(idx));
      const std::size_t k = removal_count(degree, n);
      for (std::size_t i = 0; i < k; ++i) take(subs[idx[i]].first, subs[idx[i]].second);
      break;
    }
    case DestroyOperator::WorstRemoval: {
      if (n == 0) return std::nullopt;
      const std::size_t k = removal_count(degree, n);
      const double beta = inst.data().beta;
      for (std::size_t round = 0; round < k; ++round) {
        const auto live = st.subnodes();
        std::size_t pick = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < live.size(); ++i) {
          const auto [node, slot] = live[i];
          const double saving = beta * st.detour(node, slot) + st.assignment_cost(node, slot);
          if (saving > best) {
            best = saving;
            pick = i;
          }
        }
        take(live[pick].first, live[pick].second);
      }
      break;
    }
    case DestroyOperator::ShawRemoval: {
      if (n == 0) return std::nullopt;
      const SubNodeKey seed = subs[rng.below(n)];
      double max_d = 0.0;
      for (const auto& s : subs) max_d = std::max(max_d, node_distance(inst, seed.first, s.first));
      std::vector<std::pair<double, std::size_t>> related;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = subs[i] == seed ? -1.0
                                         : (max_d > 0.0 ? node_distance(inst, seed.first, subs[i].first) / max_d : 0.0);
        related.emplace_back(r, i);
      }
      std::stable_sort(related.begin(), related.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      const std::size_t k = removal_count(degree, n);
      for (std::size_t i = 0; i < k; ++i) take(subs[related[i].second].first, subs[related[i].second].second);
      break;
    }
    case DestroyOperator::WarehouseRemoval: {
      if (st.slots() < 2) return std::nullopt;
      std::vector<int> open;
      for (int s = 0; s < st.slots(); ++s) {
        if (st.subnodes_at(s) > 0) open.push_back(s);
      }
      if (open.empty()) return std::nullopt;
      const int closing = open[rng.below(open.size())];
      for (const auto& [node, slot] : subs) {
        if (slot == closing) take(node, slot);
      }
      for (Removal& r : removed) r.item.forbidden_slot = closing;
      break;
    }
    case DestroyOperator::WarehouseOpening: {
      std::vector<int> closed;
      for (int s = 0; s < st.slots(); ++s) {
        if (st.subnodes_at(s) == 0) closed.push_back(s);
      }
      if (closed.empty() || n == 0) return std::nullopt;
      const int opening = closed[rng.below(closed.size())];
      const NodeId w = inst.warehouses()[static_cast<std::size_t>(opening)];
      std::vector<std::pair<double, std::size_t>> near;
      for (std::size_t i = 0; i < n; ++i) near.emplace_back(node_distance(inst, w, subs[i].first), i);
      std::stable_sort(near.begin(), near.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      const std::size_t k = removal_count(degree, n);
      for (std::size_t i = 0; i < k; ++i) take(subs[near[i].second].first, subs[near[i].second].second);
      for (Removal& r : removed) r.item.preferred_slot = opening;
      break;
    }
    case DestroyOperator::Duplication: {
      if (variant == Variant::WSPS_SA) return std::nullopt;
      std::vector<SubNodeKey> splittable;
      for (const auto& s : subs) {
        if (st.subnode_size(s.first, s.second) >= 2) splittable.push_back(s);
      }
      if (splittable.empty()) return std::nullopt;
      const auto [node, slot] = splittable[rng.below(splittable.size())];
      auto ks = st.subnode_commodities(node, slot);
      rng.shuffle(std::span(ks));
      ks.resize(ks.size() / 2);
      Removal r{st.split_subnode(node, slot, ks), slot};
      r.item.forbidden_slot = slot;
      removed.push_back(std::move(r));
      break;
    }
    case DestroyOperator::Deduplication: {
      std::vector<NodeId> multi;
      for (const auto& s : subs) {
        if (st.slots_of_node(s.first) >= 2 && (multi.empty() || multi.back() != s.first)) multi.push_back(s.first);
      }
      if (multi.empty()) return std::nullopt;
      const NodeId node = multi[rng.below(multi.size())];
      std::vector<int> slots;
      for (const auto& s : subs) {
        if (s.first == node) slots.push_back(s.second);
      }
      const int slot = slots[rng.below(slots.size())];
      take(node, slot);
      removed.back().item.forbidden_slot = slot;
      break;
    }
    case DestroyOperator::WarehouseSwap: {
      if (st.slots() < 2 || n == 0) return std::nullopt;
      std::vector<int> open;
      for (int s = 0; s < st.slots(); ++s) {
        if (st.subnodes_at(s) > 0) open.push_back(s);
      }
      const int a = open[rng.below(open.size())];
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(st.slots() - 1)));
      if (b >= a) ++b;
      for (const auto& [node, slot] : subs) {
        if (slot == a || slot == b) take(node, slot);
      }
      for (Removal& r : removed) r.item.forced_slot = r.origin == a ? b : a;
      break;
    }
  }

  if (subproblem == Subproblem::Routing) {
    for (Removal& r : removed) r.item.forced_slot = r.origin;
  } else if (subproblem == Subproblem::Allocation) {
    for (int s = 0; s < sol.slots(); ++s) partial.allowed_slots[static_cast<std::size_t>(s)] = sol.subnodes_at(s) > 0;
  }
  partial.pending.reserve(removed.size());
  for (Removal& r : removed) partial.pending.push_back(std::move(r.item));
  return partial;
}

std::size_t regret_choice(std::span<const std::array<double, 2>> costs) {
  std::size_t pick = 0;
  double best_regret = -1.0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const double regret = std::isinf(costs[i][1]) ? std::numeric_limits<double>::infinity() : costs[i][1] - costs[i][0];
    if (regret > best_regret || (regret == best_regret && costs[i][0] < best_cost)) {
      best_regret = regret;
      best_cost = costs[i][0];
      pick = i;
    }
  }
  return pick;
}

namespace {

struct Choice {
  std::optional<InsertionOption> best;
  double second = std::numeric_limits<double>::infinity();
};

Choice evaluate(const SearchState& st, const PendingItem& item, const std::vector<char>& allowed, Variant variant,
                bool want_second, std::vector<InsertionOption>& scratch) {
  Choice out;
  if (item.preferred_slot >= 0 && allowed[static_cast<std::size_t>(item.preferred_slot)]) {
    scratch.clear();
    if (auto opt = st.best_insertion(item, item.preferred_slot, variant, want_second ? &scratch : nullptr)) {
      out.best = opt;
      if (want_second) {
        std::vector<double> costs;
        for (const auto& o : scratch) costs.push_back(o.cost);
        std::sort(costs.begin(), costs.end());
        if (costs.size() > 1) out.second = costs[1];
      }
      return out;
    }
  }
  scratch.clear();
  for (int s = 0; s < st.slots(); ++s) {
    if (item.forced_slot >= 0 ? s != item.forced_slot : !allowed[static_cast<std::size_t>(s)]) continue;
    if (auto opt = st.best_insertion(item, s, variant, want_second ? &scratch : nullptr)) {
      if (!out.best || opt->cost < out.best->cost) out.best = opt;
    }
  }
  if (want_second && scratch.size() > 1) {
    std::vector<double> costs;
    for (const auto& o : scratch) costs.push_back(o.cost);
    std::nth_element(costs.begin(), costs.begin() + 1, costs.end());
    out.second = costs[1];
  }
  return out;
}

// Replaces items[i] by one item per commodity, keeping its restrictions.
bool split_item(std::vector<PendingItem>& items, std::size_t i, const Instance& inst) {
  if (items[i].commodities.size() < 2) return false;
  PendingItem base = items[i];
  std::vector<PendingItem> singles;
  for (CommodityId k : base.commodities) {
    PendingItem one = base;
    one.commodities = {k};
    one.load = inst.commodity(k).quantity;
    singles.push_back(std::move(one));
  }
  items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
  items.insert(items.begin() + static_cast<std::ptrdiff_t>(i), singles.begin(), singles.end());
  return true;
}

}  // namespace

std::optional<SearchState> apply_repair(PartialSolution partial, RepairOperator which, Rng& rng, Variant variant) {
  SearchState& st = partial.state;
  std::vector<PendingItem>& items = partial.pending;
  const Instance& inst = st.instance();
  std::vector<InsertionOption> scratch;
  if (which == RepairOperator::RandomOrderInsertion) rng.shuffle(std::span(items));

  while (!items.empty()) {
    if (which == RepairOperator::RandomOrderInsertion) {
      const Choice c = evaluate(st, items.front(), partial.allowed_slots, variant, false, scratch);
      if (!c.best) {
        if (!split_item(items, 0, inst)) return std::nullopt;
        continue;
      }
      st.insert(items.front(), *c.best);
      items.erase(items.begin());
      continue;
    }
    const bool regret = which == RepairOperator::Regret2Insertion;
    std::vector<Choice> choices;
    choices.reserve(items.size());
    std::optional<std::size_t> stuck;
    for (std::size_t i = 0; i < items.size(); ++i) {
      choices.push_back(evaluate(st, items[i], partial.allowed_slots, variant, regret, scratch));
      if (!choices.back().best) {
        stuck = i;
        break;
      }
    }
    if (stuck) {
      if (!split_item(items, *stuck, inst)) return std::nullopt;
      continue;
    }
    std::size_t pick = 0;
    if (regret) {
      std::vector<std::array<double, 2>> costs;
      costs.reserve(choices.size());
      for (const Choice& c : choices) costs.push_back({c.best->cost, c.second});
      pick = regret_choice(costs);
    } else {
      for (std::size_t i = 1; i < choices.size(); ++i) {
        if (choices[i].best->cost < choices[pick].best->cost) pick = i;
      }
    }
    st.insert(items[pick], *choices[pick].best);
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  st.drop_empty_routes();
  st.recompute_inbound();
  return std::move(partial.state);
}

}  // namespace wsps
