#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wsps/model.hpp"
#include "wsps/rng.hpp"
#include "wsps/search_state.hpp"

namespace wsps {

// Decomposition of the search: which part of the design an iteration reworks.
enum class Subproblem { WarehouseLocation, Allocation, Routing };
inline constexpr std::size_t kSubproblemCount = 3;

enum class DestroyOperator {
  RandomRemoval,
  WorstRemoval,
  ShawRemoval,
  WarehouseRemoval,
  WarehouseOpening,
  Duplication,
  Deduplication,
  WarehouseSwap,  // exchange the contents of an open warehouse with another one
};
inline constexpr std::size_t kDestroyCount = 8;

enum class RepairOperator { GreedyInsertion, Regret2Insertion, RandomOrderInsertion };
inline constexpr std::size_t kRepairCount = 3;

std::string_view to_string(Subproblem sp);
std::string_view to_string(DestroyOperator op);
std::string_view to_string(RepairOperator op);

// Destroy operators that serve a subproblem under a variant. Duplication is
// never offered under single allocation.
std::vector<DestroyOperator> destroy_operators_for(Subproblem sp, Variant variant);

struct PartialSolution {
  SearchState state;
  std::vector<PendingItem> pending;
  std::vector<char> allowed_slots;  // repair scope, one flag per warehouse slot
};

// Removes part of the solution. degree in (0, 1] scales how many sub-nodes
// go (at least one). Returns nullopt when the operator does not apply, e.g.
// deduplication without any multi-allocated node.
std::optional<PartialSolution> apply_destroy(const SearchState& sol, DestroyOperator which, double degree, Rng& rng,
                                             Subproblem subproblem = Subproblem::Allocation,
                                             Variant variant = Variant::WSPSDP);

// Reinserts every pending item with capacity-checked insertions. Items that
// fit nowhere whole are split into single commodities first; nullopt if a
// single commodity still fits nowhere.
std::optional<SearchState> apply_repair(PartialSolution partial, RepairOperator which, Rng& rng, Variant variant);

// Regret-2 choice among items given (best, second best) insertion costs per
// item; items with a single option rank first. Ties go to the lower index.
std::size_t regret_choice(std::span<const std::array<double, 2>> costs);

}  // namespace wsps
