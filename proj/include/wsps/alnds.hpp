#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wsps/model.hpp"
#include "wsps/operators.hpp"
#include "wsps/rng.hpp"
#include "wsps/search_state.hpp"

namespace wsps {

struct SearchParams {
  int iterations = 25000;
  int segment_length = 100;
  double sigma1 = 33.0;
  double sigma2 = 13.0;
  double sigma3 = 9.0;
  double eta = 0.1;
  double cooling_theta = 0.99975;
  double tstart_worse_fraction = 0.2;
  double tstart_accept_prob = 0.3;
  std::array<double, 2> destroy_fraction_range{0.1, 0.4};
  // Current jumps back to the best solution after this many segments without
  // a new best; 0 keeps the plain annealing walk.
  int restart_segments = 10;
  std::uint64_t seed = 0;

  // Throws ParameterError naming the first offending field.
  void validate() const;
};

// JSON object with the field names above; missing keys keep their defaults,
// unknown keys are rejected.
SearchParams params_from_text(const std::string& text);
std::string params_to_text(const SearchParams& params);

// One roulette pool. Scores and counts cover the current segment only.
struct OperatorPool {
  std::vector<std::string> names;
  std::vector<double> weights;
  std::vector<double> scores;
  std::vector<int> counts;
  std::vector<long> total_uses;

  explicit OperatorPool(std::vector<std::string> entry_names = {});
  void record(std::size_t index, double score);
};

struct OperatorBank {
  OperatorPool subproblems;
  OperatorPool destroy;
  OperatorPool repair;

  OperatorBank();
};

// Roulette draw: index o with probability w_o / sum(w). Throws ParameterError
// on an empty list or a nonpositive weight.
std::size_t select_weighted(std::span<const double> weights, Rng& rng);

// End of segment: used entries move towards their mean segment score, unused
// ones keep their weight; scores and counts reset.
void update_weights(OperatorPool& pool, double eta);
void update_weights(OperatorBank& bank, double eta);

// Temperature at which a candidate worse by worse_fraction * f0 is accepted
// with probability accept_prob.
double initial_temperature(double f0, double worse_fraction, double accept_prob);

bool accept(double candidate_cost, double current_cost, double temperature, Rng& rng);

struct OperatorStats {
  struct Entry {
    std::string name;
    double weight = 0.0;
    long uses = 0;
  };
  std::vector<Entry> subproblems;
  std::vector<Entry> destroy;
  std::vector<Entry> repair;
};

struct SolveResult {
  Solution best_solution;
  CostBreakdown best_cost;
  std::vector<double> cost_trajectory;  // best-so-far total after each iteration
  double elapsed_seconds = 0.0;
  double time_to_best = 0.0;
  OperatorStats operator_stats;
  int n_multi_allocation = 0;
};

struct IterationEvent {
  int iteration = 0;
  Subproblem subproblem = Subproblem::Allocation;
  DestroyOperator destroy = DestroyOperator::RandomRemoval;
  RepairOperator repair = RepairOperator::GreedyInsertion;
  bool applied = false;   // destroy applied and repair succeeded
  bool accepted = false;
  double candidate_cost = 0.0;
  double current_cost = 0.0;  // before this iteration's move
  double temperature = 0.0;
  const SearchState* candidate = nullptr;  // null when not applied
};

using SolveObserver = std::function<void(const IterationEvent&)>;

// Runs the search from the constructive solution, or from a plain insertion
// start when the construction strands a node. Throws ModelError on an invalid
// instance; the construction error propagates if neither start is feasible.
SolveResult solve(const Instance& inst, const VariantConfig& cfg, const SearchParams& params,
                  const SolveObserver& observer = {});

// JSON summary of a result: costs, trajectory length, operator stats and the
// best solution in the solution file format. Timings are included only when
// with_times is set.
std::string solve_result_to_text(const Instance& inst, const SolveResult& result, bool with_times = true);

}  // namespace wsps
