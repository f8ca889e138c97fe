#include "wsps/alnds.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "json_detail.hpp"
#include "wsps/construction.hpp"
#include "wsps/error.hpp"
#include "wsps/evaluate.hpp"
#include "wsps/validate.hpp"

namespace wsps {

void SearchParams::validate() const {
  auto fail = [](const std::string& msg) { throw ParameterError(msg); };
  if (iterations < 0) fail("iterations must be non-negative");
  if (segment_length <= 0) fail("segment_length must be positive");
  if (restart_segments < 0) fail("restart_segments must be non-negative");
  if (!(sigma1 > sigma2 && sigma2 > sigma3 && sigma3 > 0.0)) fail("scores must satisfy sigma1 > sigma2 > sigma3 > 0");
  if (!(eta >= 0.0 && eta <= 1.0)) fail("eta must lie in [0, 1]");
  if (!(cooling_theta > 0.0 && cooling_theta < 1.0)) fail("cooling_theta must lie in (0, 1)");
  if (!(tstart_worse_fraction > 0.0 && tstart_worse_fraction < 1.0)) fail("tstart_worse_fraction must lie in (0, 1)");
  if (!(tstart_accept_prob > 0.0 && tstart_accept_prob < 1.0)) fail("tstart_accept_prob must lie in (0, 1)");
  const auto [lo, hi] = destroy_fraction_range;
  if (!(lo > 0.0 && lo <= hi && hi <= 1.0)) fail("destroy_fraction_range must satisfy 0 < low <= high <= 1");
}

SearchParams params_from_text(const std::string& text) {
  const auto doc = detail::parse_json(text, "params");
  if (!doc.is_object()) throw FormatError("params: expected a JSON object");
  SearchParams p;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "iterations") p.iterations = value.get<int>();
      else if (key == "segment_length") p.segment_length = value.get<int>();
      else if (key == "sigma1") p.sigma1 = value.get<double>();
      else if (key == "sigma2") p.sigma2 = value.get<double>();
      else if (key == "sigma3") p.sigma3 = value.get<double>();
      else if (key == "eta") p.eta = value.get<double>();
      else if (key == "cooling_theta") p.cooling_theta = value.get<double>();
      else if (key == "tstart_worse_fraction") p.tstart_worse_fraction = value.get<double>();
      else if (key == "tstart_accept_prob") p.tstart_accept_prob = value.get<double>();
      else if (key == "destroy_fraction_range") p.destroy_fraction_range = value.get<std::array<double, 2>>();
      else if (key == "restart_segments") p.restart_segments = value.get<int>();
      else if (key == "seed") p.seed = value.get<std::uint64_t>();
      else throw FormatError("params: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("params: ") + e.what());
  }
  p.validate();
  return p;
}

std::string params_to_text(const SearchParams& p) {
  detail::json doc = {{"iterations", p.iterations},
                      {"segment_length", p.segment_length},
                      {"sigma1", p.sigma1},
                      {"sigma2", p.sigma2},
                      {"sigma3", p.sigma3},
                      {"eta", p.eta},
                      {"cooling_theta", p.cooling_theta},
                      {"tstart_worse_fraction", p.tstart_worse_fraction},
                      {"tstart_accept_prob", p.tstart_accept_prob},
                      {"destroy_fraction_range", p.destroy_fraction_range},
                      {"restart_segments", p.restart_segments},
                      {"seed", p.seed}};
  return doc.dump(1) + "\n";
}

OperatorPool::OperatorPool(std::vector<std::string> entry_names)
    : names(std::move(entry_names)),
      weights(names.size(), 1.0),
      scores(names.size(), 0.0),
      counts(names.size(), 0),
      total_uses(names.size(), 0) {}

void OperatorPool::record(std::size_t index, double score) {
  scores[index] += score;
  ++counts[index];
  ++total_uses[index];
}

namespace {

template <class E, std::size_t N>
std::vector<std::string> names_of() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < N; ++i) out.emplace_back(to_string(static_cast<E>(i)));
  return out;
}

}  // namespace

OperatorBank::OperatorBank()
    : subproblems(names_of<Subproblem, kSubproblemCount>()),
      destroy(names_of<DestroyOperator, kDestroyCount>()),
      repair(names_of<RepairOperator, kRepairCount>()) {}

std::size_t select_weighted(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw ParameterError("roulette over an empty weight list");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("roulette weights must be positive and finite");
    total += w;
  }
  const double r = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

void update_weights(OperatorPool& pool, double eta) {
  for (std::size_t i = 0; i < pool.weights.size(); ++i) {
    if (pool.counts[i] > 0) {
      const double updated = (1.0 - eta) * pool.weights[i] + eta * pool.scores[i] / pool.counts[i];
      // eta = 1 with a zero score would zero the weight and stall the roulette
      pool.weights[i] = updated > 0.0 ? updated : pool.weights[i] * 1e-3;
    }
    pool.scores[i] = 0.0;
    pool.counts[i] = 0;
  }
}

void update_weights(OperatorBank& bank, double eta) {
  update_weights(bank.subproblems, eta);
  update_weights(bank.destroy, eta);
  update_weights(bank.repair, eta);
}

double initial_temperature(double f0, double worse_fraction, double accept_prob) {
  if (!(accept_prob > 0.0 && accept_prob < 1.0)) throw ParameterError("accept probability must lie in (0, 1)");
  if (!(worse_fraction > 0.0)) throw ParameterError("worse fraction must be positive");
  if (!(f0 > 0.0)) throw ParameterError("initial objective must be positive");
  return worse_fraction * f0 / -std::log(accept_prob);
}

bool accept(double candidate_cost, double current_cost, double temperature, Rng& rng) {
  if (candidate_cost <= current_cost) return true;
  return rng.uniform() < std::exp(-(candidate_cost - current_cost) / temperature);
}

namespace {

std::vector<OperatorStats::Entry> stats_of(const OperatorPool& pool) {
  std::vector<OperatorStats::Entry> out;
  for (std::size_t i = 0; i < pool.names.size(); ++i) out.push_back({pool.names[i], pool.weights[i], pool.total_uses[i]});
  return out;
}

// The greedy construction can strand a node on tight capacities; insertion
// from an empty state (regret first) usually still finds a feasible start.
SearchState initial_state(const Instance& inst, const VariantConfig& cfg, std::uint64_t seed) {
  try {
    return SearchState::from_solution(inst, construct_initial(inst, cfg, seed).first);
  } catch (const ConstructionError&) {
    PartialSolution empty{SearchState(inst), {}, std::vector<char>(inst.warehouse_count(), 1)};
    for (auto side : {inst.factories(), inst.customers()}) {
      for (NodeId node : side) {
        if (inst.demand(node) <= 0.0) continue;
        const auto ks = inst.commodities_of(node);
        empty.pending.push_back({node, {ks.begin(), ks.end()}, inst.demand(node), -1, -1, -1});
      }
    }
    for (const RepairOperator r : {RepairOperator::Regret2Insertion, RepairOperator::GreedyInsertion}) {
      Rng rng(seed);
      if (auto st = apply_repair(empty, r, rng, cfg.variant)) return std::move(*st);
    }
    throw;
  }
}

bool improves(double candidate, double reference) {
  return candidate < reference - kCostTolerance * std::max(1.0, std::abs(reference));
}

}  // namespace

SolveResult solve(const Instance& inst, const VariantConfig& cfg, const SearchParams& params,
                  const SolveObserver& observer) {
  params.validate();
  const auto check = validate_instance(inst);
  if (!check.ok()) throw ModelError("invalid instance:\n" + check.summary());

  const auto started = std::chrono::steady_clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };

  Rng rng(params.seed);
  const Variant variant = cfg.variant;
  SearchState current = initial_state(inst, cfg, params.seed);
  double current_cost = current.total_cost();
  SearchState best = current;
  double best_cost = current_cost;

  SolveResult result;
  OperatorBank bank;
  const double t_start = current_cost > 0.0
                             ? initial_temperature(current_cost, params.tstart_worse_fraction, params.tstart_accept_prob)
                             : 1.0;
  const double t_floor = 1e-10 * t_start;
  double temperature = t_start;

  std::array<std::vector<DestroyOperator>, kSubproblemCount> menus;
  for (std::size_t s = 0; s < kSubproblemCount; ++s) menus[s] = destroy_operators_for(static_cast<Subproblem>(s), variant);

  result.cost_trajectory.reserve(static_cast<std::size_t>(params.iterations));
  std::vector<double> menu_weights;
  int last_best = 0;
  for (int it = 0; it < params.iterations; ++it) {
    IterationEvent ev;
    ev.iteration = it;
    ev.temperature = temperature;
    ev.current_cost = current_cost;
    const std::size_t sp = select_weighted(bank.subproblems.weights, rng);
    const auto& menu = menus[sp];
    menu_weights.clear();
    for (DestroyOperator d : menu) menu_weights.push_back(bank.destroy.weights[static_cast<std::size_t>(d)]);
    const DestroyOperator d = menu[select_weighted(menu_weights, rng)];
    const auto r = static_cast<RepairOperator>(select_weighted(bank.repair.weights, rng));
    ev.subproblem = static_cast<Subproblem>(sp);
    ev.destroy = d;
    ev.repair = r;

    const double degree = rng.uniform(params.destroy_fraction_range[0], params.destroy_fraction_range[1]);
    double score = 0.0;
    std::optional<SearchState> candidate;
    if (auto partial = apply_destroy(current, d, degree, rng, ev.subproblem, variant)) {
      candidate = apply_repair(std::move(*partial), r, rng, variant);
    }
    if (candidate) {
      const double cost = candidate->total_cost();
      ev.applied = true;
      ev.candidate_cost = cost;
      ev.candidate = &*candidate;
      if (improves(cost, best_cost)) {
        score = params.sigma1;
      } else if (improves(cost, current_cost)) {
        score = params.sigma2;
      }
      ev.accepted = accept(cost, current_cost, temperature, rng);
      if (ev.accepted && score == 0.0 && cost > current_cost) score = params.sigma3;
      if (observer) observer(ev);
      if (ev.accepted) {
        current = std::move(*candidate);
        current_cost = cost;
        if (improves(current_cost, best_cost)) {
          best = current;
          best_cost = current_cost;
          last_best = it;
          result.time_to_best = seconds();
        }
      }
    } else if (observer) {
      observer(ev);
    }
    bank.subproblems.record(sp, score);
    bank.destroy.record(static_cast<std::size_t>(d), score);
    bank.repair.record(static_cast<std::size_t>(r), score);
    result.cost_trajectory.push_back(best_cost);
    temperature = std::max(temperature * params.cooling_theta, t_floor);
    if ((it + 1) % params.segment_length == 0) {
      update_weights(bank, params.eta);
      if (params.restart_segments > 0 && it - last_best >= params.restart_segments * params.segment_length) {
        current = best;
        current_cost = best_cost;
        last_best = it;
      }
    }
  }

  result.best_solution = best.to_solution();
  result.best_cost = evaluate_objective(inst, result.best_solution);
  result.n_multi_allocation = count_multi_allocation_nodes(result.best_solution);
  result.operator_stats = {stats_of(bank.subproblems), stats_of(bank.destroy), stats_of(bank.repair)};
  result.elapsed_seconds = seconds();
  return result;
}

std::string solve_result_to_text(const Instance& inst, const SolveResult& result, bool with_times) {
  detail::json doc;
  doc["format"] = "wsps-solve-result";
  doc["version"] = 1;
  doc["cost"] = detail::cost_to_json(result.best_cost);
  doc["n_multi_allocation"] = result.n_multi_allocation;
  doc["used_warehouses"] = used_warehouses(result.best_solution);
  doc["iterations"] = result.cost_trajectory.size();
  if (with_times) {
    doc["elapsed_seconds"] = result.elapsed_seconds;
    doc["time_to_best"] = result.time_to_best;
  }
  auto pool = [](const std::vector<OperatorStats::Entry>& entries) {
    detail::json arr = detail::json::array();
    for (const auto& e : entries) arr.push_back({{"name", e.name}, {"weight", e.weight}, {"uses", e.uses}});
    return arr;
  };
  doc["operators"] = {{"subproblems", pool(result.operator_stats.subproblems)},
                      {"destroy", pool(result.operator_stats.destroy)},
                      {"repair", pool(result.operator_stats.repair)}};
  doc["solution"] = detail::solution_to_json(inst, result.best_solution);
  return doc.dump(1) + "\n";
}

}  // namespace wsps
