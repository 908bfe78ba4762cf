#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treasure/combinatorics.hpp"
#include "treasure/game.hpp"
#include "treasure/rational.hpp"
#include "treasure/strategies.hpp"

namespace treasure {

struct SolverOptions {
  /// Game-tree nodes visited by one evaluation / best response, or LP
  /// states generated.
  std::uint64_t node_budget = 10'000'000;
  std::size_t lp_column_budget = 100'000;
};

enum class ValueMethod { closed_form, hider_best_response, searcher_best_response, lp };
std::string to_string(ValueMethod method);

/// One searcher sequence of an LP solution: the guess taken after a
/// (representative) history, its behavioral probability and its
/// realization weight.
struct PlanEntry {
  History history;
  GuessSet guess;
  Rational probability;
  Rational realization;
};

struct LpCertificate {
  std::vector<PlanEntry> plan;
  /// Hider allocation mix read off the dual solution.
  std::vector<WeightedAllocation> hider;
  /// Exact hider best-response value of the plan; equals the LP value.
  Rational plan_guarantee;
  Rational dual_objective;
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::size_t pivots = 0;
  /// Behavioral strategy realized by the plan.
  SearcherPtr strategy;
};

struct ValueReport {
  GameConfig config;
  Rational value;
  ValueMethod method = ValueMethod::closed_form;
  /// k^d / count_allocations: the counting upper bound.
  Rational counting_bound;
  /// k/n for multi occupancy (all treasures behind one random door).
  std::optional<Rational> one_door_cap;
  bool tight = false;
  /// Closed form only: certified | not-certified-by-scaling |
  /// formula-not-tight | upper-bound-only.
  std::string applicability;
  std::string strategy;
  std::vector<std::pair<Allocation, Rational>> allocation_values;
  std::optional<Allocation> worst_allocation;
  std::shared_ptr<const LpCertificate> certificate;
  std::vector<std::string> notes;
};

struct WinSet {
  std::string strategy;
  std::vector<Allocation> allocations;
};

/// k^d / count_allocations(n, d, occupancy).
Rational counting_bound(const GameConfig& config);

/// Exact win probability of `searcher` against a fixed allocation, reveals
/// resolved by config.reveal (adversarial = minimum over reveal options).
Rational evaluate_exact(const GameConfig& config, const SearcherStrategy& searcher,
                        const Allocation& allocation, const SolverOptions& options = {});

/// Minimum of evaluate_exact over all allocations: the value the searcher
/// strategy guarantees.
ValueReport hider_best_response_value(const GameConfig& config,
                                      const SearcherStrategy& searcher,
                                      const SolverOptions& options = {});

/// Best searcher reply to a fixed hider by backward induction over
/// observable histories. Adversarial reveal is only accepted when every
/// reveal is forced.
ValueReport searcher_best_response_value(const GameConfig& config,
                                         const HiderStrategy& hider,
                                         const SolverOptions& options = {});

/// Exact value of the zero-sum game through the sequence-form LP, solved by
/// exact simplex. The searcher plan is restricted to door-symmetric
/// realization plans, which loses nothing because the game is symmetric
/// under door relabeling. Lowest-index reveal is rejected (not symmetric).
ValueReport sequence_form_value(const GameConfig& config,
                                const SolverOptions& options = {});

/// Allocations a deterministic searcher wins against under adversarial
/// reveal. Throws InvalidArgument if the strategy ever mixes.
WinSet deterministic_win_set(const GameConfig& config, const SearcherStrategy& searcher,
                             const SolverOptions& options = {});

/// k^d / count_allocations with applicability annotations.
ValueReport closed_form_value(const GameConfig& config);

}  // namespace treasure
