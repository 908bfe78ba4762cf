#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "treasure/combinatorics.hpp"
#include "treasure/game.hpp"
#include "treasure/ptable.hpp"
#include "treasure/rational.hpp"
#include "treasure/solver.hpp"

namespace treasure {

/// Continuation probability of the k = 1 allocation-following searcher
/// after finds shaped like `lambda`.
///
/// With j parts and last part c, the conditional law of the hidden shape is
/// proportional to partition_weight, restricted to partitions of d that
/// agree with lambda on the first j-1 parts and have j-th part >= c. The
/// searcher continues iff that part exceeds c. Returns 0 when no such
/// partition fits behind n doors.
Rational p_lambda_base(int n, int d, const Partition& lambda);

/// p_lambda(n,d,1) for every decision diagram.
PTable base_table(int n, int d);

/// k * p_lambda(n,d,1) for every decision diagram. Throws DoorBudget when
/// n < d*k and ExceedsUnit on the first entry above one. Entries are never
/// clamped.
PTable scaled_table(int n, int d, int k);

/// Smallest n >= d*k for which scaled_table succeeds.
int min_valid_n(int d, int k);

/// Diagrams that carry a genuine choice: one part, or a last part that
/// differs from the one before it.
std::vector<Partition> free_diagrams(int d);

struct EqualizingReport {
  bool equal = false;
  /// Common value when equal, otherwise the minimum over allocations.
  Rational value;
  std::optional<Allocation> counterexample;
  std::vector<std::pair<Allocation, Rational>> per_allocation;
};

/// Evaluates the table's strategy against every allocation under
/// adversarial reveal and reports whether all win probabilities coincide.
EqualizingReport verify_equalizing(const GameConfig& config, const PTable& table,
                                   const SolverOptions& options = {});

}  // namespace treasure
