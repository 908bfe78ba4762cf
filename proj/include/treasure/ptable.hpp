#pragma once

#include <map>
#include <string>
#include <vector>

#include "treasure/combinatorics.hpp"
#include "treasure/rational.hpp"

namespace treasure {

/// Continuation probabilities p_lambda: the chance of re-guessing the
/// current door after the finds so far form the diagram lambda.
struct PTable {
  int n = 0;
  int d = 0;
  int k = 1;
  std::map<Partition, Rational> entries;

  /// Throws InvalidTable when the diagram has no entry.
  const Rational& at(const Partition& diagram) const;
  bool contains(const Partition& diagram) const { return entries.count(diagram) > 0; }

  /// Every key in decision_diagrams(n, d) present, every entry in [0,1].
  void validate() const;
};

/// Diagrams at which a strategy decides: all partitions of size 1..d-1 with
/// at most min(n, d-1) parts, ordered by size then reverse-lexicographically.
std::vector<Partition> decision_diagrams(int n, int d);

}  // namespace treasure
