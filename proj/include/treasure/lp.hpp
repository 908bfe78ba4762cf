#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treasure/rational.hpp"

namespace treasure::lp {

struct Term {
  std::size_t column;
  Rational coef;
};

/// sum(terms) <= rhs
struct Constraint {
  std::vector<Term> terms;
  Rational rhs;
};

/// maximize objective . x  subject to  rows, x >= 0.
/// Every rhs must be nonnegative so the origin is a feasible start.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> rows;

  std::size_t add_var() {
    objective.emplace_back(0);
    return num_vars++;
  }
};

struct Solution {
  Rational objective;
  std::vector<Rational> primal;  // one per variable
  std::vector<Rational> dual;    // one per row, all >= 0
  std::size_t pivots = 0;
  std::size_t degenerate_pivots = 0;
};

/// Exact primal simplex on a sparse rational tableau. Entering columns are
/// chosen by largest reduced cost; after a degenerate pivot the rule falls
/// back to Bland's smallest-index rule until the objective strictly
/// improves, which rules out cycling.
///
/// Throws InvalidArgument for a negative rhs and InternalError if the
/// problem is unbounded or the optimality check fails.
Solution maximize(const Problem& problem);

/// Exact optimality certificate: primal feasibility, dual feasibility and
/// equal objectives.
bool certifies_optimum(const Problem& problem, const Solution& solution);

}  // namespace treasure::lp
