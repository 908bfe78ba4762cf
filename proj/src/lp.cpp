#include "treasure/lp.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "treasure/errors.hpp"

namespace treasure::lp {

namespace {

using Entry = std::pair<std::size_t, Rational>;
using SparseRow = std::vector<Entry>;  // sorted by column, no zeros

const Rational* find(const SparseRow& row, std::size_t column) {
  auto it = std::lower_bound(row.begin(), row.end(), column,
                             [](const Entry& e, std::size_t c) { return e.first < c; });
  if (it == row.end() || it->first != column) return nullptr;
  return &it->second;
}

// target -= factor * source
void subtract_scaled(SparseRow& target, const Rational& factor, const SparseRow& source,
                     SparseRow& scratch) {
  scratch.clear();
  scratch.reserve(target.size() + source.size());
  auto a = target.begin();
  auto b = source.begin();
  while (a != target.end() || b != source.end()) {
    if (b == source.end() || (a != target.end() && a->first < b->first)) {
      scratch.push_back(std::move(*a));
      ++a;
    } else if (a == target.end() || b->first < a->first) {
      scratch.emplace_back(b->first, -factor * b->second);
      ++b;
    } else {
      Rational v = a->second - factor * b->second;
      if (v != 0) scratch.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  target.swap(scratch);
}

class Tableau {
 public:
  explicit Tableau(const Problem& p)
      : vars_(p.num_vars), rows_(p.rows.size()), cols_(vars_ + rows_) {
    if (p.objective.size() != vars_)
      throw InvalidArgument("objective size does not match variable count");
    row_.resize(rows_);
    rhs_.resize(rows_);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& c = p.rows[i];
      if (c.rhs < 0) throw InvalidArgument("lp rows need a nonnegative rhs");
      std::map<std::size_t, Rational> merged;
      for (const auto& t : c.terms) {
        if (t.column >= vars_) throw InvalidArgument("lp term column out of range");
        merged[t.column] += t.coef;
      }
      for (auto& [col, coef] : merged)
        if (coef != 0) row_[i].emplace_back(col, coef);
      row_[i].emplace_back(vars_ + i, Rational(1));
      rhs_[i] = c.rhs;
      basis_[i] = vars_ + i;
    }
    reduced_.assign(cols_, Rational(0));
    for (std::size_t j = 0; j < vars_; ++j) reduced_[j] = -p.objective[j];
  }

  Solution run() {
    Solution out;
    bool bland = false;
    while (true) {
      const auto entering = choose_entering(bland);
      if (!entering) break;
      const auto leaving = choose_leaving(*entering);
      if (!leaving) throw InternalError("lp is unbounded");
      const bool degenerate = rhs_[*leaving] == 0;
      pivot(*leaving, *entering);
      ++out.pivots;
      if (degenerate) ++out.degenerate_pivots;
      bland = degenerate;
    }
    out.objective = objective_;
    out.primal.assign(vars_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < vars_) out.primal[basis_[i]] = rhs_[i];
    out.dual.assign(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) out.dual[i] = reduced_[vars_ + i];
    return out;
  }

 private:
  std::optional<std::size_t> choose_entering(bool bland) const {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (reduced_[j] >= 0) continue;
      if (bland) return j;
      if (!best || reduced_[j] < reduced_[*best]) best = j;
    }
    return best;
  }

  std::optional<std::size_t> choose_leaving(std::size_t entering) const {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational* a = find(row_[i], entering);
      if (!a || *a <= 0) continue;
      Rational ratio = rhs_[i] / *a;
      if (!best || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[*best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  void pivot(std::size_t p, std::size_t e) {
    const Rational inv = 1 / *find(row_[p], e);
    for (auto& entry : row_[p]) entry.second *= inv;
    rhs_[p] *= inv;
    SparseRow scratch;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == p) continue;
      const Rational* a = find(row_[i], e);
      if (!a) continue;
      const Rational factor = *a;
      subtract_scaled(row_[i], factor, row_[p], scratch);
      rhs_[i] -= factor * rhs_[p];
    }
    const Rational factor = reduced_[e];
    if (factor != 0) {
      for (const auto& [col, coef] : row_[p]) reduced_[col] -= factor * coef;
      objective_ -= factor * rhs_[p];
    }
    basis_[p] = e;
  }

  std::size_t vars_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<SparseRow> row_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> reduced_;
  Rational objective_ = 0;
};

}  // namespace

Solution maximize(const Problem& problem) {
  Tableau tableau(problem);
  Solution solution = tableau.run();
  if (!certifies_optimum(problem, solution))
    throw InternalError("simplex result failed the exact optimality check");
  return solution;
}

bool certifies_optimum(const Problem& problem, const Solution& solution) {
  if (solution.primal.size() != problem.num_vars ||
      solution.dual.size() != problem.rows.size())
    return false;
  Rational primal_value = 0;
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    if (solution.primal[j] < 0) return false;
    primal_value += problem.objective[j] * solution.primal[j];
  }
  std::vector<Rational> column_sum(problem.num_vars, Rational(0));
  Rational dual_value = 0;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    const auto& row = problem.rows[i];
    const Rational& y = solution.dual[i];
    if (y < 0) return false;
    Rational lhs = 0;
    for (const auto& t : row.terms) {
      lhs += t.coef * solution.primal[t.column];
      if (y != 0) column_sum[t.column] += t.coef * y;
    }
    if (lhs > row.rhs) return false;
    dual_value += row.rhs * y;
  }
  for (std::size_t j = 0; j < problem.num_vars; ++j)
    if (column_sum[j] < problem.objective[j]) return false;
  return primal_value == dual_value && primal_value == solution.objective;
}

}  // namespace treasure::lp
