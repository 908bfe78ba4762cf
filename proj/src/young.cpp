#include "treasure/young.hpp"

#include <algorithm>

#include "treasure/errors.hpp"
#include "treasure/strategies.hpp"

namespace treasure {

const Rational& PTable::at(const Partition& diagram) const {
  auto it = entries.find(diagram);
  if (it == entries.end())
    throw InvalidTable("p-table has no entry for diagram " + diagram.str());
  return it->second;
}

void PTable::validate() const {
  for (const auto& diagram : decision_diagrams(n, d))
    if (!contains(diagram))
      throw InvalidTable("p-table has no entry for diagram " + diagram.str());
  for (const auto& [diagram, p] : entries) {
    if (p < 0 || p > 1)
      throw InvalidTable("p-table entry " + to_string(p) + " for " + diagram.str() +
                         " lies outside [0,1]");
  }
}

std::vector<Partition> decision_diagrams(int n, int d) {
  std::vector<Partition> out;
  const int max_parts = std::min(n, d - 1);
  for (int size = 1; size <= d - 1; ++size)
    for (auto& p : enumerate_partitions(size, max_parts)) out.push_back(std::move(p));
  return out;
}

Rational p_lambda_base(int n, int d, const Partition& lambda) {
  if (lambda.size() < 1 || lambda.size() > d - 1)
    throw InvalidArgument("diagram size must lie in [1, d-1]");
  const int j = lambda.num_parts();
  if (j > n) throw InvalidArgument("diagram " + lambda.str() + " has more parts than doors");
  const int c = lambda.last();
  BigInt at_least = 0;
  BigInt above = 0;
  for (const auto& pi : enumerate_partitions(d, n)) {
    const auto& parts = pi.parts();
    if (pi.num_parts() < j) continue;
    if (!std::equal(parts.begin(), parts.begin() + (j - 1), lambda.parts().begin())) continue;
    if (parts[j - 1] < c) continue;
    const BigInt w = partition_weight(pi, n);
    at_least += w;
    if (parts[j - 1] > c) above += w;
  }
  if (above == 0) return 0;
  return Rational(above, at_least);
}

PTable base_table(int n, int d) {
  if (n < 1 || d < 1) throw InvalidArgument("base_table needs n, d >= 1");
  PTable table{n, d, 1, {}};
  for (const auto& diagram : decision_diagrams(n, d))
    table.entries.emplace(diagram, p_lambda_base(n, d, diagram));
  return table;
}

PTable scaled_table(int n, int d, int k) {
  if (n < 1 || d < 1 || k < 1) throw InvalidArgument("scaled_table needs n, d, k >= 1");
  if (n < d * k)
    throw DoorBudget("scaled table needs n >= d*k (" + std::to_string(n) + " < " +
                     std::to_string(d * k) + ")");
  PTable table{n, d, k, {}};
  for (const auto& diagram : decision_diagrams(n, d)) {
    Rational p = k * p_lambda_base(n, d, diagram);
    if (p > 1) throw ExceedsUnit(diagram.parts(), to_string(p));
    table.entries.emplace(diagram, std::move(p));
  }
  return table;
}

int min_valid_n(int d, int k) {
  if (d < 1 || k < 1) throw InvalidArgument("min_valid_n needs d, k >= 1");
  for (int n = d * k;; ++n) {
    try {
      scaled_table(n, d, k);
      return n;
    } catch (const ExceedsUnit&) {
    }
  }
}

std::vector<Partition> free_diagrams(int d) {
  std::vector<Partition> out;
  for (int size = 1; size <= d - 1; ++size)
    for (auto& p : enumerate_partitions(size, size)) {
      const auto& parts = p.parts();
      if (parts.size() == 1 || parts[parts.size() - 1] != parts[parts.size() - 2])
        out.push_back(std::move(p));
    }
  return out;
}

EqualizingReport verify_equalizing(const GameConfig& config, const PTable& table,
                                   const SolverOptions& options) {
  GameConfig adversarial = config;
  adversarial.reveal = Reveal::adversarial;
  const auto searcher = make_searcher_ptable(adversarial, table);
  const auto report = hider_best_response_value(adversarial, *searcher, options);

  EqualizingReport out;
  out.per_allocation = report.allocation_values;
  out.value = report.value;
  out.equal = true;
  const Rational& first = out.per_allocation.front().second;
  for (const auto& [allocation, v] : out.per_allocation) {
    if (v != first) {
      out.equal = false;
      out.counterexample = allocation;
      break;
    }
  }
  if (out.equal) out.value = first;
  return out;
}

}  // namespace treasure
