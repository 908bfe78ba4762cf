#include "treasure/solver.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "treasure/errors.hpp"
#include "treasure/lp.hpp"
#include "treasure/young.hpp"

namespace treasure {

std::string to_string(ValueMethod method) {
  switch (method) {
    case ValueMethod::closed_form: return "closed-form";
    case ValueMethod::hider_best_response: return "hider-best-response";
    case ValueMethod::searcher_best_response: return "searcher-best-response";
    case ValueMethod::lp: return "lp";
  }
  return "?";
}

Rational counting_bound(const GameConfig& config) {
  config.validate();
  BigInt power = 1;
  for (int i = 0; i < config.d; ++i) power *= config.k;
  return Rational(power, count_allocations(config.n, config.d, config.occupancy));
}

namespace {

void fill_bounds(ValueReport& report) {
  report.counting_bound = counting_bound(report.config);
  if (report.config.occupancy == Occupancy::multi)
    report.one_door_cap = Rational(report.config.k, report.config.n);
  report.tight = report.value == report.counting_bound;
}

// Win probability of a fixed searcher against fixed allocations. Symmetric
// strategies under a symmetric reveal rule are memoized on the canonical
// (allocation, history) pair, shared across allocations.
class Evaluator {
 public:
  Evaluator(const GameConfig& config, const SearcherStrategy& searcher,
            const SolverOptions& options, bool require_deterministic = false)
      : config_(config),
        searcher_(searcher),
        options_(options),
        require_deterministic_(require_deterministic),
        memoize_(searcher.symmetric() && config.reveal != Reveal::lowest_index) {}

  Rational evaluate(const Allocation& allocation) {
    validate_allocation(config_, allocation);
    tags_ = allocation.counts;
    remaining_ = allocation.counts;
    left_ = config_.d;
    history_.events.clear();
    return node();
  }

 private:
  Rational node() {
    if (++nodes_ > options_.node_budget)
      throw BudgetExceeded("evaluation exceeded the node budget of " +
                           std::to_string(options_.node_budget));
    std::string key;
    if (memoize_) {
      key = canonical_key(history_, config_.n, &tags_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const auto dist = guess_distribution(searcher_, history_);
    if (require_deterministic_ && dist.size() != 1)
      throw InvalidArgument(searcher_.name() + " is not deterministic at " + history_.str());
    Rational total = 0;
    for (const auto& [guess, p] : dist) {
      const auto options = reveal_options(remaining_, guess);
      if (options.empty()) continue;
      if (left_ == 1) {
        total += p;
        continue;
      }
      Rational v;
      if (config_.reveal == Reveal::adversarial) {
        v = child(guess, options.front());
        for (std::size_t i = 1; i < options.size() && v > 0; ++i)
          v = std::min(v, child(guess, options[i]));
      } else {
        for (const auto& [door, q] : reveal_distribution(config_.reveal, remaining_, options))
          v += q * child(guess, door);
      }
      total += p * v;
    }
    if (memoize_) memo_.emplace(std::move(key), total);
    return total;
  }

  Rational child(GuessSet guess, int door) {
    history_.events.push_back({guess, door});
    --remaining_[door];
    --left_;
    Rational v = node();
    ++left_;
    ++remaining_[door];
    history_.events.pop_back();
    return v;
  }

  const GameConfig& config_;
  const SearcherStrategy& searcher_;
  const SolverOptions& options_;
  bool require_deterministic_;
  bool memoize_;
  std::uint64_t nodes_ = 0;
  std::vector<int> tags_;
  std::vector<int> remaining_;
  int left_ = 0;
  History history_;
  std::unordered_map<std::string, Rational> memo_;
};

// Backward induction for the searcher against a fixed hider. Values are
// joint probabilities (unnormalized by the probability of the history).
class BestResponder {
 public:
  struct Weighted {
    std::size_t index;
    Rational weight;
  };

  BestResponder(const GameConfig& config, HiderStrategy hider,
                const SolverOptions& options)
      : config_(config),
        hider_(std::move(hider)),
        options_(options),
        guesses_(all_guesses(config.n, config.k)),
        found_(config.n, 0),
        memoize_(hider_.symmetric() && config.reveal != Reveal::lowest_index) {}

  Rational solve() {
    std::vector<Weighted> belief;
    for (std::size_t i = 0; i < hider_.distribution().size(); ++i)
      belief.push_back({i, hider_.distribution()[i].probability});
    return node(belief);
  }

 private:
  std::vector<int> remaining(std::size_t index) const {
    auto rem = hider_.distribution()[index].allocation.counts;
    for (int door = 0; door < config_.n; ++door) rem[door] -= found_[door];
    return rem;
  }

  Rational node(const std::vector<Weighted>& belief) {
    if (++nodes_ > options_.node_budget)
      throw BudgetExceeded("best response exceeded the node budget of " +
                           std::to_string(options_.node_budget));
    std::string key;
    if (memoize_) {
      key = canonical_key(history_, config_.n);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const bool last_round = history_.rounds() == config_.d - 1;
    Rational best = 0;
    for (GuessSet guess : guesses_) {
      Rational value = 0;
      std::map<int, std::vector<Weighted>> children;
      for (const auto& [index, weight] : belief) {
        const auto rem = remaining(index);
        const auto options = reveal_options(rem, guess);
        if (options.empty()) continue;
        if (last_round) {
          value += weight;
        } else if (config_.reveal == Reveal::adversarial) {
          if (options.size() > 1)
            throw AdversarialRevealUnsupported(
                "hider faces a strategic reveal choice; use the sequence-form LP");
          children[options.front()].push_back({index, weight});
        } else {
          for (const auto& [door, q] : reveal_distribution(config_.reveal, rem, options))
            children[door].push_back({index, weight * q});
        }
      }
      for (const auto& [door, sub] : children) {
        history_.events.push_back({guess, door});
        ++found_[door];
        value += node(sub);
        --found_[door];
        history_.events.pop_back();
      }
      if (value > best) best = value;
    }
    if (memoize_) memo_.emplace(std::move(key), best);
    return best;
  }

  const GameConfig& config_;
  HiderStrategy hider_;
  const SolverOptions& options_;
  std::vector<GuessSet> guesses_;
  std::vector<int> found_;
  History history_;
  bool memoize_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<std::string, Rational> memo_;
};

// Behavioral strategy read off a door-symmetric realization plan.
class PlanSearcher final : public SearcherStrategy {
 public:
  PlanSearcher(const GameConfig& config, std::unordered_map<std::string, Rational> weights)
      : SearcherStrategy(config),
        weights_(std::move(weights)),
        guesses_(all_guesses(config.n, config.k)) {}

  std::string name() const override { return "lp-plan"; }
  bool symmetric() const override { return true; }

  GuessDistribution guess_distribution(const History& history) const override {
    GuessDistribution out;
    Rational total = 0;
    for (GuessSet g : guesses_) {
      auto it = weights_.find(canonical_sequence_key(history, g, config().n));
      if (it == weights_.end() || it->second == 0) continue;
      out.emplace_back(g, it->second);
      total += it->second;
    }
    if (total == 0) {
      // Off-plan history: any legal behavior keeps the plan's guarantee.
      const Rational share(1, static_cast<int>(guesses_.size()));
      for (GuessSet g : guesses_) out.emplace_back(g, share);
      return out;
    }
    for (auto& entry : out) entry.second /= total;
    return out;
  }

 private:
  std::unordered_map<std::string, Rational> weights_;
  std::vector<GuessSet> guesses_;
};

// Sequence-form LP over door-symmetric searcher plans.
//
// Variables: x (one per orbit of searcher sequences), w (value of a
// canonical (allocation, history) state, weighted by realization), z (value
// of an adversarial reveal node), v (game value). Rows, all "<=":
//   sum_g x(I,g) - x(parent(I)) <= 0   (root: <= 1)
//   w(s) - sum of guess contributions <= 0
//   z - w(child) <= 0                  for each reveal option
//   v - w(root of mu) <= 0             for one allocation per shape
// Contributions are nonnegative in x, so sub-stochastic plans never beat
// the stochastic optimum and the relaxation is exact.
class SequenceFormBuilder {
 public:
  SequenceFormBuilder(const GameConfig& config, const SolverOptions& options)
      : config_(config), options_(options), guesses_(all_guesses(config.n, config.k)) {}

  ValueReport solve() {
    value_var_ = problem_.add_var();
    problem_.objective[value_var_] = 1;
    std::vector<Allocation> representatives;
    for (const auto& shape : enumerate_partitions(config_.d, config_.n)) {
      if (config_.occupancy == Occupancy::single && shape.parts().front() > 1) continue;
      Allocation mu{std::vector<int>(config_.n, 0)};
      for (int i = 0; i < shape.num_parts(); ++i) mu.counts[i] = shape.parts()[i];
      tags_ = mu.counts;
      remaining_ = mu.counts;
      left_ = config_.d;
      history_.events.clear();
      const std::size_t root = state();
      value_rows_.push_back(problem_.rows.size());
      problem_.rows.push_back({{{value_var_, Rational(1)}, {root, Rational(-1)}}, 0});
      representatives.push_back(std::move(mu));
    }

    const auto solution = lp::maximize(problem_);

    auto certificate = std::make_shared<LpCertificate>();
    certificate->rows = problem_.rows.size();
    certificate->columns = problem_.num_vars;
    certificate->pivots = solution.pivots;
    certificate->dual_objective = solution.objective;

    std::unordered_map<std::string, Rational> weights;
    for (const auto& [key, var] : sequence_vars_)
      if (solution.primal[var] != 0) weights.emplace(key, solution.primal[var]);
    auto strategy = std::make_shared<PlanSearcher>(config_, weights);
    certificate->strategy = strategy;

    for (const auto& rep : infoset_reps_) {
      const auto dist = strategy->guess_distribution(rep);
      bool reached = false;
      for (const auto& [g, p] : dist)
        if (weights.count(canonical_sequence_key(rep, g, config_.n))) reached = true;
      if (!reached) continue;
      for (const auto& [g, p] : dist) {
        auto it = weights.find(canonical_sequence_key(rep, g, config_.n));
        certificate->plan.push_back({rep, g, p, it == weights.end() ? Rational(0) : it->second});
      }
    }

    Rational dual_total = 0;
    for (std::size_t row : value_rows_) dual_total += solution.dual[row];
    if (dual_total > 0) {
      const auto all = enumerate_allocations(config_.n, config_.d, config_.occupancy);
      for (std::size_t r = 0; r < representatives.size(); ++r) {
        const Rational& y = solution.dual[value_rows_[r]];
        if (y == 0) continue;
        const Partition shape = representatives[r].shape();
        const Rational orbit(partition_weight(shape, config_.n));
        for (const auto& a : all)
          if (a.shape() == shape) certificate->hider.push_back({a, y / dual_total / orbit});
      }
    }

    ValueReport report;
    report.config = config_;
    report.method = ValueMethod::lp;
    report.value = solution.primal[value_var_];
    report.strategy = strategy->name();
    fill_bounds(report);

    const auto check = hider_best_response_value(config_, *strategy, options_);
    if (check.value != report.value)
      throw InternalError("lp plan guarantees " + to_string(check.value) +
                          " but the lp value is " + to_string(report.value));
    certificate->plan_guarantee = check.value;
    report.allocation_values = check.allocation_values;
    report.worst_allocation = check.worst_allocation;
    report.certificate = std::move(certificate);
    return report;
  }

 private:
  std::size_t new_var() {
    if (problem_.num_vars >= options_.lp_column_budget)
      throw BudgetExceeded("sequence-form lp exceeded the column budget of " +
                           std::to_string(options_.lp_column_budget));
    return problem_.add_var();
  }

  std::size_t sequence_var(const History& history, GuessSet guess) {
    auto key = canonical_sequence_key(history, guess, config_.n);
    if (auto it = sequence_vars_.find(key); it != sequence_vars_.end()) return it->second;
    const std::size_t var = new_var();
    sequence_vars_.emplace(std::move(key), var);
    return var;
  }

  void ensure_infoset() {
    auto key = canonical_key(history_, config_.n);
    if (!infosets_.insert(std::move(key)).second) return;
    infoset_reps_.push_back(history_);
    lp::Constraint row;
    for (GuessSet g : guesses_) row.terms.push_back({sequence_var(history_, g), Rational(1)});
    if (history_.events.empty()) {
      row.rhs = 1;
    } else {
      History parent = history_;
      const GuessSet last = parent.events.back().guess;
      parent.events.pop_back();
      row.terms.push_back({sequence_var(parent, last), Rational(-1)});
      row.rhs = 0;
    }
    problem_.rows.push_back(std::move(row));
  }

  std::size_t state() {
    auto key = canonical_key(history_, config_.n, &tags_);
    if (auto it = state_vars_.find(key); it != state_vars_.end()) return it->second;
    if (state_vars_.size() >= options_.node_budget)
      throw BudgetExceeded("sequence-form lp exceeded the node budget of " +
                           std::to_string(options_.node_budget));
    const std::size_t w = new_var();
    state_vars_.emplace(std::move(key), w);
    ensure_infoset();

    lp::Constraint row;
    row.terms.push_back({w, Rational(1)});
    row.rhs = 0;
    for (GuessSet guess : guesses_) {
      const auto options = reveal_options(remaining_, guess);
      if (options.empty()) continue;
      const std::size_t x = sequence_var(history_, guess);
      if (left_ == 1) {
        row.terms.push_back({x, Rational(-1)});
      } else if (options.size() == 1) {
        row.terms.push_back({child(guess, options.front()), Rational(-1)});
      } else if (config_.reveal == Reveal::adversarial) {
        const std::size_t z = new_var();
        row.terms.push_back({z, Rational(-1)});
        for (int door : options) {
          const std::size_t c = child(guess, door);
          problem_.rows.push_back({{{z, Rational(1)}, {c, Rational(-1)}}, 0});
        }
      } else {
        for (const auto& [door, q] : reveal_distribution(config_.reveal, remaining_, options))
          row.terms.push_back({child(guess, door), -q});
      }
    }
    problem_.rows.push_back(std::move(row));
    return w;
  }

  std::size_t child(GuessSet guess, int door) {
    history_.events.push_back({guess, door});
    --remaining_[door];
    --left_;
    const std::size_t w = state();
    ++left_;
    ++remaining_[door];
    history_.events.pop_back();
    return w;
  }

  const GameConfig& config_;
  const SolverOptions& options_;
  std::vector<GuessSet> guesses_;
  lp::Problem problem_;
  std::size_t value_var_ = 0;
  std::vector<std::size_t> value_rows_;
  std::unordered_map<std::string, std::size_t> sequence_vars_;
  std::unordered_map<std::string, std::size_t> state_vars_;
  std::unordered_set<std::string> infosets_;
  std::vector<History> infoset_reps_;
  std::vector<int> tags_;
  std::vector<int> remaining_;
  int left_ = 0;
  History history_;
};

}  // namespace

Rational evaluate_exact(const GameConfig& config, const SearcherStrategy& searcher,
                        const Allocation& allocation, const SolverOptions& options) {
  config.validate();
  Evaluator evaluator(config, searcher, options);
  return evaluator.evaluate(allocation);
}

ValueReport hider_best_response_value(const GameConfig& config,
                                      const SearcherStrategy& searcher,
                                      const SolverOptions& options) {
  config.validate();
  Evaluator evaluator(config, searcher, options);
  ValueReport report;
  report.config = config;
  report.method = ValueMethod::hider_best_response;
  report.strategy = searcher.name();
  bool first = true;
  for (auto& allocation : enumerate_allocations(config.n, config.d, config.occupancy)) {
    Rational v = evaluator.evaluate(allocation);
    if (first || v < report.value) {
      report.value = v;
      report.worst_allocation = allocation;
      first = false;
    }
    report.allocation_values.emplace_back(std::move(allocation), std::move(v));
  }
  fill_bounds(report);
  return report;
}

ValueReport searcher_best_response_value(const GameConfig& config,
                                         const HiderStrategy& hider,
                                         const SolverOptions& options) {
  config.validate();
  BestResponder responder(config, hider.with_reveal(config.reveal), options);
  ValueReport report;
  report.config = config;
  report.method = ValueMethod::searcher_best_response;
  report.strategy = hider.name();
  report.value = responder.solve();
  fill_bounds(report);
  return report;
}

ValueReport sequence_form_value(const GameConfig& config, const SolverOptions& options) {
  config.validate();
  if (config.reveal == Reveal::lowest_index)
    throw InvalidArgument(
        "lowest-index reveal is not door-symmetric; the lp supports adversarial, "
        "uniform-doors and uniform-treasures");
  SequenceFormBuilder builder(config, options);
  return builder.solve();
}

WinSet deterministic_win_set(const GameConfig& config, const SearcherStrategy& searcher,
                             const SolverOptions& options) {
  GameConfig adversarial = config;
  adversarial.reveal = Reveal::adversarial;
  adversarial.validate();
  Evaluator evaluator(adversarial, searcher, options, /*require_deterministic=*/true);
  WinSet out{searcher.name(), {}};
  for (auto& allocation : enumerate_allocations(config.n, config.d, config.occupancy))
    if (evaluator.evaluate(allocation) == 1) out.allocations.push_back(std::move(allocation));
  return out;
}

ValueReport closed_form_value(const GameConfig& config) {
  config.validate();
  ValueReport report;
  report.config = config;
  report.method = ValueMethod::closed_form;
  report.value = counting_bound(config);
  fill_bounds(report);
  const Rational& formula = report.counting_bound;
  const int dk = config.d * config.k;
  if (config.occupancy == Occupancy::single) {
    if (config.n >= dk) {
      report.applicability = "certified";
      report.notes.push_back("fresh-k searcher attains the counting bound (n >= d*k)");
    } else {
      report.applicability = "upper-bound-only";
      report.value = std::min(formula, Rational(1));
      report.notes.push_back("n < d*k: no bundled strategy attains the counting bound");
    }
    report.tight = report.applicability == "certified";
    return report;
  }

  const Rational& cap = *report.one_door_cap;
  if (formula > cap) {
    report.applicability = "formula-not-tight";
    report.value = std::min(cap, Rational(1));
    report.notes.push_back("all-in-one hiding caps the value at k/n = " + to_string(cap) +
                           " below the formula " + to_string(formula));
  } else {
    try {
      scaled_table(config.n, config.d, config.k);
      report.applicability = "certified";
      report.notes.push_back("scaled p-table strategy attains the counting bound");
    } catch (const ExceedsUnit& e) {
      report.applicability = "not-certified-by-scaling";
      std::string diagram = Partition(e.diagram()).str();
      report.notes.push_back("scaled entry p" + diagram + " = " + e.value() +
                             " > 1; certify with a custom p-table");
    } catch (const DoorBudget&) {
      report.applicability = "not-certified-by-scaling";
      report.notes.push_back("n < d*k: no scaled p-table exists");
    }
  }
  report.tight = report.applicability == "certified";
  return report;
}

}  // namespace treasure
