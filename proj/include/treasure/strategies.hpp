#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "treasure/combinatorics.hpp"
#include "treasure/game.hpp"
#include "treasure/ptable.hpp"
#include "treasure/rational.hpp"

namespace treasure {

struct WeightedAllocation {
  Allocation allocation;
  Rational probability;
};

/// A mixed hiding strategy. Reveals follow the config's reveal rule.
class HiderStrategy {
 public:
  /// Validates every allocation against the config, merges duplicates and
  /// requires positive probabilities summing to exactly one.
  HiderStrategy(GameConfig config, std::vector<WeightedAllocation> distribution,
                std::string name = "custom");

  const GameConfig& config() const { return config_; }
  Reveal reveal_mode() const { return config_.reveal; }
  const std::vector<WeightedAllocation>& distribution() const { return distribution_; }
  const std::string& name() const { return name_; }

  /// True when every door relabeling leaves the distribution unchanged.
  bool symmetric() const { return symmetric_; }

  /// Same distribution, another reveal rule.
  HiderStrategy with_reveal(Reveal reveal) const;

 private:
  GameConfig config_;
  std::vector<WeightedAllocation> distribution_;
  std::string name_;
  bool symmetric_ = false;
};

HiderStrategy make_hider_uniform(const GameConfig& config);

/// All d treasures behind one uniformly chosen door.
HiderStrategy make_hider_all_in_one(const GameConfig& config);

using GuessDistribution = std::vector<std::pair<GuessSet, Rational>>;

/// Behavioral searcher strategy: a guess distribution for every observable
/// history.
class SearcherStrategy {
 public:
  explicit SearcherStrategy(GameConfig config) : config_(config) {}
  virtual ~SearcherStrategy() = default;

  const GameConfig& config() const { return config_; }
  virtual std::string name() const = 0;
  virtual GuessDistribution guess_distribution(const History& history) const = 0;

  /// Draws one guess. The default samples guess_distribution exactly.
  virtual GuessSet sample_guess(const History& history, std::mt19937_64& rng) const;

  /// True when relabeling the doors of a history relabels the distribution
  /// the same way. Enables memoization on canonical histories.
  virtual bool symmetric() const { return false; }

 private:
  GameConfig config_;
};

using SearcherPtr = std::shared_ptr<const SearcherStrategy>;

/// Checked access: every guess legal, probabilities positive and summing to
/// exactly one.
GuessDistribution guess_distribution(const SearcherStrategy& strategy,
                                     const History& history);

/// Uniform over k-subsets of never-guessed doors each round. Needs n >= d*k.
SearcherPtr make_searcher_fresh_k(const GameConfig& config);

/// Re-guess the current door plus k-1 fresh doors with probability
/// table[lambda], otherwise k fresh doors. Throws DoorBudget during play if
/// a positive-probability branch needs more fresh doors than remain.
SearcherPtr make_searcher_ptable(const GameConfig& config, PTable table);

/// k = 1 strategy that follows a uniformly drawn allocation, realized
/// through the exact continuation probabilities p_lambda(n,d,1).
SearcherPtr make_searcher_mu_mimic(const GameConfig& config);

/// One guess per history, given by a function.
SearcherPtr make_searcher_deterministic(
    const GameConfig& config, std::string name,
    std::function<GuessSet(const History&)> rule);

/// Exact Bernoulli draw with probability p.
bool bernoulli(const Rational& p, std::mt19937_64& rng);

/// Uniform k-subset of `pool`, drawn by partial Fisher-Yates.
GuessSet random_subset(std::vector<int> pool, int k, std::mt19937_64& rng);

}  // namespace treasure
