// Independent reference computations used only by tests. Nothing here calls
// the code paths it is used to check.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "treasure/combinatorics.hpp"
#include "treasure/game.hpp"
#include "treasure/rational.hpp"
#include "treasure/strategies.hpp"

namespace oracle {

using treasure::BigInt;
using treasure::Rational;

// Pascal's triangle.
inline BigInt pascal(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::vector<BigInt> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, 0);
    next[0] = next[i] = 1;
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[r];
}

// Every count vector in [0,cap]^n with sum d, by odometer over base cap+1.
inline std::vector<std::vector<int>> brute_allocations(int n, int d, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> digits(n, 0);
  while (true) {
    int sum = 0;
    for (int v : digits) sum += v;
    if (sum == d) out.push_back(digits);
    int i = n - 1;
    while (i >= 0 && digits[i] == cap) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return out;
}

inline std::vector<int> sorted_shape(const std::vector<int>& counts) {
  std::vector<int> parts;
  for (int c : counts)
    if (c > 0) parts.push_back(c);
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

// Number of allocations of d treasures over n doors with the given shape.
inline BigInt brute_shape_count(const std::vector<int>& shape, int n) {
  int d = 0;
  for (int c : shape) d += c;
  BigInt count = 0;
  for (const auto& a : brute_allocations(n, d, d))
    if (sorted_shape(a) == shape) ++count;
  return count;
}

// Exhaustive expansion of the k = 1 searcher that draws an allocation
// uniformly, digs out each door completely, and always moves on to an
// unguessed door with the most treasures (ties uniformly at random).
// For each action prefix (doors in order) it records the probability of the
// prefix and of every next action.
class MimicTree {
 public:
  MimicTree(int n, int d) : n_(n), d_(d) {
    const auto allocations = brute_allocations(n, d, d);
    const Rational prior(1, static_cast<int>(allocations.size()));
    for (const auto& mu : allocations) {
      std::vector<int> actions;
      std::vector<bool> guessed(n, false);
      expand(mu, actions, guessed, -1, 0, prior);
    }
  }

  struct Node {
    Rational mass = 0;
    std::map<int, Rational> next;
  };

  const std::map<std::vector<int>, Node>& nodes() const { return nodes_; }

  // Conditional next-action distribution after the prefix.
  std::map<int, Rational> conditional(const std::vector<int>& prefix) const {
    std::map<int, Rational> out;
    auto it = nodes_.find(prefix);
    if (it == nodes_.end()) return out;
    for (const auto& [door, m] : it->second.next) out[door] = m / it->second.mass;
    return out;
  }

  // Found counts along the discovery order of a prefix.
  static std::vector<int> diagram_of(const std::vector<int>& prefix) {
    std::vector<int> order;
    std::map<int, int> counts;
    for (int door : prefix) {
      if (!counts.count(door)) order.push_back(door);
      ++counts[door];
    }
    std::vector<int> parts;
    for (int door : order) parts.push_back(counts[door]);
    return parts;
  }

 private:
  void expand(const std::vector<int>& mu, std::vector<int>& actions,
              std::vector<bool>& guessed, int current, int dug, const Rational& mass) {
    if (static_cast<int>(actions.size()) == d_) return;
    auto& node = nodes_[actions];
    node.mass += mass;
    std::vector<int> choices;
    if (current >= 0 && mu[current] > dug) {
      choices.push_back(current);
    } else {
      int best = -1;
      for (int door = 0; door < n_; ++door)
        if (!guessed[door]) best = std::max(best, mu[door]);
      for (int door = 0; door < n_; ++door)
        if (!guessed[door] && mu[door] == best) choices.push_back(door);
    }
    const Rational share = mass / static_cast<int>(choices.size());
    for (int door : choices) {
      nodes_[actions].next[door] += share;
      const bool fresh = !guessed[door];
      actions.push_back(door);
      guessed[door] = true;
      expand(mu, actions, guessed, door, door == current ? dug + 1 : 1, share);
      actions.pop_back();
      if (fresh) guessed[door] = false;
    }
  }

  int n_;
  int d_;
  std::map<std::vector<int>, Node> nodes_;
};

// The same searcher as a behavioral strategy: conditions the expansion on
// the revealed doors so far.
class MimicSearcher final : public treasure::SearcherStrategy {
 public:
  explicit MimicSearcher(const treasure::GameConfig& config)
      : SearcherStrategy(config), tree_(config.n, config.d) {}

  std::string name() const override { return "mimic-oracle"; }

  treasure::GuessDistribution guess_distribution(
      const treasure::History& history) const override {
    std::vector<int> prefix;
    for (const auto& e : history.events) prefix.push_back(e.revealed);
    treasure::GuessDistribution out;
    for (const auto& [door, p] : tree_.conditional(prefix))
      out.emplace_back(treasure::GuessSet::of({door}), p);
    return out;
  }

 private:
  MimicTree tree_;
};

inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic searcher picking a pseudo-random legal guess per history.
inline treasure::SearcherPtr random_deterministic(const treasure::GameConfig& config,
                                                  std::uint64_t seed) {
  auto guesses = std::make_shared<std::vector<treasure::GuessSet>>(
      treasure::all_guesses(config.n, config.k));
  return treasure::make_searcher_deterministic(
      config, "random-det-" + std::to_string(seed),
      [guesses, seed](const treasure::History& h) {
        const std::uint64_t hash = mix(seed ^ std::hash<std::string>{}(h.str()));
        return (*guesses)[hash % guesses->size()];
      });
}

}  // namespace oracle
