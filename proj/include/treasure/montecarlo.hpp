#pragma once

#include <cstdint>
#include <string>

#include "treasure/game.hpp"
#include "treasure/rational.hpp"
#include "treasure/strategies.hpp"

namespace treasure {

struct McReport {
  GameConfig config;
  std::string searcher;
  std::string hider;
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  std::uint64_t seed = 0;

  Rational estimate() const;
  /// sqrt(p(1-p)/trials) with p = wins/trials.
  double stderr_estimate() const;
};

/// Trials are split into fixed-size batches; batch b draws from an
/// mt19937_64 seeded with batch_seed(seed, b). The split depends only on
/// `trials`, so results are reproducible for a given seed.
inline constexpr std::uint64_t kBatchSize = 1 << 16;

/// splitmix64 of seed + golden-ratio multiple of the batch index.
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch);

/// Plays `trials` independent games. The hider's reveal rule must be a
/// chance rule; adversarial reveal is rejected.
McReport run_mc(const GameConfig& config, const SearcherStrategy& searcher,
                const HiderStrategy& hider, std::uint64_t trials, std::uint64_t seed);

/// Wins of one batch; exposed so callers can distribute batches.
std::uint64_t run_batch(const GameConfig& config, const SearcherStrategy& searcher,
                        const HiderStrategy& hider, std::uint64_t trials,
                        std::uint64_t batch_seed_value);

/// Sums wins and trials of two runs of the same experiment.
McReport merge(const McReport& a, const McReport& b);

struct ExactComparison {
  double z_score = 0;
  bool pass = false;
};

/// z = (estimate - exact) / stderr, pass iff |z| <= 4. Needs trials >= 100.
ExactComparison compare_to_exact(const McReport& mc, const Rational& exact);

}  // namespace treasure
