#include "treasure/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "treasure/errors.hpp"

namespace treasure {

Rational McReport::estimate() const {
  if (trials == 0) return 0;
  return Rational(BigInt(wins), BigInt(trials));
}

double McReport::stderr_estimate() const {
  if (trials == 0) return 0;
  const double p = static_cast<double>(wins) / static_cast<double>(trials);
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (batch + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void require_chance_reveal(const GameConfig& config) {
  if (config.reveal == Reveal::adversarial)
    throw InvalidArgument("simulation needs a chance reveal rule; adversarial reveal is solver-only");
}

class AllocationSampler {
 public:
  explicit AllocationSampler(const HiderStrategy& hider) : hider_(hider) {
    BigInt common = 1;
    for (const auto& e : hider.distribution())
      common = boost::multiprecision::lcm(common, denominator_of(e.probability));
    exact_ = common <= std::numeric_limits<std::uint64_t>::max();
    if (exact_) {
      BigInt acc = 0;
      for (const auto& e : hider.distribution()) {
        acc += numerator_of(e.probability) * (common / denominator_of(e.probability));
        thresholds_.push_back(acc.convert_to<std::uint64_t>());
      }
    } else {
      double acc = 0;
      for (const auto& e : hider.distribution()) {
        acc += to_double(e.probability);
        cumulative_.push_back(acc);
      }
    }
  }

  const Allocation& draw(std::mt19937_64& rng) const {
    std::size_t index = 0;
    if (exact_) {
      std::uniform_int_distribution<std::uint64_t> pick(0, thresholds_.back() - 1);
      const std::uint64_t u = pick(rng);
      index = std::upper_bound(thresholds_.begin(), thresholds_.end(), u) - thresholds_.begin();
    } else {
      std::uniform_real_distribution<double> pick(0.0, cumulative_.back());
      const double u = pick(rng);
      index = std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
      index = std::min(index, cumulative_.size() - 1);
    }
    return hider_.distribution()[index].allocation;
  }

 private:
  const HiderStrategy& hider_;
  bool exact_ = true;
  std::vector<std::uint64_t> thresholds_;
  std::vector<double> cumulative_;
};

int draw_reveal(Reveal rule, const std::vector<int>& remaining,
                const std::vector<int>& options, std::mt19937_64& rng) {
  switch (rule) {
    case Reveal::lowest_index:
      return options.front();
    case Reveal::uniform_doors: {
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      return options[pick(rng)];
    }
    case Reveal::uniform_treasures: {
      int total = 0;
      for (int door : options) total += remaining[door];
      std::uniform_int_distribution<int> pick(0, total - 1);
      int u = pick(rng);
      for (int door : options) {
        u -= remaining[door];
        if (u < 0) return door;
      }
      return options.back();
    }
    case Reveal::adversarial:
      break;
  }
  throw InvalidArgument("adversarial reveal cannot be simulated");
}

}  // namespace

std::uint64_t run_batch(const GameConfig& config, const SearcherStrategy& searcher,
                        const HiderStrategy& hider, std::uint64_t trials,
                        std::uint64_t batch_seed_value) {
  require_chance_reveal(config);
  std::mt19937_64 rng(batch_seed_value);
  const AllocationSampler sampler(hider);
  std::uint64_t wins = 0;
  History history;
  std::vector<int> remaining;
  for (std::uint64_t t = 0; t < trials; ++t) {
    remaining = sampler.draw(rng).counts;
    history.events.clear();
    bool won = true;
    for (int round = 0; round < config.d; ++round) {
      const GuessSet guess = searcher.sample_guess(history, rng);
      const auto options = reveal_options(remaining, guess);
      if (options.empty()) {
        won = false;
        break;
      }
      const int door = draw_reveal(config.reveal, remaining, options, rng);
      --remaining[door];
      history.events.push_back({guess, door});
    }
    if (won) ++wins;
  }
  return wins;
}

McReport run_mc(const GameConfig& config, const SearcherStrategy& searcher,
                const HiderStrategy& hider, std::uint64_t trials, std::uint64_t seed) {
  config.validate();
  require_chance_reveal(config);
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const HiderStrategy revealing = hider.with_reveal(config.reveal);

  const std::uint64_t batches = (trials + kBatchSize - 1) / kBatchSize;
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(batches, std::max(1U, std::thread::hardware_concurrency())));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::uint64_t> wins(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t b = next++; b < batches; b = next++) {
        const std::uint64_t size = std::min(kBatchSize, trials - b * kBatchSize);
        wins[w] += run_batch(config, searcher, revealing, size, batch_seed(seed, b));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  McReport report;
  report.config = config;
  report.searcher = searcher.name();
  report.hider = hider.name();
  report.trials = trials;
  report.seed = seed;
  for (auto w : wins) report.wins += w;
  return report;
}

McReport merge(const McReport& a, const McReport& b) {
  McReport out = a;
  out.trials = a.trials + b.trials;
  out.wins = a.wins + b.wins;
  return out;
}

ExactComparison compare_to_exact(const McReport& mc, const Rational& exact) {
  if (mc.trials < 100) throw InvalidArgument("compare_to_exact needs at least 100 trials");
  ExactComparison out;
  const double diff = to_double(mc.estimate() - exact);
  const double se = mc.stderr_estimate();
  if (se == 0)
    out.z_score = diff == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  else
    out.z_score = diff / se;
  out.pass = std::abs(out.z_score) <= 4.0;
  return out;
}

}  // namespace treasure
