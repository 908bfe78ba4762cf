#include "treasure/strategies.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "treasure/errors.hpp"
#include "treasure/young.hpp"

namespace treasure {

namespace {

// All size-r subsets of pool, each OR-ed with `base`.
void subsets(const std::vector<int>& pool, int r, std::uint64_t base,
             std::vector<GuessSet>& out) {
  const int m = static_cast<int>(pool.size());
  if (r > m) return;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::uint64_t mask = base;
    for (int i : idx) mask |= std::uint64_t{1} << pool[i];
    out.emplace_back(mask);
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> fresh_doors(const History& history, int n) {
  const GuessSet guessed = history.guessed();
  std::vector<int> fresh;
  for (int door = 0; door < n; ++door)
    if (!guessed.contains(door)) fresh.push_back(door);
  return fresh;
}

void append_uniform(std::vector<GuessSet>& guesses, const Rational& mass,
                    GuessDistribution& out) {
  if (mass == 0 || guesses.empty()) return;
  const Rational share = mass / static_cast<int>(guesses.size());
  for (auto g : guesses) out.emplace_back(g, share);
}

class FreshKSearcher final : public SearcherStrategy {
 public:
  using SearcherStrategy::SearcherStrategy;

  std::string name() const override { return "fresh-k"; }
  bool symmetric() const override { return true; }

  GuessDistribution guess_distribution(const History& history) const override {
    const auto fresh = fresh_doors(history, config().n);
    if (static_cast<int>(fresh.size()) < config().k)
      throw DoorBudget("fresh-k ran out of never-guessed doors");
    std::vector<GuessSet> guesses;
    subsets(fresh, config().k, 0, guesses);
    GuessDistribution out;
    append_uniform(guesses, Rational(1), out);
    return out;
  }

  GuessSet sample_guess(const History& history, std::mt19937_64& rng) const override {
    return random_subset(fresh_doors(history, config().n), config().k, rng);
  }
};

class PTableSearcher final : public SearcherStrategy {
 public:
  PTableSearcher(const GameConfig& config, PTable table, std::string name)
      : SearcherStrategy(config), table_(std::move(table)), name_(std::move(name)) {}

  std::string name() const override { return name_; }
  bool symmetric() const override { return true; }

  GuessDistribution guess_distribution(const History& history) const override {
    const int k = config().k;
    const auto fresh = fresh_doors(history, config().n);
    GuessDistribution out;
    if (history.events.empty()) {
      std::vector<GuessSet> guesses;
      subsets(fresh, k, 0, guesses);
      require(guesses.size(), "first");
      append_uniform(guesses, Rational(1), out);
      return out;
    }
    const auto [p, current] = decision(history);
    if (p > 0) {
      std::vector<GuessSet> guesses;
      subsets(fresh, k - 1, std::uint64_t{1} << current, guesses);
      require(guesses.size(), "continuation");
      append_uniform(guesses, p, out);
    }
    if (p < 1) {
      std::vector<GuessSet> guesses;
      subsets(fresh, k, 0, guesses);
      require(guesses.size(), "switching");
      append_uniform(guesses, 1 - p, out);
    }
    return out;
  }

  GuessSet sample_guess(const History& history, std::mt19937_64& rng) const override {
    const int k = config().k;
    auto fresh = fresh_doors(history, config().n);
    if (history.events.empty()) return random_subset(std::move(fresh), k, rng);
    const auto [p, current] = decision(history);
    if (bernoulli(p, rng)) return random_subset(std::move(fresh), k - 1, rng).with(current);
    return random_subset(std::move(fresh), k, rng);
  }

 private:
  std::pair<Rational, int> decision(const History& history) const {
    if (history.events.back().revealed == kLoss)
      throw InvalidArgument("game already lost");
    const auto view = history_to_diagram(history);
    return {table_.at(view.diagram), view.current_door};
  }

  static void require(std::size_t available, const char* what) {
    if (available == 0)
      throw DoorBudget(std::string("no fresh doors left for the ") + what + " guess");
  }

  PTable table_;
  std::string name_;
};

class FunctionSearcher final : public SearcherStrategy {
 public:
  FunctionSearcher(const GameConfig& config, std::string name,
                   std::function<GuessSet(const History&)> rule)
      : SearcherStrategy(config), name_(std::move(name)), rule_(std::move(rule)) {}

  std::string name() const override { return name_; }

  GuessDistribution guess_distribution(const History& history) const override {
    return {{rule_(history), Rational(1)}};
  }

  GuessSet sample_guess(const History& history, std::mt19937_64&) const override {
    return rule_(history);
  }

 private:
  std::string name_;
  std::function<GuessSet(const History&)> rule_;
};

}  // namespace

HiderStrategy::HiderStrategy(GameConfig config, std::vector<WeightedAllocation> distribution,
                             std::string name)
    : config_(config), name_(std::move(name)) {
  config_.validate();
  std::map<Allocation, Rational> merged;
  for (auto& entry : distribution) {
    validate_allocation(config_, entry.allocation);
    if (entry.probability <= 0)
      throw InvalidArgument("hider probabilities must be positive");
    merged[entry.allocation] += entry.probability;
  }
  Rational total = 0;
  for (auto& [allocation, p] : merged) {
    total += p;
    distribution_.push_back({allocation, p});
  }
  if (total != 1)
    throw InvalidArgument("hider probabilities sum to " + to_string(total) + ", not 1");

  // Symmetric iff each shape class is fully present with equal weights.
  std::map<Partition, std::pair<BigInt, Rational>> by_shape;
  symmetric_ = true;
  for (const auto& [allocation, p] : merged) {
    auto [it, inserted] = by_shape.try_emplace(allocation.shape(), BigInt(0), p);
    it->second.first += 1;
    if (it->second.second != p) symmetric_ = false;
  }
  for (const auto& [shape, info] : by_shape)
    if (info.first != partition_weight(shape, config_.n)) symmetric_ = false;
}

HiderStrategy HiderStrategy::with_reveal(Reveal reveal) const {
  HiderStrategy copy = *this;
  copy.config_.reveal = reveal;
  return copy;
}

HiderStrategy make_hider_uniform(const GameConfig& config) {
  config.validate();
  auto allocations = enumerate_allocations(config.n, config.d, config.occupancy);
  const Rational share(1, static_cast<int>(allocations.size()));
  std::vector<WeightedAllocation> distribution;
  for (auto& a : allocations) distribution.push_back({std::move(a), share});
  return HiderStrategy(config, std::move(distribution), "uniform");
}

HiderStrategy make_hider_all_in_one(const GameConfig& config) {
  config.validate();
  if (config.occupancy == Occupancy::single && config.d > 1)
    throw InvalidArgument("all-in-one hiding needs multi occupancy when d > 1");
  std::vector<WeightedAllocation> distribution;
  for (int door = 0; door < config.n; ++door) {
    Allocation a{std::vector<int>(config.n, 0)};
    a.counts[door] = config.d;
    distribution.push_back({std::move(a), Rational(1, config.n)});
  }
  return HiderStrategy(config, std::move(distribution), "all-in-one");
}

GuessSet SearcherStrategy::sample_guess(const History& history, std::mt19937_64& rng) const {
  const auto dist = guess_distribution(history);
  BigInt common = 1;
  for (const auto& [g, p] : dist) common = boost::multiprecision::lcm(common, denominator_of(p));
  if (common <= std::numeric_limits<std::uint64_t>::max()) {
    const auto limit = common.convert_to<std::uint64_t>();
    std::uniform_int_distribution<std::uint64_t> pick(0, limit - 1);
    BigInt u = pick(rng);
    BigInt acc = 0;
    for (const auto& [g, p] : dist) {
      acc += numerator_of(p) * (common / denominator_of(p));
      if (u < acc) return g;
    }
  } else {
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    double u = pick(rng);
    for (const auto& [g, p] : dist) {
      u -= to_double(p);
      if (u < 0) return g;
    }
  }
  return dist.back().first;
}

GuessDistribution guess_distribution(const SearcherStrategy& strategy,
                                     const History& history) {
  auto dist = strategy.guess_distribution(history);
  if (dist.empty()) throw InvalidArgument(strategy.name() + " emitted no guess");
  Rational total = 0;
  std::vector<GuessSet> seen;
  seen.reserve(dist.size());
  for (const auto& [g, p] : dist) {
    if (!g.legal(strategy.config()))
      throw InvalidArgument(strategy.name() + " emitted illegal guess " + g.str());
    if (p <= 0) throw InvalidArgument(strategy.name() + " emitted a nonpositive probability");
    total += p;
    seen.push_back(g);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InvalidArgument(strategy.name() + " emitted a guess twice");
  if (total != 1)
    throw InvalidArgument(strategy.name() + " probabilities sum to " + to_string(total));
  return dist;
}

SearcherPtr make_searcher_fresh_k(const GameConfig& config) {
  config.validate();
  if (config.n < config.d * config.k)
    throw DoorBudget("fresh-k needs n >= d*k (" + std::to_string(config.n) + " < " +
                     std::to_string(config.d * config.k) + ")");
  return std::make_shared<FreshKSearcher>(config);
}

SearcherPtr make_searcher_ptable(const GameConfig& config, PTable table) {
  config.validate();
  if (table.n != config.n || table.d != config.d || table.k != config.k)
    throw InvalidTable("p-table parameters do not match the game");
  // n >= d*k is sufficient but not necessary: a table with some entries at
  // 0 or 1 can get by with fewer doors. Shortfalls surface as DoorBudget
  // when a branch of positive probability runs out of fresh doors.
  table.validate();
  return std::make_shared<PTableSearcher>(config, std::move(table), "ptable");
}

SearcherPtr make_searcher_mu_mimic(const GameConfig& config) {
  config.validate();
  if (config.k != 1) throw InvalidArgument("mu-mimic is the k = 1 strategy");
  if (config.occupancy != Occupancy::multi)
    throw InvalidArgument("mu-mimic needs multi occupancy");
  // No door budget: with k = 1 a fresh door is requested only while one exists.
  return std::make_shared<PTableSearcher>(config, base_table(config.n, config.d),
                                          "mu-mimic");
}

SearcherPtr make_searcher_deterministic(const GameConfig& config, std::string name,
                                        std::function<GuessSet(const History&)> rule) {
  config.validate();
  return std::make_shared<FunctionSearcher>(config, std::move(name), std::move(rule));
}

bool bernoulli(const Rational& p, std::mt19937_64& rng) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  const BigInt den = denominator_of(p);
  if (den <= std::numeric_limits<std::uint64_t>::max()) {
    std::uniform_int_distribution<std::uint64_t> pick(0, den.convert_to<std::uint64_t>() - 1);
    return BigInt(pick(rng)) < numerator_of(p);
  }
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  return pick(rng) < to_double(p);
}

GuessSet random_subset(std::vector<int> pool, int k, std::mt19937_64& rng) {
  const int m = static_cast<int>(pool.size());
  if (k > m) throw DoorBudget("not enough fresh doors to sample from");
  std::uint64_t mask = 0;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, m - 1);
    std::swap(pool[i], pool[pick(rng)]);
    mask |= std::uint64_t{1} << pool[i];
  }
  return GuessSet(mask);
}

}  // namespace treasure
