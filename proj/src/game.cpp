#include "treasure/game.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "treasure/errors.hpp"

namespace treasure {

std::string to_string(Occupancy occupancy) {
  return occupancy == Occupancy::single ? "single" : "multi";
}

std::string to_string(Reveal reveal) {
  switch (reveal) {
    case Reveal::adversarial: return "adversarial";
    case Reveal::uniform_doors: return "uniform-doors";
    case Reveal::uniform_treasures: return "uniform-treasures";
    case Reveal::lowest_index: return "lowest";
  }
  return "?";
}

Occupancy parse_occupancy(const std::string& text) {
  if (text == "single") return Occupancy::single;
  if (text == "multi") return Occupancy::multi;
  throw InvalidArgument("unknown occupancy variant '" + text + "'");
}

Reveal parse_reveal(const std::string& text) {
  if (text == "adversarial") return Reveal::adversarial;
  if (text == "uniform-doors") return Reveal::uniform_doors;
  if (text == "uniform-treasures") return Reveal::uniform_treasures;
  if (text == "lowest" || text == "lowest-index") return Reveal::lowest_index;
  throw InvalidArgument("unknown reveal rule '" + text + "'");
}

void GameConfig::validate() const {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (n > kMaxDoors) throw InvalidArgument("at most 64 doors are supported");
  if (d < 1) throw InvalidArgument("d must be at least 1");
  if (k < 1 || k > n) throw InvalidArgument("k must lie in [1, n]");
  if (occupancy == Occupancy::single && d > n)
    throw InvalidArgument("single occupancy needs d <= n");
}

std::string GameConfig::str() const {
  std::ostringstream out;
  out << to_string(occupancy) << "(n=" << n << ",d=" << d << ",k=" << k
      << ",reveal=" << to_string(reveal) << ')';
  return out.str();
}

GuessSet GuessSet::of(std::initializer_list<int> doors) {
  return of(std::vector<int>(doors));
}

GuessSet GuessSet::of(const std::vector<int>& doors) {
  std::uint64_t mask = 0;
  for (int door : doors) {
    if (door < 0 || door >= kMaxDoors)
      throw InvalidArgument("door index out of range");
    const std::uint64_t bit = std::uint64_t{1} << door;
    if (mask & bit) throw InvalidArgument("duplicate door in guess");
    mask |= bit;
  }
  return GuessSet(mask);
}

std::vector<int> GuessSet::doors() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string GuessSet::str() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int door : doors()) {
    if (!first) out << ',';
    out << door;
    first = false;
  }
  out << '}';
  return out.str();
}

bool GuessSet::legal(const GameConfig& config) const {
  if (size() < 1 || size() > config.k) return false;
  return config.n >= kMaxDoors || (mask_ >> config.n) == 0;
}

std::vector<GuessSet> all_guesses(int n, int k) {
  if (n >= 20) throw InvalidArgument("all_guesses is limited to n < 20");
  std::vector<GuessSet> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t m = 1; m < limit; ++m)
    if (std::popcount(m) <= k) out.emplace_back(m);
  return out;
}

GuessSet History::guessed() const {
  std::uint64_t mask = 0;
  for (const auto& e : events) mask |= e.guess.mask();
  return GuessSet(mask);
}

std::vector<int> History::found_counts(int n) const {
  std::vector<int> counts(n, 0);
  for (const auto& e : events)
    if (e.revealed != kLoss) ++counts[e.revealed];
  return counts;
}

std::vector<int> History::discovery_order() const {
  std::vector<int> order;
  for (const auto& e : events)
    if (e.revealed != kLoss &&
        std::find(order.begin(), order.end(), e.revealed) == order.end())
      order.push_back(e.revealed);
  return order;
}

std::string History::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i) out << ' ';
    out << events[i].guess.str() << "->";
    if (events[i].revealed == kLoss)
      out << "loss";
    else
      out << events[i].revealed;
  }
  out << ']';
  return out.str();
}

int GameState::remaining_total() const {
  return std::accumulate(remaining.begin(), remaining.end(), 0);
}

int GameState::found_total() const {
  return std::accumulate(found.begin(), found.end(), 0);
}

void validate_allocation(const GameConfig& config, const Allocation& allocation) {
  if (allocation.doors() != config.n)
    throw InvalidArgument("allocation " + allocation.str() + " does not have " +
                          std::to_string(config.n) + " doors");
  for (int c : allocation.counts) {
    if (c < 0) throw InvalidArgument("negative count in allocation");
    if (config.occupancy == Occupancy::single && c > 1)
      throw InvalidArgument("allocation " + allocation.str() +
                            " puts several treasures behind one door in the "
                            "single-occupancy game");
  }
  if (allocation.total() != config.d)
    throw InvalidArgument("allocation " + allocation.str() + " does not hold " +
                          std::to_string(config.d) + " treasures");
}

GameState initial_state(const GameConfig& config, const Allocation& allocation) {
  config.validate();
  validate_allocation(config, allocation);
  GameState state;
  state.remaining = allocation.counts;
  state.found.assign(config.n, 0);
  return state;
}

std::vector<int> reveal_options(const std::vector<int>& remaining, GuessSet guess) {
  std::vector<int> options;
  for (std::uint64_t m = guess.mask(); m; m &= m - 1) {
    const int door = std::countr_zero(m);
    if (door < static_cast<int>(remaining.size()) && remaining[door] > 0)
      options.push_back(door);
  }
  return options;
}

std::vector<int> reveal_options(const GameState& state, GuessSet guess) {
  return reveal_options(state.remaining, guess);
}

std::vector<std::pair<int, Rational>> reveal_distribution(
    Reveal rule, const std::vector<int>& remaining,
    const std::vector<int>& options) {
  if (options.empty()) throw InvalidArgument("no reveal options");
  std::vector<std::pair<int, Rational>> out;
  switch (rule) {
    case Reveal::adversarial:
      throw InvalidArgument("adversarial reveal has no chance distribution");
    case Reveal::lowest_index:
      out.emplace_back(*std::min_element(options.begin(), options.end()), 1);
      break;
    case Reveal::uniform_doors: {
      const Rational share(1, static_cast<int>(options.size()));
      for (int door : options) out.emplace_back(door, share);
      break;
    }
    case Reveal::uniform_treasures: {
      int total = 0;
      for (int door : options) total += remaining[door];
      for (int door : options) out.emplace_back(door, Rational(remaining[door], total));
      break;
    }
  }
  return out;
}

GameState apply_guess(const GameState& state, GuessSet guess, int revealed) {
  if (state.status != Status::ongoing)
    throw InvalidArgument("game is already over");
  if (guess.empty()) throw InvalidArgument("empty guess");
  const auto options = reveal_options(state, guess);
  GameState next = state;
  ++next.round;
  if (options.empty()) {
    if (revealed != kLoss)
      throw InvalidArgument("guess " + guess.str() + " reveals nothing");
    next.status = Status::lost;
    return next;
  }
  if (std::find(options.begin(), options.end(), revealed) == options.end())
    throw InvalidArgument("door " + std::to_string(revealed) +
                          " is not a legal reveal for guess " + guess.str());
  if (next.found[revealed] == 0) next.discovery_order.push_back(revealed);
  --next.remaining[revealed];
  ++next.found[revealed];
  if (next.remaining_total() == 0) next.status = Status::won;
  return next;
}

DiagramView history_to_diagram(const History& history) {
  const auto order = history.discovery_order();
  if (order.empty()) throw InvalidArgument("history has no reveal");
  int max_door = 0;
  for (const auto& e : history.events)
    if (e.revealed != kLoss) max_door = std::max(max_door, e.revealed);
  const auto counts = history.found_counts(max_door + 1);
  std::vector<int> parts;
  parts.reserve(order.size());
  for (int door : order) parts.push_back(counts[door]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1]) throw NonMonotone(parts);
  return DiagramView{Partition(std::move(parts)), order.back()};
}

GuessSet permute(GuessSet guess, const std::vector<int>& perm) {
  std::uint64_t mask = 0;
  for (int door : guess.doors()) mask |= std::uint64_t{1} << perm[door];
  return GuessSet(mask);
}

History permute(const History& history, const std::vector<int>& perm) {
  History out;
  for (const auto& e : history.events)
    out.events.push_back(
        {permute(e.guess, perm), e.revealed == kLoss ? kLoss : perm[e.revealed]});
  return out;
}

Allocation permute(const Allocation& allocation, const std::vector<int>& perm) {
  Allocation out{std::vector<int>(allocation.counts.size(), 0)};
  for (std::size_t i = 0; i < allocation.counts.size(); ++i)
    out.counts[perm[i]] = allocation.counts[i];
  return out;
}

namespace {

std::string sorted_signatures(std::vector<std::string>& signatures) {
  std::sort(signatures.begin(), signatures.end());
  std::string key;
  for (const auto& s : signatures) {
    key += s;
    key += '|';
  }
  return key;
}

void append_round_codes(const History& history, int n,
                        std::vector<std::string>& signatures) {
  for (const auto& e : history.events) {
    const std::uint64_t mask = e.guess.mask();
    for (int door = 0; door < n; ++door) {
      char code = '0';
      if (door == e.revealed)
        code = '2';
      else if ((mask >> door) & 1U)
        code = '1';
      signatures[door] += code;
    }
  }
}

}  // namespace

std::string canonical_key(const History& history, int n,
                          const std::vector<int>* tags) {
  std::vector<std::string> signatures(n);
  if (tags)
    for (int door = 0; door < n; ++door)
      signatures[door] = std::to_string((*tags)[door]) + ':';
  append_round_codes(history, n, signatures);
  return sorted_signatures(signatures);
}

std::string canonical_sequence_key(const History& history, GuessSet guess, int n) {
  std::vector<std::string> signatures(n);
  append_round_codes(history, n, signatures);
  for (int door = 0; door < n; ++door) signatures[door] += guess.contains(door) ? 'g' : '-';
  return sorted_signatures(signatures);
}

}  // namespace treasure
