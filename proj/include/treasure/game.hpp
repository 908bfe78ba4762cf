#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treasure/combinatorics.hpp"
#include "treasure/rational.hpp"

namespace treasure {

/// Who decides which treasure is shown when a guess covers several
/// treasure doors.
enum class Reveal { adversarial, uniform_doors, uniform_treasures, lowest_index };

std::string to_string(Occupancy occupancy);
std::string to_string(Reveal reveal);
Occupancy parse_occupancy(const std::string& text);
Reveal parse_reveal(const std::string& text);

inline constexpr int kMaxDoors = 64;

struct GameConfig {
  int n = 1;
  int d = 1;
  int k = 1;
  Occupancy occupancy = Occupancy::multi;
  Reveal reveal = Reveal::lowest_index;

  /// Throws InvalidArgument on n<1, d<1, k outside [1,n], single with d>n,
  /// or more than kMaxDoors doors.
  void validate() const;
  std::string str() const;
};

/// A set of distinct doors, stored as a bitmask.
class GuessSet {
 public:
  constexpr GuessSet() = default;
  constexpr explicit GuessSet(std::uint64_t mask) : mask_(mask) {}
  static GuessSet of(std::initializer_list<int> doors);
  static GuessSet of(const std::vector<int>& doors);

  std::uint64_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(int door) const { return (mask_ >> door) & 1U; }
  bool empty() const { return mask_ == 0; }
  std::vector<int> doors() const;
  GuessSet with(int door) const { return GuessSet(mask_ | (std::uint64_t{1} << door)); }
  std::string str() const;

  /// Legal for the config: 1 <= size <= k and every door < n.
  bool legal(const GameConfig& config) const;

  friend bool operator==(GuessSet, GuessSet) = default;
  friend auto operator<=>(GuessSet, GuessSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Every legal guess of size 1..k over n doors, ordered by mask.
std::vector<GuessSet> all_guesses(int n, int k);

inline constexpr int kLoss = -1;

struct Event {
  GuessSet guess;
  int revealed = kLoss;  // door index, or kLoss

  friend bool operator==(const Event&, const Event&) = default;
};

/// The searcher's information set: her guesses and the door each reveal
/// came from.
struct History {
  std::vector<Event> events;

  int rounds() const { return static_cast<int>(events.size()); }
  /// Union of every guess made so far.
  GuessSet guessed() const;
  /// Treasures found per door.
  std::vector<int> found_counts(int n) const;
  /// Doors in order of their first revealed treasure.
  std::vector<int> discovery_order() const;
  std::string str() const;

  friend bool operator==(const History&, const History&) = default;
};

enum class Status { ongoing, won, lost };

struct GameState {
  std::vector<int> remaining;
  std::vector<int> found;
  std::vector<int> discovery_order;
  int round = 0;
  Status status = Status::ongoing;

  int remaining_total() const;
  int found_total() const;
};

/// Rejects allocations with the wrong door count, wrong total, or (single
/// occupancy) a door holding more than one treasure.
void validate_allocation(const GameConfig& config, const Allocation& allocation);

GameState initial_state(const GameConfig& config, const Allocation& allocation);

/// Guessed doors that still hide a treasure. Empty means the guess loses.
std::vector<int> reveal_options(const GameState& state, GuessSet guess);
std::vector<int> reveal_options(const std::vector<int>& remaining, GuessSet guess);

/// Chance distribution over reveal options for a non-adversarial rule.
/// `options` must be non-empty.
std::vector<std::pair<int, Rational>> reveal_distribution(
    Reveal rule, const std::vector<int>& remaining,
    const std::vector<int>& options);

/// Applies a guess. `revealed` must be one of reveal_options, or kLoss when
/// there are none.
GameState apply_guess(const GameState& state, GuessSet guess, int revealed);

struct DiagramView {
  Partition diagram;
  int current_door = -1;
};

/// Found counts in discovery order as a Young diagram, plus the door of the
/// last newly discovered treasure door. Throws NonMonotone for histories no
/// Young-diagram strategy produces.
DiagramView history_to_diagram(const History& history);

/// Door-relabeling helpers. A permutation maps door i to perm[i].
GuessSet permute(GuessSet guess, const std::vector<int>& perm);
History permute(const History& history, const std::vector<int>& perm);
Allocation permute(const Allocation& allocation, const std::vector<int>& perm);

/// Key identifying a history (optionally paired with per-door tags such as
/// an allocation) up to relabeling of doors. Each door is summarized by its
/// tag and its per-round membership/reveal codes; sorting those signatures
/// gives a labeling-independent form.
std::string canonical_key(const History& history, int n,
                          const std::vector<int>* tags = nullptr);

/// Canonical key of the searcher sequence "history, then guess" (the guess
/// recorded with no reveal yet).
std::string canonical_sequence_key(const History& history, GuessSet guess, int n);

}  // namespace treasure
