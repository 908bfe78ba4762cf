#pragma once

#include <compare>
#include <string>
#include <vector>

#include "treasure/rational.hpp"

namespace treasure {

enum class Occupancy { single, multi };

/// Nonincreasing sequence of positive integers (a Young diagram).
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless parts are positive and nonincreasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int num_parts() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int last() const { return parts_.back(); }

  /// "(2,1)" style.
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Per-door treasure counts.
struct Allocation {
  std::vector<int> counts;

  int doors() const { return static_cast<int>(counts.size()); }
  int total() const;
  /// Sorted positive counts.
  Partition shape() const;
  std::string str() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

BigInt binomial(int n, int r);

/// C(n,d) for single occupancy, C(n+d-1,d) for multi occupancy.
BigInt count_allocations(int n, int d, Occupancy variant);

/// Every allocation of d treasures over n doors, lexicographically
/// increasing on the count vectors.
std::vector<Allocation> enumerate_allocations(int n, int d, Occupancy variant);

/// Partitions of d into at most max_parts parts, in reverse lexicographic
/// order: (3), (2,1), (1,1,1).
std::vector<Partition> enumerate_partitions(int d, int max_parts);

/// Number of allocations over n doors whose sorted positive counts equal
/// pi, i.e. n! / (prod_c m_c! * (n - j)!).
BigInt partition_weight(const Partition& pi, int n);

/// Partition number p(d).
BigInt partition_count(int d);

}  // namespace treasure
